"""The theorem suites. Each takes a Context and returns an Outcome."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..differential import (
    derivation_algebra,
    derivations,
    diff_ops_by_filtration,
    dplus_constants,
    separable_chain,
)
from ..expr import evaluate, parse_expression
from ..galois import (
    automorphism_group,
    classify,
    correspondence_roundtrip,
    dimension_laws,
    galois_subgroup_laws,
    is_normal,
    least_conormal,
    normal_subfield_correspondence,
    pi_correspondence,
    skew_group_algebra,
    skew_laws,
    split_tensor,
    subgroup_lattice,
    tensor_extension_checks,
    basic_witnesses,
    fixed_field,
    witnesses,
)
from ..matalg import centralizer, double_centralizer_roundtrip, endomorphisms_over, field_image, generate_algebra, is_simple
from ..roots import LiftConfig
from ..tower import (
    base_subfield,
    compositum,
    intersection,
    pe_kernel,
    present_subfield,
    subfield_generated,
    whole_field,
)


class Skip(Exception):
    """The suite does not apply to this tower."""


@dataclass
class Outcome:
    ok: bool
    dims: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)
    group_sensitive: bool = False
    mismatch: dict | None = None
    heuristic: bool = False  # some certificate beyond the group is missing


class Context:
    """Lazily computed, shared state for one scenario run."""

    def __init__(self, scenario, tower, ambient=None):
        self.scenario = scenario
        self.tower = tower
        self.ambient = ambient
        b = scenario.budget
        self.cfg = LiftConfig(
            seed=scenario.seed,
            **{k: b[k] for k in ("max_candidates", "certify_budget", "scan") if k in b},
        )
        self._w = None
        self._basic = None

    @property
    def basic(self):
        """(L^sep, D, L_dif), computed without the automorphism group."""
        if self._basic is None:
            self._basic = basic_witnesses(self.tower)
        return self._basic

    @property
    def w(self):
        if self._w is None:
            self._w = witnesses(self.tower, self.cfg, self.basic)
        return self._w

    @property
    def heuristic(self) -> bool:
        return not self.w.group.complete

    @property
    def normal(self) -> bool:
        return self.w.lg == self.w.lpi

    @property
    def purely_inseparable(self) -> bool:
        return self.w.lpi.dim == self.tower.n

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.scenario.seed}:{salt}")

    def sample_subfields(self) -> list:
        """Deduplicated subfields: the witnesses, one per generator, one per
        p-th power of a generator, and the fixed fields of subgroups."""
        t, w = self.tower, self.w
        p = t.characteristic
        cands = [base_subfield(t), whole_field(t), w.lpi, w.lsep, w.lg, w.lg_dif]
        for g in t.gens():
            cands.append(subfield_generated(t, [g]))
            cands.append(subfield_generated(t, [g ** p]))
        if w.group.order <= 24:
            cands.extend(fixed_field(w.group, H) for H, _ in subgroup_lattice(w.group))
        out = []
        for M in cands:
            if all(M != N for N in out):
                out.append(M)
        return sorted(out, key=lambda M: (M.dim, str(_basis_matrix(M))))


def _basis_matrix(M) -> list:
    return [[str(c) for c in b.coords] for b in M.basis()]


def _auto_images(ctx, images: dict):
    t = ctx.tower
    K = t.base
    env = {v: t.coerce(K.gen(v)) for v in getattr(K, "vars", [])}
    for name in t.names:
        env[name] = t.gen(name)
    out = []
    for name in t.names:
        expr = images.get(name, name)
        out.append(evaluate(parse_expression(expr), env, t.from_int))
    return tuple(out)


def suite_classify(ctx: Context) -> Outcome:
    t, w = ctx.tower, ctx.w
    rec = classify(t, ctx.cfg, w)
    dims = dict(rec.dims)
    dims.update({"n": t.n, "L_sep": rec.lsep.dim, "L_pi": rec.lpi.dim, "L_dif": rec.ldif.dim, "L_G": rec.lg.dim, "L_G_dif": rec.lg_dif.dim})
    detail = {
        "criteria": rec.criteria,
        "conclusions": rec.conclusions,
        "subfields": {
            "L_sep": _basis_matrix(rec.lsep),
            "L_pi": _basis_matrix(rec.lpi),
            "L_G": _basis_matrix(rec.lg),
            "L_G_dif": _basis_matrix(rec.lg_dif),
        },
    }
    ok = True
    mismatch = None
    index = {g.images: i for i, g in enumerate(w.group.elements)}
    declared = [_auto_images(ctx, a) for a in ctx.scenario.autos]
    found = [img in index for img in declared]
    detail["declared_automorphisms_found"] = found
    if not all(found):
        ok = False
        mismatch = {"declared_automorphism": found.index(False)}
    got = {"n": t.n, "group_order": rec.group_order, "dim_D": rec.dims["D"], "dim_LxG": rec.dims["LxG"], "dim_DxG": rec.dims["DxG"]}
    got.update({k: v for k, v in rec.flags().items()})
    for key, want in ctx.scenario.expect.items():
        if key in got and got[key] != want:
            ok = False
            mismatch = {"key": key, "expected": want, "got": got[key]}
            break
    return Outcome(ok, dims, rec.flags(), detail, group_sensitive=True, mismatch=mismatch)


def suite_triple_agreement(ctx: Context) -> Outcome:
    _, D, ldif = ctx.basic
    chain = separable_chain(ctx.tower)
    lsep = chain[-1]
    lplus = dplus_constants(D)
    ok = lsep == ldif == lplus
    dims = {"L_sep": lsep.dim, "L_dif": ldif.dim, "L_D_plus": lplus.dim, "chain": [M.dim for M in chain]}
    mm = None if ok else {"L_sep": lsep.dim, "L_dif": ldif.dim, "L_D_plus": lplus.dim}
    return Outcome(ok, dims, mismatch=mm)


def suite_filtration_oracle(ctx: Context) -> Outcome:
    t = ctx.tower
    lsep, D, ldif = ctx.basic
    filt = diff_ops_by_filtration(t)
    same = filt.algebra == D.algebra
    d = ldif.dim
    law = D.dim == (t.n // d) ** 2 * d
    pi_full = lsep.dim > 1 or D.dim == t.n * t.n
    ok = same and law and pi_full
    dims = {"D": D.dim, "D_filtration": filt.dim, "profile": filt.profile, "L_dif": d}
    mm = None if ok else {"D": D.dim, "D_filtration": filt.dim, "law": law}
    return Outcome(ok, dims, {"dimension_law": law, "equal": same}, mismatch=mm)


def _random_element(t, rng, terms=2):
    """A sparse random element: dense ones make multivariate entries explode."""
    K = t.base
    x = t.zero
    for b in rng.sample(t.basis(), min(terms, t.n)):
        x = x + b * K.from_int(rng.randrange(1, t.characteristic))
    return x


def suite_dct(ctx: Context) -> Outcome:
    """Double centralizer round trips on random algebras L<y> with y drawn
    from C_E(M) for a random sparse subfield M."""
    t = ctx.tower
    K = t.base
    rng = ctx.rng("dct")
    samples = ctx.scenario.budget.get("dct", 20)
    L_gens = [t.regular_rep(g) for g in t.gens()]
    cache = {}
    results = []
    for _ in range(samples):
        x = _random_element(t, rng)
        M = subfield_generated(t, [x]) if x else base_subfield(t)
        if M.space not in cache:
            cache[M.space] = centralizer(t, field_image(t, M).generators())
        CM = cache[M.space]
        # a single basis element: sums of several blow up multivariate entries
        y = rng.choice(CM.basis)
        B = generate_algebra(t, L_gens + [y])
        C, CC, ok = double_centralizer_roundtrip(t, B)
        results.append((B.dim, C.dim, ok and is_simple(B) and B <= CM))
    ok = all(r[2] for r in results)
    dims = {"samples": len(results), "pairs": [list(p) for p in sorted({(b, c) for b, c, _ in results})]}
    mm = None if ok else {"failed_pair": next(list(r[:2]) for r in results if not r[2])}
    return Outcome(ok, dims, mismatch=mm)


def suite_skew(ctx: Context) -> Outcome:
    t, w = ctx.tower, ctx.w
    n = t.n
    LxG = skew_group_algebra(field_image(t), w.group)
    DxG = skew_group_algebra(w.diffops.algebra, w.group)
    flags = {"LxG_direct": LxG.is_direct, "DxG_direct": DxG.is_direct}
    flags.update(skew_laws(w))
    flags.update({f"law_{k}": v for k, v in dimension_laws(w).items()})
    # L * G is E(L/L^G) on every tower
    flags["LxG_is_E_over_fixed"] = LxG.algebra == endomorphisms_over(t, w.lg)
    if w.group.order <= 24:
        flags.update({f"subgroups_{k}": v for k, v in galois_subgroup_laws(w).items()})
    if ctx.normal:
        flags["DxG_is_E"] = DxG.dim == n * n
    ok = all(flags.values())
    dims = {"LxG": LxG.dim, "D": w.diffops.dim, "DxG": DxG.dim, "E": n * n, "L_G_dif": w.lg_dif.dim}
    mm = None if ok else {"failed": sorted(k for k, v in flags.items() if not v)}
    return Outcome(ok, dims, flags, group_sensitive=True, mismatch=mm)


def suite_correspondence(ctx: Context) -> Outcome:
    if not ctx.normal:
        raise Skip("the subalgebra correspondence needs a normal extension")
    t, w = ctx.tower, ctx.w
    subs = ctx.sample_subfields()
    reports = [correspondence_roundtrip(t, M, w) for M in subs]
    algs = [centralizer(t, field_image(t, M).generators()) for M in subs]
    injective = len({A.space for A in algs}) == len(algs)
    reversing = all(
        algs[j] <= algs[i] for i, M in enumerate(subs) for j, N in enumerate(subs) if M <= N
    )
    ok = all(r["ok"] for r in reports) and injective and reversing
    dims = {"subfields": [M.dim for M in subs], "centralizers": [r["dim_A"] for r in reports]}
    flags = {"injective": injective, "order_reversing": reversing}
    mm = None if ok else {"failed_subfield_dims": [M.dim for M, r in zip(subs, reports) if not r["ok"]]}
    return Outcome(ok, dims, flags, group_sensitive=True, mismatch=mm)


def _is_normal_subfield(t, M) -> bool:
    if M.dim == 1:
        return True
    return is_normal(present_subfield(t, M).tower)


def suite_normal_correspondence(ctx: Context) -> Outcome:
    if not ctx.normal:
        raise Skip("the normal-subfield correspondence needs a normal extension")
    t, w = ctx.tower, ctx.w
    subs = [M for M in ctx.sample_subfields() if _is_normal_subfield(t, M)]
    reports = [normal_subfield_correspondence(t, M, w) for M in subs]
    ok = all(r["ok"] for r in reports)
    dims = {
        "subfields": [M.dim for M in subs],
        "splits": [[r["pi_part_dim"], r["gal_part_dim"]] for r in reports],
        "centralizers": [r["dim_A"] for r in reports],
    }
    mm = None if ok else {"failed_subfield_dims": [M.dim for M, r in zip(subs, reports) if not r["ok"]]}
    return Outcome(ok, dims, group_sensitive=True, mismatch=mm)


def suite_pi_correspondence(ctx: Context) -> Outcome:
    if not ctx.purely_inseparable:
        raise Skip("the purely inseparable correspondence needs L^pi = L")
    t = ctx.tower
    subs = ctx.sample_subfields()
    rng = ctx.rng("pi")
    for _ in range(4):
        x = _random_element(t, rng)
        M = subfield_generated(t, [x]) if x else base_subfield(t)
        if all(M != N for N in subs):
            subs.append(M)
    reports = [pi_correspondence(t, M, ctx.w.lpi) for M in subs]
    ok = all(r["ok"] for r in reports)
    dims = {"subfields": [M.dim for M in subs], "centralizers": [r["dim"] for r in reports]}
    mm = None if ok else {"pairs": [[r["dim"], r["expected_dim"]] for r in reports if not r["ok"]]}
    return Outcome(ok, dims, mismatch=mm)


def suite_conormal(ctx: Context) -> Outcome:
    N, checks = least_conormal(ctx.tower, ctx.w)
    ok = all(checks.values())
    want = ctx.scenario.expect.get("conormal_dim")
    if want is not None and want != N.dim:
        ok = False
    mm = None if ok else {"failed": sorted(k for k, v in checks.items() if not v), "dim": N.dim}
    return Outcome(ok, {"conormal": N.dim, "n": ctx.tower.n}, checks, group_sensitive=True, mismatch=mm)


def suite_tensor(ctx: Context) -> Outcome:
    t = ctx.tower
    parts = split_tensor(t)
    if parts is None:
        raise Skip("the tower is not a concatenation of two towers over K")
    t1, t2 = parts
    for s in (t1, t2):
        if not is_normal(s, automorphism_group(s, ctx.cfg)):
            raise Skip("tensor laws need normal factors")
    r = tensor_extension_checks(t1, t2, ctx.cfg)
    same = r.pop("tower") == t
    ok = r["ok"] and same
    dims = {"group_orders": r["group_orders"], "D": r["dims_D"], "DxG": r["dims_DxG"], "factors": [t1.n, t2.n]}
    flags = {"pi_factors": r["pi_factors"], "gal_factors": r["gal_factors"], "field_certified": r["field_certified"]}
    mm = None if ok else {"group_orders": r["group_orders"], "D": r["dims_D"], "DxG": r["dims_DxG"]}
    return Outcome(ok, dims, flags, group_sensitive=True, mismatch=mm, heuristic=not r["field_certified"])


def _restriction_count(t, M, N, cfg) -> int:
    """Number of distinct restrictions to N of G(MN/M)."""
    MN = compositum(M, N)
    pres = present_subfield(t, MN)
    G = automorphism_group(pres.tower, cfg)
    m_imgs = [pres.to_tower(b) for b in M.basis()]
    n_imgs = [pres.to_tower(b) for b in N.basis()]
    seen = set()
    for g in G.elements:
        if all(g(x) == x for x in m_imgs):
            seen.add(tuple(g(y) for y in n_imgs))
    return len(seen)


def suite_disjoint(ctx: Context) -> Outcome:
    t, w = ctx.tower, ctx.w
    K = base_subfield(t)
    subs = ctx.sample_subfields()
    galois = []
    for N in subs:
        if 1 < N.dim and N.dim == automorphism_group(present_subfield(t, N).tower, ctx.cfg).order:
            galois.append(N)
    rows = []
    for N in galois[:3]:
        for M in subs:
            if M == N or M.dim in (1, t.n):
                continue
            a = compositum(M, N).dim == M.dim * N.dim
            b = intersection(M, N) == K
            c = _restriction_count(t, M, N, ctx.cfg) == N.dim
            rows.append((M.dim, N.dim, a, b, c))
            if len(rows) >= 6:
                break
    agree = all(r[2] == r[3] == r[4] for r in rows)
    pi_sep = compositum(w.lpi, w.lsep).dim == w.lpi.dim * w.lsep.dim
    ok = agree and pi_sep
    dims = {"pairs": [[r[0], r[1]] for r in rows], "disjoint": [r[2] for r in rows]}
    mm = None if ok else {"rows": [list(r) for r in rows if not r[2] == r[3] == r[4]], "pi_sep": pi_sep}
    return Outcome(ok, dims, {"pi_sep_disjoint": pi_sep, "equivalences": agree}, group_sensitive=True, mismatch=mm)


def suite_delta_eq(ctx: Context) -> Outcome:
    t, w = ctx.tower, ctx.w
    p = t.characteristic
    der = derivations(t)
    delta = derivation_algebra(t, der)
    D = w.diffops.algebra
    s1 = delta == D
    s2 = all(w.lsep.contains(b ** p) for b in t.basis())
    s3 = pe_kernel(t, 1, w.lsep).dim == t.n
    inside = delta <= D
    ok = s1 == s2 == s3 and inside
    want = ctx.scenario.expect.get("dim_Delta")
    if want is not None and want != delta.dim:
        ok = False
    dims = {"Delta": delta.dim, "D": D.dim, "Der_L_dim": der.l_dim}
    flags = {"Delta_is_D": s1, "p_powers_in_sep": s2, "exponent_one": s3}
    mm = None if ok else {"Delta": delta.dim, "D": D.dim}
    return Outcome(ok, dims, flags, mismatch=mm)


SUITE_FUNCS = {
    "classify": suite_classify,
    "triple_agreement": suite_triple_agreement,
    "filtration_oracle": suite_filtration_oracle,
    "dct": suite_dct,
    "skew": suite_skew,
    "correspondence": suite_correspondence,
    "normal_correspondence": suite_normal_correspondence,
    "pi_correspondence": suite_pi_correspondence,
    "conormal": suite_conormal,
    "tensor": suite_tensor,
    "disjoint": suite_disjoint,
    "delta_eq": suite_delta_eq,
}
