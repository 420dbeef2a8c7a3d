"""The thirteen acceptance criteria, one test each.

Every test records a one-line verdict; conftest prints them after the run.
`python3 tests/test_acceptance.py` runs the same checks without pytest.
"""

import functools
import subprocess
import sys
import time

from bext.differential import derivation_algebra, derivations, diff_ops
from bext.galois import (
    correspondence_roundtrip,
    fixed_field,
    least_conormal,
    pi_correspondence,
    skew_group_algebra,
    subgroup_lattice,
    subgroup_of_fixing,
    tensor_extension_checks,
)
from bext.harness.catalog import builtin, builtin_names
from bext.harness.runner import fuzz_towers, run_checks
from bext.matalg import endomorphisms_over, field_image, full_algebra
from bext.tower import base_subfield, subfield_generated, whole_field

from conftest import catalog_tower, catalog_witnesses

RESULTS = {}
FUZZ_SEED = 1
FUZZ_COUNT = 50


def verdict(n, ok, detail):
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def _millis(checks, suite):
    return sum(c.millis for c in checks if c.name.endswith(suite))


@functools.lru_cache(maxsize=None)
def catalog_run(suites):
    return {name: run_checks(builtin(name), list(suites)) for name in builtin_names()}


@functools.lru_cache(maxsize=None)
def fuzz_run():
    return fuzz_towers(FUZZ_SEED, FUZZ_COUNT, suites=("triple_agreement", "filtration_oracle", "classify"))


def _statuses(checks, suite):
    return [c.status for c in checks if c.name.endswith(suite)]


def test_criterion_01_triple_agreement():
    cat = catalog_run(("triple_agreement", "filtration_oracle"))
    fz = fuzz_run()
    checks = [c for r in cat.values() for c in r.checks] + fz.checks
    st = _statuses(checks, "triple_agreement")
    secs = _millis(checks, "triple_agreement") / 1000
    ok = fz.summary["towers"] >= 50 and all(s == "pass" for s in st) and secs < 60
    verdict(1, ok, f"{len(st)} towers ({fz.summary['towers']} fuzzed) agree, {secs:.1f}s")


def test_criterion_02_filtration_oracle():
    cat = catalog_run(("triple_agreement", "filtration_oracle"))
    fz = fuzz_run()
    checks = [c for r in cat.values() for c in r.checks] + fz.checks
    st = _statuses(checks, "filtration_oracle")
    equal = all(c.witnesses["flags"]["equal"] for c in checks if c.name.endswith("filtration_oracle"))
    secs = _millis(checks, "filtration_oracle") / 1000
    ok = all(s == "pass" for s in st) and equal and secs < 120
    verdict(2, ok, f"{len(st)} towers bit-exact, {secs:.1f}s")


def test_criterion_03_purely_inseparable_is_everything():
    got = {}
    for name, n in (("ex1", 2), ("ex5", 8), ("cube_root", 3)):
        T = catalog_tower(name)
        D = diff_ops(T)
        got[name] = (T.n, D.dim, D.algebra == full_algebra(T))
    ok = got == {"ex1": (2, 4, True), "ex5": (8, 64, True), "cube_root": (3, 9, True)}
    verdict(3, ok, f"(n, dim D, D=E): {got}")


def test_criterion_04_dimension_law():
    w = catalog_witnesses("ex3")
    ld = w.ldif.dim
    ex3 = w.diffops.dim == 8 == (4 // ld) ** 2 * ld and ld == 2
    fz = fuzz_run()
    laws = [c.witnesses["flags"]["dimension_law"] for c in fz.checks if c.name.endswith("filtration_oracle")]
    ok = ex3 and len(laws) >= 50 and all(laws)
    verdict(4, ok, f"ex3 dim D = {w.diffops.dim} = [L:L_dif]^2 [L_dif:K] = 4*{ld}; law holds on {sum(laws)}/{len(laws)} fuzzed")


def test_criterion_05_skew_identities():
    out = {}
    T2, w2 = catalog_tower("ex2"), catalog_witnesses("ex2")
    LxG = skew_group_algebra(field_image(T2), w2.group)
    out["ex2 LxG=E"] = LxG.dim == 4 and LxG.algebra == full_algebra(T2)
    T3, w3 = catalog_tower("ex3"), catalog_witnesses("ex3")
    Ku = subfield_generated(T3, [T3.gen("u")])
    LxG3 = skew_group_algebra(field_image(T3), w3.group)
    out["ex3 LxG=E(L/K(u))"] = LxG3.dim == 8 and LxG3.algebra == endomorphisms_over(T3, Ku)
    DxG3 = skew_group_algebra(w3.diffops.algebra, w3.group)
    out["ex3 DxG=E"] = DxG3.dim == 16
    T4, w4 = catalog_tower("ex4"), catalog_witnesses("ex4")
    DxG4 = skew_group_algebra(w4.diffops.algebra, w4.group)
    out["ex4 DxG=L=E(L/L^G_dif)"] = (
        DxG4.dim == 3
        and DxG4.algebra == field_image(T4)
        and w4.lg_dif == whole_field(T4)
        and DxG4.algebra == endomorphisms_over(T4, w4.lg_dif)
    )
    verdict(5, all(out.values()), ", ".join(f"{k}:{v}" for k, v in out.items()))


def test_criterion_06_seven_criteria():
    cat = catalog_run(("classify",))
    fz = fuzz_run()
    checks = [c for r in cat.values() for c in r.checks] + fz.checks
    st = _statuses(checks, "classify")
    agree = all(s in ("pass", "heuristic-pass") for s in st)
    flags = {n: cat[n].checks[0].witnesses["flags"] for n in ("ex3", "ex4")}
    ex3 = flags["ex3"]["is_B"] and not flags["ex3"]["is_G"] and not flags["ex3"]["is_D"]
    ex4 = not (flags["ex4"]["is_B"] or flags["ex4"]["is_G"] or flags["ex4"]["is_D"])
    heur = st.count("heuristic-pass")
    verdict(6, agree and ex3 and ex4, f"{len(st)} towers agree ({heur} with an uncertified group); ex3 B only; ex4 none")


def test_criterion_07_correspondence_round_trips():
    start = time.perf_counter()
    T3, w3 = catalog_tower("ex3"), catalog_witnesses("ex3")
    subs = [
        base_subfield(T3),
        subfield_generated(T3, [T3.gen("u")]),
        subfield_generated(T3, [T3.gen("s")]),
        whole_field(T3),
    ]
    ex3 = all(correspondence_roundtrip(T3, M, w3)["ok"] for M in subs)
    G = catalog_witnesses("ex0").group
    lattice = [H for H, _ in subgroup_lattice(G)]
    fixed = [fixed_field(G, H) for H in lattice]
    back = [subgroup_of_fixing(G, F) for F in fixed]
    reversing = all(
        (fixed[j] <= fixed[i]) == (lattice[i] <= lattice[j]) for i in range(len(lattice)) for j in range(len(lattice))
    )
    ex0 = len(lattice) == 3 and back == lattice and reversing
    secs = time.perf_counter() - start
    verdict(7, ex3 and ex0 and secs < 10, f"ex3 K, K(u), K(s), L recovered; ex0 lattice of {len(lattice)} is order-reversing; {secs:.1f}s")


def test_criterion_08_purely_inseparable_correspondence():
    T = catalog_tower("ex5")
    lpi = catalog_witnesses("ex5").lpi
    z, w2 = T.gen("z"), T.gen("w2")
    subs = [
        subfield_generated(T, [z ** 2]),
        subfield_generated(T, [z]),
        subfield_generated(T, [w2]),
        subfield_generated(T, [z + w2]),
    ]
    reports = [pi_correspondence(T, M, lpi) for M in subs]
    dims_ok = all(r["dim"] == (T.n // M.dim) ** 2 * M.dim for M, r in zip(subs, reports))
    distinct = len({M.space for M in subs}) == len(subs)
    ok = all(r["ok"] for r in reports) and dims_ok and distinct and subs[0].dim == 2
    verdict(8, ok, f"{len(subs)} subfields incl. K(z^2); [L:M]^2[M:K] = {[r['dim'] for r in reports]}")


def test_criterion_09_least_conormal():
    got = {}
    checks_ok = True
    for name in ("ex3", "ex4", "ex2"):
        N, checks = least_conormal(catalog_tower(name), catalog_witnesses(name))
        got[name] = N.dim
        checks_ok = checks_ok and all(checks.values())
    ok = got == {"ex3": 1, "ex4": 3, "ex2": 1} and checks_ok
    verdict(9, ok, f"dims {got} (K, L, K); normal over N with D and |G| unchanged: {checks_ok}")


def test_criterion_10_tensor_laws():
    r = tensor_extension_checks(catalog_tower("ex1"), catalog_tower("ex2"))
    got = (r["dims_D"], r["group_orders"], r["dims_DxG"])
    ok = r["ok"] and r["field_certified"] and got == ([8, 4, 2], [2, 1, 2], [16, 4, 4])
    verdict(10, ok, f"D {r['dims_D']}, |G| {r['group_orders']}, DxG {r['dims_DxG']}")


def test_criterion_11_double_centralizer():
    rows = []
    ok = True
    for name in builtin_names():
        s = builtin(name)
        s.budget["dct"] = max(20, s.budget.get("dct", 20))
        c = run_checks(s, ["dct"]).checks[0]
        samples = c.witnesses.get("dims", {}).get("samples", 0)
        ok = ok and c.status == "pass" and samples >= 20
        rows.append(f"{name}:{samples}")
    verdict(11, ok, "samples " + " ".join(rows))


def test_criterion_12_derivation_algebra():
    out = {}
    for name in ("ex1", "ex5"):
        T = catalog_tower(name)
        D = catalog_witnesses(name).diffops.algebra
        delta = derivation_algebra(T, derivations(T))
        out[name] = (delta.dim, D.dim, delta == D, delta <= D)
    ok = out["ex1"] == (4, 4, True, True) and out["ex5"] == (32, 64, False, True)
    verdict(12, ok, f"(dim Delta, dim D, equal, inside): {out}")


def test_criterion_13_determinism():
    cmd = [sys.executable, "-m", "bext", "verify", "ex3", "--seed", "7", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    verdict(13, ok, f"{len(a.stdout)} bytes, identical={a.stdout == b.stdout}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
