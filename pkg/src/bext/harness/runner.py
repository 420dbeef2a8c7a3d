"""Running suites on scenarios, random towers, and report output."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from ..basefield import RationalFunctionField, UniPoly
from ..galois import InconsistentTheorems
from ..roots import LiftConfig, NoGoodSpecialization, certify_rootless, pth_root_in
from ..tower import ExtensionTower, ReducibleModulus
from .scenario import SUITES, Scenario
from .suites import SUITE_FUNCS, Context, Skip


class ScenarioError(RuntimeError):
    """A library error raised while running a scenario, with its context."""


@dataclass
class CheckResult:
    name: str
    status: str  # pass, fail, heuristic-pass, skipped
    witnesses: dict = field(default_factory=dict)
    seed: int = 0
    millis: float | None = None
    reason: str | None = None

    def as_dict(self, timing: bool) -> dict:
        out = {"name": self.name, "status": self.status, "witnesses": self.witnesses, "seed": self.seed}
        out["millis"] = round(self.millis, 1) if timing and self.millis is not None else None
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass
class Report:
    scenario: str
    checks: list = field(default_factory=list)
    degrees: list = field(default_factory=list)
    summary: dict | None = None

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks) or bool(self.summary and self.summary.get("fail"))

    def as_dict(self, timing: bool = False) -> dict:
        out = {"scenario": self.scenario, "checks": [c.as_dict(timing) for c in self.checks]}
        if self.summary is not None:
            out["summary"] = self.summary
        return out


def _witnesses(out, ctx) -> dict:
    w = {"dims": out.dims, "group_order": None, "flags": out.flags}
    if ctx._w is not None:
        w["group_order"] = ctx.w.group.order
    if out.detail:
        w["detail"] = out.detail
    if out.mismatch is not None:
        w["mismatch"] = out.mismatch
    return w


def run_check(ctx: Context, name: str) -> CheckResult:
    start = time.perf_counter()
    seed = ctx.scenario.seed
    try:
        out = SUITE_FUNCS[name](ctx)
    except Skip as why:
        return CheckResult(name, "skipped", {}, seed, (time.perf_counter() - start) * 1000, str(why))
    except InconsistentTheorems as exc:
        return CheckResult(name, "fail", {"mismatch": {"inconsistency": str(exc)}}, seed, (time.perf_counter() - start) * 1000, str(exc))
    except Exception as exc:
        raise ScenarioError(f"{ctx.scenario.name}: {name}: {type(exc).__name__}: {exc}") from exc
    if not out.ok:
        status = "fail"
    elif out.heuristic or (out.group_sensitive and ctx.heuristic):
        status = "heuristic-pass"
    else:
        status = "pass"
    return CheckResult(name, status, _witnesses(out, ctx), seed, (time.perf_counter() - start) * 1000)


def run_checks(s: Scenario, suites=None) -> Report:
    """Run the requested suites (default: those the scenario lists)."""
    names = list(suites) if suites else list(s.checks)
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
    try:
        tower, amb = s.build()
    except Exception as exc:
        raise ScenarioError(f"{s.name}: building the tower: {type(exc).__name__}: {exc}") from exc
    ctx = Context(s, tower, amb)
    report = Report(s.name, degrees=list(tower.degrees))
    for n in names:
        report.checks.append(run_check(ctx, n))
    return report


def describe(s: Scenario) -> dict:
    from ..galois import witnesses

    tower, _ = s.build()
    w = witnesses(tower, LiftConfig(seed=s.seed))
    return {
        "scenario": s.name,
        "tower": repr(tower),
        "degrees": list(tower.degrees),
        "n": tower.n,
        "dims": {
            "L_sep": w.lsep.dim,
            "L_pi": w.lpi.dim,
            "L_dif": w.ldif.dim,
            "L_G": w.lg.dim,
            "L_G_dif": w.lg_dif.dim,
            "D": w.diffops.dim,
        },
        "group_order": w.group.order,
    }


# ---------------------------------------------------------------------------
# random towers

FUZZ_SUITES = ("triple_agreement", "filtration_oracle", "dct", "skew", "classify")


def _random_constant(K, rng, deg):
    """A monic polynomial in t of the given degree with random lower terms."""
    p = K.characteristic
    t = K.gen("t")
    c = t ** deg
    for k in range(deg):
        c = c + K.from_int(rng.randrange(p)) * t ** k
    return c


def random_tower(rng: random.Random, p: int, max_degree: int = 16, max_steps: int = 3):
    """A random tower from the templated families, or None when a step turned
    out reducible. Returns (tower, family names)."""
    K = RationalFunctionField(p, ["t"])
    T = ExtensionTower(K)
    fams = []
    names = ["a", "b", "c"]
    for i in range(rng.randint(1, max_steps)):
        fam = rng.choice(["pi", "as", "sep"])
        deg = p if fam != "sep" else (3 if p == 2 else 2)
        if T.n * deg > max_degree:
            break
        F = T if T.name is not None else K
        # degree 1 in t keeps every family irreducible over K itself
        c = _random_constant(K, rng, 1 if T.name is None else rng.choice([1, 2]))
        if T.name is not None and rng.random() < 0.5:
            c = F.coerce(c) * rng.choice(T.gens())
        else:
            c = F.coerce(c) if F is T else c
        x = UniPoly.x(F)
        if fam == "pi":
            f = x ** p - c
        elif fam == "as":
            f = x ** p - x - c
        elif p == 2:
            f = x ** 3 + x + c
        else:
            f = x ** 2 - c
        if not _step_irreducible(T, f, fam):
            return None, fams
        T = T.extend(names[i], f)
        fams.append(fam)
    return T, fams


def _step_irreducible(T, f, fam) -> bool:
    """Degree <= 3 steps are irreducible iff they have no root in T. Steps
    that cannot be certified count as reducible and the tower is dropped."""
    if T.name is None:
        return True
    try:
        if fam == "pi":
            return pth_root_in(T, -f.coeffs[0], 1) is None
        return certify_rootless(f, T)
    except (ReducibleModulus, NoGoodSpecialization, ArithmeticError):
        return False


def fuzz_towers(seed: int, count: int, max_degree: int = 16, suites=FUZZ_SUITES, dct_samples: int = 3) -> Report:
    rng = random.Random(seed)
    report = Report(f"fuzz(seed={seed}, count={count})")
    counts = {"towers": 0, "discarded": 0, "pass": 0, "fail": 0, "heuristic-pass": 0, "skipped": 0}
    attempts = 0
    while counts["towers"] < count and attempts < 20 * count + 20:
        attempts += 1
        p = rng.choice([2, 3])
        T, fams = random_tower(rng, p, max_degree)
        if T is None or T.name is None:
            counts["discarded"] += 1
            continue
        s = Scenario(name=f"fuzz{counts['towers'] + 1}:{T!r}", budget={"seed": seed, "dct": dct_samples})
        ctx = Context(s, T)
        done = []
        for name in suites:
            try:
                res = run_check(ctx, name)
            except ScenarioError as exc:
                if isinstance(exc.__cause__, (ReducibleModulus, NoGoodSpecialization)):
                    done = None
                    break
                raise
            res.name = f"{s.name}/{name}"
            done.append(res)
        # a tower counts only when every suite ran on it
        if done is None:
            counts["discarded"] += 1
            continue
        counts["towers"] += 1
        for res in done:
            counts[res.status] += 1
        report.checks.extend(done)
    report.summary = counts
    return report


# ---------------------------------------------------------------------------
# output

def emit_report(r: Report, fmt: str = "json", timing: bool = False) -> bytes:
    if fmt == "json":
        return (json.dumps(r.as_dict(timing), indent=2) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"scenario {r.scenario}"]
    width = max([len(c.name) for c in r.checks] + [8])
    for c in r.checks:
        extra = c.reason or _short(c.witnesses)
        ms = f" {c.millis:.0f}ms" if timing and c.millis is not None else ""
        lines.append(f"  {c.name:<{width}}  {c.status:<14}{ms}  {extra}")
    if r.summary is not None:
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in r.summary.items()))
    return ("\n".join(lines) + "\n").encode()


def _short(w: dict) -> str:
    dims = w.get("dims", {})
    parts = [f"{k}={v}" for k, v in dims.items() if isinstance(v, int)]
    if w.get("group_order") is not None:
        parts.append(f"|G|={w['group_order']}")
    if "mismatch" in w:
        parts.append(f"mismatch={w['mismatch']}")
    return " ".join(parts)
