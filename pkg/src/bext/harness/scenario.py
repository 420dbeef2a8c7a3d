"""Line-oriented scenario files.

    # comment
    name ex3
    base p=2 vars=t
    step u: u^2 + t
    step s: s^2 + s + t
    auto s -> s + 1
    check classify correspondence
    budget seed=7 dct=20

Instead of base/step lines a scenario may import its tower from a rational
function field:

    ambient p=2 vars=x,y,z k=x^2,y^2,z^4 l=z,x*z+y
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..basefield import RationalFunctionField, UniPoly, is_prime
from ..expr import ParseError, evaluate, identifiers, parse_expression
from ..tower import ExtensionTower, from_ambient

SUITES = (
    "classify",
    "triple_agreement",
    "filtration_oracle",
    "dct",
    "skew",
    "correspondence",
    "normal_correspondence",
    "pi_correspondence",
    "conormal",
    "tensor",
    "disjoint",
    "delta_eq",
)

BUDGET_KEYS = {"seed", "dct", "max_candidates", "certify_budget", "scan"}

_IDENT = re.compile(r"[a-z][a-z0-9_]*\Z")


class UnknownCheck(ParseError):
    pass


@dataclass
class Step:
    name: str
    poly: str
    line: int
    col: int


@dataclass
class Ambient:
    p: int
    vars: list
    k_gens: list
    l_gens: list


@dataclass
class Scenario:
    name: str = "scenario"
    p: int | None = None
    vars: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    ambient: Ambient | None = None
    autos: list = field(default_factory=list)  # list of {gen: expression}
    checks: list = field(default_factory=list)
    budget: dict = field(default_factory=dict)
    expect: dict = field(default_factory=dict)
    text: str = ""

    @property
    def seed(self) -> int:
        return self.budget.get("seed", 0)

    def build(self):
        """(tower, ambient import or None)."""
        if self.ambient is not None:
            a = self.ambient
            imp = from_ambient(a.p, a.vars, a.k_gens, a.l_gens)
            return imp.tower, imp
        return build_tower(self.p, self.vars, self.steps), None


def build_tower(p: int, vars, steps) -> ExtensionTower:
    K = RationalFunctionField(p, vars)
    T = ExtensionTower(K)
    for st in steps:
        F = T if T.name is not None else K
        env = {v: UniPoly.const(F, F.coerce(K.gen(v)) if F is T else K.gen(v)) for v in vars}
        for g in T.names:
            env[g] = UniPoly.const(F, T.gen(g))
        env[st.name] = UniPoly.x(F)
        node = parse_expression(st.poly, st.line, st.col)
        f = evaluate(node, env, lambda c: UniPoly.const(F, F.from_int(c)), st.line)
        if f.degree < 1:
            raise ParseError(f"step polynomial for {st.name} has degree < 1", st.line, st.col)
        if f.lc() != F.one:
            raise ParseError(f"step polynomial for {st.name} is not monic", st.line, st.col)
        T = T.extend(st.name, f)
    return T


def _keyvals(rest: str, lineno: int, col0: int) -> dict:
    out = {}
    for m in re.finditer(r"(\S+?)=(\S+)", rest):
        out[m.group(1)] = (m.group(2), col0 + m.start(2))
    leftovers = re.sub(r"\S+?=\S+", "", rest).strip()
    if leftovers:
        raise ParseError(f"expected key=value, got {leftovers!r}", lineno, col0 + rest.index(leftovers))
    return out


def _int(text, lineno, col):
    if not text.isdigit():
        raise ParseError(f"expected an integer, got {text!r}", lineno, col)
    return int(text)


def _prime(text, lineno, col):
    p = _int(text, lineno, col)
    if not is_prime(p):
        raise ParseError(f"characteristic {p} is not prime", lineno, col)
    return p


def _ident(text, lineno, col):
    if not _IDENT.match(text):
        raise ParseError(f"bad identifier {text!r}", lineno, col)
    return text


def _split_exprs(text, lineno, col):
    out = []
    pos = 0
    for piece in text.split(","):
        parse_expression(piece, lineno, col + pos)
        out.append(piece)
        pos += len(piece) + 1
    return out


def parse_scenario(text: str) -> Scenario:
    s = Scenario(text=text)
    seen_base = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        key, _, rest = line.partition(" ")
        col0 = indent + len(key) + 2
        rest_lead = len(rest) - len(rest.lstrip())
        col0 += rest_lead
        rest = rest.strip()
        if key == "name":
            s.name = rest
        elif key == "base":
            kv = _keyvals(rest, lineno, col0)
            unknown = set(kv) - {"p", "vars"}
            if unknown:
                k = sorted(unknown)[0]
                raise ParseError(f"unknown base key {k!r}", lineno, kv[k][1])
            if "p" not in kv:
                raise ParseError("base needs p=", lineno, col0)
            s.p = _prime(kv["p"][0], lineno, kv["p"][1])
            if "vars" in kv:
                text_v, c = kv["vars"]
                s.vars = [_ident(v, lineno, c) for v in text_v.split(",")]
            seen_base = True
        elif key == "step":
            name, colon, poly = rest.partition(":")
            if not colon:
                raise ParseError("step needs 'name: polynomial'", lineno, col0 + len(rest))
            name = _ident(name.strip(), lineno, col0)
            pcol = col0 + len(name) + 1 + (len(poly) - len(poly.lstrip()))
            node = parse_expression(poly.strip(), lineno, pcol)
            known = set(s.vars) | {st.name for st in s.steps} | {name}
            bad = identifiers(node) - known
            if bad:
                raise ParseError(f"unknown identifier {sorted(bad)[0]!r}", lineno, pcol)
            if name in s.vars or any(st.name == name for st in s.steps):
                raise ParseError(f"duplicate generator name {name!r}", lineno, col0)
            s.steps.append(Step(name, poly.strip(), lineno, pcol))
        elif key == "ambient":
            kv = _keyvals(rest, lineno, col0)
            unknown = set(kv) - {"p", "vars", "k", "l"}
            if unknown or not {"p", "vars", "k", "l"} <= set(kv):
                raise ParseError("ambient needs exactly p=, vars=, k=, l=", lineno, col0)
            vars_ = [_ident(v, lineno, kv["vars"][1]) for v in kv["vars"][0].split(",")]
            s.ambient = Ambient(
                _prime(kv["p"][0], lineno, kv["p"][1]),
                vars_,
                _split_exprs(kv["k"][0], lineno, kv["k"][1]),
                _split_exprs(kv["l"][0], lineno, kv["l"][1]),
            )
        elif key == "auto":
            images = {}
            pos = col0
            for piece in rest.split(";"):
                gen, arrow, img = piece.partition("->")
                if not arrow:
                    raise ParseError("auto needs 'gen -> image'", lineno, pos)
                gen = _ident(gen.strip(), lineno, pos)
                parse_expression(img, lineno, pos + len(piece) - len(img))
                images[gen] = img.strip()
                pos += len(piece) + 1
            s.autos.append(images)
        elif key == "check":
            pos = col0
            for name in rest.split():
                pos = col0 + rest.index(name)
                if name == "all":
                    s.checks.extend(c for c in SUITES if c not in s.checks)
                elif name not in SUITES:
                    raise UnknownCheck(f"unknown check {name!r}", lineno, pos)
                elif name not in s.checks:
                    s.checks.append(name)
        elif key == "budget":
            for k, (v, c) in _keyvals(rest, lineno, col0).items():
                if k not in BUDGET_KEYS:
                    raise ParseError(f"unknown budget key {k!r}", lineno, c - len(k) - 1)
                s.budget[k] = _int(v, lineno, c)
        else:
            raise ParseError(f"unknown section {key!r}", lineno, indent + 1)
    if s.ambient is not None and (seen_base or s.steps):
        raise ParseError("ambient excludes base and step lines", 1, 1)
    if s.ambient is None and not seen_base:
        raise ParseError("missing base line", 1, 1)
    gens = [st.name for st in s.steps] if s.ambient is None else None
    for images in s.autos:
        if gens is not None:
            for g in images:
                if g not in gens:
                    raise ParseError(f"auto names unknown generator {g!r}", 1, 1)
    return s
