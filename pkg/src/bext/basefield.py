"""Exact scalars: F_p, multivariate polynomials over F_p, reduced rational
functions F_p(t_1..t_m), and dense univariate polynomials over any field."""

from __future__ import annotations

from typing import Iterable


class ZeroDenominator(ZeroDivisionError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _grlex(e):
    return (sum(e), e)


# ---------------------------------------------------------------------------
# dense univariate helpers over F_p (lists of ints, lowest degree first)

def _dtrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        if c:
            shift = len(a) - 1 - db
            for i, bc in enumerate(b):
                if bc:
                    a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
        _dtrim(a)
    return a


def _dgcd(a, b, p):
    a = _dtrim(list(a))
    b = _dtrim(list(b))
    while b:
        a, b = b, _dmod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


# ---------------------------------------------------------------------------

class MultiPoly:
    """Polynomial over F_p as a map exponent-vector -> nonzero coefficient."""

    __slots__ = ("p", "n", "terms", "_hash")

    def __init__(self, p: int, n: int, terms: dict):
        self.p = p
        self.n = n
        self.terms = terms
        self._hash = None

    @classmethod
    def build(cls, p, n, terms):
        clean = {}
        for e, c in terms.items():
            c %= p
            if c:
                clean[tuple(e)] = c
        return cls(p, n, clean)

    @classmethod
    def constant(cls, p, n, c):
        c %= p
        return cls(p, n, {(0,) * n: c} if c else {})

    @classmethod
    def variable(cls, p, n, i):
        e = [0] * n
        e[i] = 1
        return cls(p, n, {tuple(e): 1})

    def _like(self, terms):
        return MultiPoly(self.p, self.n, terms)

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.n in self.terms)

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get((0,) * self.n) == 1

    def const_value(self):
        return self.terms.get((0,) * self.n, 0)

    def leading(self):
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def used_vars(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return used

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self):
        p = self.p
        return self._like({e: p - c for e, c in self.terms.items()})

    def __add__(self, other):
        if len(self.terms) < len(other.terms):
            self, other = other, self
        p = self.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not self.terms or not other.terms:
            return self._like({})
        if len(self.terms) == 1:
            (e1, c1), = self.terms.items()
            if not any(e1):
                return other.scale(c1)
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            if not any(e2):
                return self.scale(c2)
        p = self.p
        out = {}
        get = out.get
        if self.n == 1:
            for (a,), c1 in self.terms.items():
                for (b,), c2 in other.terms.items():
                    k = (a + b,)
                    out[k] = (get(k, 0) + c1 * c2) % p
        else:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    out[k] = (get(k, 0) + c1 * c2) % p
        return self._like({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        c %= self.p
        if c == 0:
            return self._like({})
        if c == 1:
            return self
        p = self.p
        return self._like({e: v * c % p for e, v in self.terms.items()})

    def __pow__(self, k):
        result = MultiPoly.constant(self.p, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(pow(c, self.p - 2, self.p))

    def frobenius(self, e):
        q = self.p ** e
        return self._like({tuple(k * q for k in x): c for x, c in self.terms.items()})

    def pe_root(self, e):
        q = self.p ** e
        out = {}
        for x, c in self.terms.items():
            if any(k % q for k in x):
                return None
            out[tuple(k // q for k in x)] = c
        return self._like(out)

    def divexact(self, other):
        if other.is_const():
            c = other.const_value()
            return self.scale(pow(c, self.p - 2, self.p))
        if self.n == 1:
            q = _dense_divexact(self, other)
            if q is not None:
                return q
            raise ArithmeticError("inexact polynomial division")
        p = self.p
        le, lc = other.leading()
        inv = pow(lc, p - 2, p)
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem, key=_grlex)
            if any(a < b for a, b in zip(e, le)):
                raise ArithmeticError("inexact polynomial division")
            m = tuple(a - b for a, b in zip(e, le))
            c = rem[e] * inv % p
            quo[m] = c
            for e2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(m, e2))
                v = (rem.get(k, 0) - c * c2) % p
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return self._like(quo)

    def coefficients_in(self, i):
        """Split into {degree in variable i: coefficient polynomial}."""
        out: dict = {}
        for e, c in self.terms.items():
            d = e[i]
            k = e[:i] + (0,) + e[i + 1:]
            out.setdefault(d, {})[k] = c
        return {d: self._like(t) for d, t in out.items()}

    def to_dense(self):
        d = self.degree_in(0)
        out = [0] * (d + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    @classmethod
    def from_dense(cls, p, coeffs):
        return cls(p, 1, {(k,): c for k, c in enumerate(coeffs) if c})

    def format(self, names):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def _dense_divexact(a, b):
    p = a.p
    num = a.to_dense() if a.terms else []
    den = b.to_dense()
    db = len(den) - 1
    inv = pow(den[-1], p - 2, p)
    if len(num) - 1 < db:
        return MultiPoly(p, 1, {}) if not num else None
    quo = [0] * (len(num) - db)
    for k in range(len(num) - 1, db - 1, -1):
        c = num[k] * inv % p
        if c:
            quo[k - db] = c
            base = k - db
            for i, bc in enumerate(den):
                if bc:
                    num[base + i] = (num[base + i] - c * bc) % p
    if any(num):
        return None
    return MultiPoly.from_dense(p, quo)


def _content(f: MultiPoly, i: int) -> MultiPoly:
    g = None
    for c in f.coefficients_in(i).values():
        g = c if g is None else poly_gcd_multi(g, c)
        if g.is_const():
            return MultiPoly.constant(f.p, f.n, 1)
    return g.monic()


def _prem(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    db = b.degree_in(i)
    cb = b.coefficients_in(i)
    lcb = cb[db]
    var = MultiPoly.variable(a.p, a.n, i)
    while a and a.degree_in(i) >= db:
        da = a.degree_in(i)
        lca = a.coefficients_in(i)[da]
        a = lcb * a - lca * (var ** (da - db)) * b
    return a


def poly_gcd_multi(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic (graded-lex) gcd of two polynomials over F_p."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    one = MultiPoly.constant(a.p, a.n, 1)
    if a.is_const() or b.is_const():
        return one
    if a == b:
        return a.monic()
    if a.n == 1:
        return MultiPoly.from_dense(a.p, _dgcd(a.to_dense(), b.to_dense(), a.p))
    if len(a.terms) == 1 or len(b.terms) == 1:
        mono, other = (a, b) if len(a.terms) == 1 else (b, a)
        (e,), = [mono.terms.keys()]
        low = [min(k[i] for k in other.terms) for i in range(a.n)]
        m = tuple(min(x, y) for x, y in zip(e, low))
        return MultiPoly(a.p, a.n, {m: 1})
    va, vb = a.used_vars(), b.used_vars()
    for x, y, vx, vy in ((a, b, va, vb), (b, a, vb, va)):
        extra = vx - vy
        if extra:
            g = y
            coeffs = [x]
            for i in extra:
                coeffs = [c for f in coeffs for c in f.coefficients_in(i).values()]
            for c in coeffs:
                g = poly_gcd_multi(g, c)
                if g.is_const():
                    return one
            return g.monic()
    i = max(va)
    ca, cb = _content(a, i), _content(b, i)
    gc = poly_gcd_multi(ca, cb)
    pa, pb = a.divexact(ca), b.divexact(cb)
    if pa.degree_in(i) < pb.degree_in(i):
        pa, pb = pb, pa
    while pb.degree_in(i) > 0:
        r = _prem(pa, pb, i)
        if not r:
            break
        pa, pb = pb, r.divexact(_content(r, i))
    if pb.degree_in(i) <= 0:
        return gc
    pb = pb.divexact(_content(pb, i))
    return (gc * pb).monic()


# ---------------------------------------------------------------------------

class RationalFunctionField:
    """K = F_p(vars); with no variables this is the prime field F_p."""

    def __init__(self, p: int, vars: Iterable[str] = ()):
        vars = tuple(vars)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if len(set(vars)) != len(vars):
            raise ValueError("variable names must be unique")
        self.p = p
        self.vars = vars
        self.n = len(vars)
        self._zero_poly = MultiPoly(p, self.n, {})
        self._one_poly = MultiPoly.constant(p, self.n, 1)
        self.zero = RatFunc(self, self._zero_poly, self._one_poly)
        self.one = RatFunc(self, self._one_poly, self._one_poly)

    @property
    def characteristic(self):
        return self.p

    @property
    def is_finite(self):
        return self.n == 0

    def order(self):
        return self.p if self.n == 0 else None

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and self.p == other.p
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.p, self.vars))

    def __repr__(self):
        if not self.vars:
            return f"F_{self.p}"
        return f"F_{self.p}({', '.join(self.vars)})"

    def poly(self, terms) -> MultiPoly:
        return MultiPoly.build(self.p, self.n, terms)

    def gen(self, name: str) -> "RatFunc":
        i = self.vars.index(name)
        return RatFunc(self, MultiPoly.variable(self.p, self.n, i), self._one_poly)

    def gens(self):
        return [self.gen(v) for v in self.vars]

    def from_int(self, c: int) -> "RatFunc":
        c %= self.p
        if c == 0:
            return self.zero
        if c == 1:
            return self.one
        return RatFunc(self, MultiPoly.constant(self.p, self.n, c), self._one_poly)

    def from_poly(self, f: MultiPoly) -> "RatFunc":
        return RatFunc(self, f, self._one_poly)

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, MultiPoly):
            return self.from_poly(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def element(self, num: MultiPoly, den: MultiPoly) -> "RatFunc":
        return ratfunc_normalize(num, den, self)

    def parse(self, text: str) -> "RatFunc":
        from .expr import evaluate, parse_expression

        env = {v: self.gen(v) for v in self.vars}
        return evaluate(parse_expression(text), env, self.from_int)

    # K as a vector space over K^(p^e): basis t^r for residues r in [0, p^e)^m
    def pe_basis(self, e: int):
        q = self.p ** e
        out = [()]
        for _ in range(self.n):
            out = [r + (k,) for r in out for k in range(q)]
        return out

    def pe_decompose(self, a: "RatFunc", e: int) -> dict:
        """Write a = sum_r t^r * c_r with every c_r in K^(p^e)."""
        q = self.p ** e
        den_q = a.den.frobenius(e)
        num = a.num * (a.den ** (q - 1)) if not a.den.is_one() else a.num
        parts: dict = {}
        for x, c in num.terms.items():
            r = tuple(k % q for k in x)
            parts.setdefault(r, {})[tuple(k - k % q for k in x)] = c
        return {
            r: ratfunc_normalize(MultiPoly(self.p, self.n, t), den_q, self)
            for r, t in parts.items()
        }

    def monomial(self, r) -> "RatFunc":
        return RatFunc(self, MultiPoly(self.p, self.n, {tuple(r): 1}), self._one_poly)

    def pe_root(self, a: "RatFunc", e: int):
        return pe_root(a, e)

    def frobenius(self, a: "RatFunc", e: int):
        return frobenius_power(a, e)

    def random_element(self, rng, degree=2, allow_fraction=True):
        def rpoly():
            terms = {}
            for _ in range(rng.randint(1, 3)):
                exps = [0] * self.n
                for _ in range(rng.randint(0, degree)):
                    if self.n:
                        exps[rng.randrange(self.n)] += 1
                terms[tuple(exps)] = rng.randrange(self.p)
            return self.poly(terms)

        num = rpoly()
        den = rpoly() if allow_fraction and self.n else self._one_poly
        if not den:
            den = self._one_poly
        return ratfunc_normalize(num, den, self)


class RatFunc:
    """Reduced fraction num/den with den monic in graded-lex order."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.num.terms)

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        one_b, one_d = b.is_one(), d.is_one()
        if one_b and one_d:
            return RatFunc(self.field, a + c, b)
        if one_b:
            return RatFunc(self.field, a * d + c, d)
        if one_d:
            return RatFunc(self.field, a + c * b, b)
        if b == d:
            n = a + c
            if not n:
                return self.field.zero
            g = poly_gcd_multi(n, b)
            if g.is_one():
                return RatFunc(self.field, n, b)
            return RatFunc(self.field, n.divexact(g), b.divexact(g))
        g = poly_gcd_multi(b, d)
        if g.is_one():
            return RatFunc(self.field, a * d + c * b, b * d)
        b1, d1 = b.divexact(g), d.divexact(g)
        n = a * d1 + c * b1
        if not n:
            return self.field.zero
        den = b * d1
        h = poly_gcd_multi(n, g)
        if not h.is_one():
            n, den = n.divexact(h), den.divexact(h)
        return RatFunc(self.field, n, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a.terms or not c.terms:
            return self.field.zero
        if b.is_one() and d.is_one():
            return RatFunc(self.field, a * c, b)
        g1 = poly_gcd_multi(a, d)
        g2 = poly_gcd_multi(c, b)
        if not g1.is_one():
            a, d = a.divexact(g1), d.divexact(g1)
        if not g2.is_one():
            c, b = c.divexact(g2), b.divexact(g2)
        return RatFunc(self.field, a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        _, lc = self.num.leading()
        p = self.field.p
        inv = pow(lc, p - 2, p)
        return RatFunc(self.field, self.den.scale(inv), self.num.scale(inv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.field, self.num ** k, self.den ** k)

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_const()

    def degree(self):
        """Total degree of numerator plus denominator (a size measure)."""
        return max(self.num.total_degree(), 0) + self.den.total_degree()

    def __repr__(self):
        names = self.field.vars
        n = self.num.format(names)
        if self.den.is_one():
            return n
        return f"({n})/({self.den.format(names)})"


def ratfunc_normalize(num: MultiPoly, den: MultiPoly, field=None) -> RatFunc:
    if not den:
        raise ZeroDenominator("zero denominator")
    if field is None:
        field = RationalFunctionField(num.p, [f"t{i + 1}" for i in range(num.n)] if num.n > 1 else ["t"] * num.n)
    if not num:
        return field.zero
    g = poly_gcd_multi(num, den)
    if not g.is_one():
        num, den = num.divexact(g), den.divexact(g)
    _, lc = den.leading()
    if lc != 1:
        inv = pow(lc, num.p - 2, num.p)
        num, den = num.scale(inv), den.scale(inv)
    return RatFunc(field, num, den)


def frobenius_power(a: RatFunc, e: int) -> RatFunc:
    if e == 0:
        return a
    return RatFunc(a.field, a.num.frobenius(e), a.den.frobenius(e))


def pe_root(a: RatFunc, e: int):
    """The b with b^(p^e) = a, or None when a is not a p^e-th power."""
    if e == 0:
        return a
    n = a.num.pe_root(e)
    if n is None:
        return None
    d = a.den.pe_root(e)
    if d is None:
        return None
    return RatFunc(a.field, n, d)


# ---------------------------------------------------------------------------

class UniPoly:
    """Dense polynomial in a formal variable x over an arbitrary field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def const(cls, field, c):
        return cls(field, [field(c) if isinstance(c, int) else c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, int):
            other = self.field.from_int(other)
        return UniPoly(self.field, [other])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly(self.field, [self.field.one])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, UniPoly):
            q, r = divmod(self, c)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        inv = self.field.one / c
        return UniPoly(self.field, [a * inv for a in self.coeffs])

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = self.field.one / other.coeffs[-1]
        if len(rem) - 1 < db:
            return UniPoly(self.field, []), self
        quo = [self.field.zero] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv
            quo[k - db] = c
            for i, b in enumerate(other.coeffs):
                if b:
                    rem[k - db + i] = rem[k - db + i] - c * b
        return UniPoly(self.field, quo), UniPoly(self.field, rem[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if not self.coeffs or self.coeffs[-1] == self.field.one:
            return self
        return self / self.coeffs[-1]

    def derivative(self):
        return formal_derivative(self)

    def __call__(self, value):
        """Horner evaluation at a value from any ring that mixes with the
        coefficients (for instance a tower element over this field)."""
        if not self.coeffs:
            return value * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        if len(self.coeffs) == 1:
            acc = value * 0 + acc
        return acc

    def compose_power(self, q: int):
        """f(x^q)."""
        if not self.coeffs:
            return self
        out = [self.field.zero] * ((len(self.coeffs) - 1) * q + 1)
        for i, c in enumerate(self.coeffs):
            out[i * q] = c
        return UniPoly(self.field, out)

    def map_coeffs(self, fn, field):
        return UniPoly(field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = repr(c)
            if not mono:
                parts.append(cs)
            elif c == self.field.one:
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    while g:
        f, g = g, f % g
    return f.monic()


def poly_xgcd(f: UniPoly, g: UniPoly):
    """(d, s, t) with s*f + t*g = d monic."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = UniPoly(F, [F.one]), UniPoly(F, [])
    t0, t1 = UniPoly(F, []), UniPoly(F, [F.one])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = F.one / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def formal_derivative(f: UniPoly) -> UniPoly:
    F = f.field
    p = F.characteristic
    out = []
    for i in range(1, len(f.coeffs)):
        k = i % p
        out.append(f.coeffs[i] * F.from_int(k) if k else F.zero)
    return UniPoly(F, out)


def separable_presentation(f: UniPoly):
    """(fsep, n) with f(x) = fsep(x^(p^n)) and fsep' != 0."""
    if f.degree < 1:
        raise ValueError("separable presentation needs a non-constant polynomial")
    p = f.field.characteristic
    n = 0
    while not formal_derivative(f):
        f = UniPoly(f.field, f.coeffs[::p])
        n += 1
    return f, n
