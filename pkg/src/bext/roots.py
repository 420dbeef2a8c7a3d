"""Roots of polynomials over K inside a tower L.

Finite K: the tower is an étale F_p-algebra already; roots come from
gcd(g, x^|F| - x) and equal-degree splitting.

K = F_p(t): roots of the separable part live in L^sep. Present L^sep, specialize
t -> tau in F_(p^k), split the étale algebra into fields, find roots per
field, Hensel-lift candidate tuples in power series around tau, reconstruct
the coordinates as rational functions and verify them exactly.

Completeness certificate: when the basis of L^sep has a trace form that is a
unit at tau and g stays squarefree at tau, distinct roots in L stay distinct
in every field factor of the specialized algebra, so the number of roots in L
is at most the minimum, over factors, of the root counts there.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass, field

import numpy as np

from .basefield import MultiPoly, RationalFunctionField, UniPoly, ratfunc_normalize, separable_presentation
from .exlinalg import Matrix, semilinear_kernel, Subspace
from .tower import ExtensionTower, Subfield, exponent_bound, present_subfield, subfield_generated


class NoGoodSpecialization(ArithmeticError):
    pass


class LiftDivergence(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# F_(p^k) with elements encoded as ints (base-p digits = polynomial coefficients)

class GF:
    _cache: dict = {}

    def __new__(cls, p, k):
        key = (p, k)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        cls._cache[key] = self
        self._setup(p, k)
        return self

    def _setup(self, p, k):
        self.p, self.k = p, k
        self.q = p ** k
        self.modulus = self._find_irreducible()
        self._build_tables()

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _slow_mul(self, a, b, mod):
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(2 * k - 1, k - 1, -1):
            c = prod[i]
            if c:
                for j in range(k + 1):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        return self._undigits(prod[:k])

    def _find_irreducible(self):
        p, k = self.p, self.k
        if k == 1:
            return [0, 1]
        for code in range(p ** k):
            mod = self._digits(code) + [1]
            # irreducible iff no roots of factors: test by brute-force gcd with x^(p^i) - x
            if mod[0] == 0:
                continue
            if self._irreducible(mod):
                return mod
        raise ArithmeticError("no irreducible polynomial found")

    def _irreducible(self, mod):
        p, k = self.p, self.k
        # Rabin test with dense F_p polynomials
        from .basefield import _dgcd, _dmod

        def mulmod(a, b):
            prod = [0] * (len(a) + len(b))
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            return _dmod(prod, mod, p)

        def powmod(a, e):
            r = [1]
            while e:
                if e & 1:
                    r = mulmod(r, a)
                a = mulmod(a, a)
                e >>= 1
            return r

        x = [0, 1]
        for d in range(1, k // 2 + 1):
            if k % d == 0 or True:
                h = powmod(x, p ** d)
                h = h + [0] * max(0, 2 - len(h))
                h[1] = (h[1] - 1) % p
                g = _dgcd(mod, h, p)
                if len(g) > 1:
                    return False
        return True

    def _build_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            self._mul_direct = True
            self.exp = self.log = None
            return
        self._mul_direct = False
        # find a generator of the multiplicative group
        for g in range(2, q):
            seen = 1
            x = g
            order = 1
            while x != 1:
                x = self._slow_mul(x, g, self.modulus)
                order += 1
                if order > q:
                    break
            if order == q - 1:
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g, self.modulus)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self.exp, self.log = exp, log
        if p != 2:
            self._addt = None
            if q <= 243:
                self._addt = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
            self._negt = [self._undigits([(-x) % p for x in self._digits(a)]) for a in range(q)]

    def _slow_add(self, a, b):
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._addt is not None:
            return self._addt[a][b]
        return self._slow_add(a, b)

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._negt[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self._mul_direct:
            return a * b % self.p
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self._mul_direct:
            return pow(a, self.p - 2, self.p)
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a, e):
        if e == 0:
            return 1
        if not a:
            return 0
        if self._mul_direct:
            return pow(a, e, self.p)
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def from_int(self, c):
        return c % self.p

    def in_prime_field(self, a):
        return a < self.p

    def elements(self):
        return range(self.q)


# ---------------------------------------------------------------------------
# coefficient rings for the generic tower multiplication

class _GFRing:
    def __init__(self, F: GF):
        self.F = F
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return self.F.add(a, b)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def mul(self, a, b):
        return self.F.mul(a, b)

    def is_zero(self, a):
        return not a

    def const(self, c):
        return c


class _SeriesRing:
    """F_q[[e]] / e^d with series as tuples of length d."""

    def __init__(self, F: GF, d: int):
        self.F = F
        self.d = d
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        # Kronecker packing: an F_q coefficient spreads over 2k-1 slots so
        # that digit products never collide; slots are 32 or 64 bits
        k = F.k
        self.stride = 2 * k - 1
        worst = d * k * (F.p - 1) ** 2
        self.code = "I" if worst < 2 ** 32 else "Q"
        self.width = 4 if self.code == "I" else 8
        if k > 1:
            self.digits = [F._digits(a) + [0] * (k - 1) for a in range(F.q)]
            mod = F.modulus
            # z^j mod the field modulus as digit vectors, j = 0 .. 2k-2
            red = []
            for j in range(2 * k - 1):
                v = [0] * (2 * k - 1)
                v[j] = 1
                for i in range(2 * k - 2, k - 1, -1):
                    c = v[i]
                    if c:
                        v[i] = 0
                        for m in range(k):
                            v[i - k + m] = (v[i - k + m] - c * mod[m]) % F.p
                red.append(v[:k])
            self.red = red
        self.addt = getattr(F, "_addt", None) if k > 1 and F.p != 2 else None
        self.negt = [F.neg(a) for a in range(F.q)] if self.addt is not None else None

    def add(self, a, b):
        F = self.F
        if F.p == 2:
            return tuple(x ^ y for x, y in zip(a, b))
        if F.k == 1:
            p = F.p
            return tuple((x + y) % p for x, y in zip(a, b))
        if self.addt is not None:
            t = self.addt
            return tuple(t[x][y] for x, y in zip(a, b))
        ad = F.add
        return tuple(ad(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.F
        if F.p == 2:
            return tuple(x ^ y for x, y in zip(a, b))
        if F.k == 1:
            p = F.p
            return tuple((x - y) % p for x, y in zip(a, b))
        if self.addt is not None:
            t, ng = self.addt, self.negt
            return tuple(t[x][ng[y]] for x, y in zip(a, b))
        sb = F.sub
        return tuple(sb(x, y) for x, y in zip(a, b))

    def _pack(self, a):
        if self.F.k == 1:
            slots = a
        else:
            dg = self.digits
            slots = [x for c in a for x in dg[c]]
        return int.from_bytes(array(self.code, slots).tobytes(), "little")

    def _kronecker(self, a, b):
        F, d, k = self.F, self.d, self.F.k
        prod = self._pack(a) * self._pack(b)
        n = d * self.stride
        raw = prod.to_bytes(max(n * self.width, (prod.bit_length() + 7) // 8), "little")
        slots = array(self.code)
        slots.frombytes(raw[: n * self.width])
        p = F.p
        if k == 1:
            return tuple(c % p for c in slots)
        stride = self.stride
        cols = [slots[j:n:stride] for j in range(stride)]
        acc = [0] * d
        for m in range(k - 1, -1, -1):
            v = list(cols[m])
            for j in range(k, stride):
                r = self.red[j][m]
                if r:
                    v = [x + r * y for x, y in zip(v, cols[j])]
            acc = [a * p + x % p for a, x in zip(acc, v)]
        return tuple(acc)

    def mul(self, a, b):
        F, d = self.F, self.d
        if d >= 24:
            return self._kronecker(a, b)
        if F.k == 1:
            p = F.p
            out = [0] * d
            bnz = [(j, y) for j, y in enumerate(b) if y]
            for i, x in enumerate(a):
                if x:
                    lim = d - i
                    for j, y in bnz:
                        if j >= lim:
                            break
                        out[i + j] += x * y
            return tuple(c % p for c in out)
        out = [0] * d
        anz = [(i, x) for i, x in enumerate(a) if x]
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in anz:
            for j, y in bnz:
                if i + j >= d:
                    break
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return tuple(out)

    def is_zero(self, a):
        return not any(a)

    def const(self, c):
        return (c,) + (0,) * (self.d - 1)


class FlatAlgebra:
    """R[g_1..g_k]/(f_1..f_k) with the same flat layout as ExtensionTower."""

    def __init__(self, R, degrees, fdata):
        self.R = R
        self.degrees = list(degrees)
        self.fdata = fdata  # per level: list of flat coefficient vectors
        self.n = 1
        for d in self.degrees:
            self.n *= d

    def zero(self):
        return (self.R.zero,) * self.n

    def one(self):
        return (self.R.one,) + (self.R.zero,) * (self.n - 1)

    def add(self, a, b):
        ad = self.R.add
        return tuple(ad(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sb = self.R.sub
        return tuple(sb(x, y) for x, y in zip(a, b))

    def scale(self, c, a):
        mul = self.R.mul
        return tuple(mul(c, x) for x in a)

    def is_zero(self, a):
        z = self.R.is_zero
        return all(z(x) for x in a)

    def mul(self, a, b):
        return self._mul(len(self.degrees), a, b)

    def _mul(self, level, a, b):
        R = self.R
        if level == 0:
            return (R.mul(a[0], b[0]),)
        d = self.degrees[level - 1]
        m = len(a) // d
        f = self.fdata[level - 1]
        zero = (R.zero,) * m
        A = [a[i * m:(i + 1) * m] for i in range(d)]
        B = [b[i * m:(i + 1) * m] for i in range(d)]
        isz = self.is_zero
        bnz = [(j, y) for j, y in enumerate(B) if not isz(y)]
        prod = [zero] * (2 * d - 1)
        sub_add = self.add
        for i, x in enumerate(A):
            if not isz(x):
                for j, y in bnz:
                    prod[i + j] = sub_add(prod[i + j], self._mul(level - 1, x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if not isz(c):
                base = k - d
                for i in range(d):
                    fi = f[i]
                    if not isz(fi):
                        prod[base + i] = self.sub(prod[base + i], self._mul(level - 1, c, fi))
        return tuple(x for s in prod[:d] for x in s)

    def power(self, a, e):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result


# ---------------------------------------------------------------------------
# small dense linear algebra over GF

def _gf_rref(F: GF, rows, ncols):
    rows = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def _gf_kernel(F: GF, rows, ncols):
    red, piv = _gf_rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in zip(red, piv):
            v[c] = F.neg(r[f])
        out.append(v)
    return out


def _gf_solve(F: GF, cols, rhs):
    """x with sum x_j cols_j = rhs, or None."""
    n = len(rhs)
    rows = [[cols[j][i] for j in range(len(cols))] + [rhs[i]] for i in range(n)]
    red, piv = _gf_rref(F, rows, len(cols) + 1)
    if len(cols) in piv:
        return None
    x = [0] * len(cols)
    for r, c in zip(red, piv):
        x[c] = r[-1]
    return x


# ---------------------------------------------------------------------------
# polynomials over GF (int lists, low degree first)

def _ptrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _pshift_eval(F, coeffs_fp, tau):
    """Polynomial with F_p coefficients evaluated at tau in F."""
    acc = 0
    for c in reversed(coeffs_fp):
        acc = F.add(F.mul(acc, tau), F.from_int(c))
    return acc


def _ptaylor(F, coeffs_fp, tau, d):
    """coeffs_fp (F_p polynomial in t) rewritten in e = t - tau, truncated to d."""
    acc = [0]
    for c in reversed(coeffs_fp):
        # acc = acc * (e + tau) + c
        new = [0] * (len(acc) + 1)
        for i, x in enumerate(acc):
            if x:
                new[i + 1] = F.add(new[i + 1], x)
                new[i] = F.add(new[i], F.mul(x, tau))
        new[0] = F.add(new[0], F.from_int(c))
        acc = new
    acc = acc[:d] + [0] * max(0, d - len(acc))
    return acc


def _series_div(F, a, b, d):
    """a / b in F[[e]] truncated to d (b[0] != 0)."""
    inv0 = F.inv(b[0])
    out = [0] * d
    rem = list(a[:d]) + [0] * max(0, d - len(a))
    for i in range(d):
        c = F.mul(rem[i], inv0)
        out[i] = c
        if c:
            for j in range(1, min(len(b), d - i)):
                if b[j]:
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b[j]))
    return tuple(out)


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _ptrim(out)


def _pdivmod(F, a, b):
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    if len(a) < len(b):
        return [], a
    inv = F.inv(b[-1])
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - 1, len(b) - 2, -1):
        c = F.mul(a[k], inv)
        if c:
            q[k - len(b) + 1] = c
            for i, y in enumerate(b):
                if y:
                    a[k - len(b) + 1 + i] = F.sub(a[k - len(b) + 1 + i], F.mul(c, y))
    return _ptrim(q), _ptrim(a[: len(b) - 1])


def _psub(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([F.sub(x, y) for x, y in zip(a, b)])


def _rational_reconstruct(F, s, d, bound):
    """(N, D) with N = D*s mod e^d, deg N <= bound, deg D <= bound, D(0) != 0."""
    r0, r1 = [0] * d + [1], _ptrim(list(s))
    t0, t1 = [], [1]
    while r1 and len(r1) - 1 > bound:
        q, r = _pdivmod(F, r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _psub(F, t0, _pmul(F, q, t1))
    if not r1:
        r1 = []
    if not t1 or len(t1) - 1 > bound or not t1[0]:
        return None
    return r1, t1


def _shift_to_t(F, poly_e, tau):
    """poly in e with e = t - tau, as a polynomial in t."""
    acc = [0]
    mtau = F.neg(tau)
    for c in reversed(poly_e):
        new = [0] * (len(acc) + 1)
        for i, x in enumerate(acc):
            if x:
                new[i + 1] = F.add(new[i + 1], x)
                new[i] = F.add(new[i], F.mul(x, mtau))
        new[0] = F.add(new[0], c)
        acc = new
    return _ptrim(acc)


# ---------------------------------------------------------------------------

@dataclass
class RootResult:
    roots: list
    complete: bool
    regime: str
    bound: int | None = None
    tau: tuple | None = None
    notes: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


@dataclass
class LiftConfig:
    """Search and lifting parameters for rational-function bases."""

    bound: int | None = None
    max_k: int = 6
    max_candidates: int = 2048
    certify_budget: int = 24
    scan: int = 6
    seed: int = 0


class _Specialized:
    """A tower over F_p(t) (or F_p) specialized at tau in F_q."""

    def __init__(self, tower: ExtensionTower, F: GF, tau):
        self.tower = tower
        self.F = F
        self.tau = tau
        self.R = _GFRing(F)
        fdata = []
        for lvl in tower.levels:
            fdata.append([tuple(self.scalar(c) for c in vec) for vec in lvl.f])
        self.A = FlatAlgebra(self.R, tower.degrees, fdata)

    def scalar(self, c):
        if c.den.is_const():
            den = c.den.const_value()
            v = self._eval(c.num)
            return self.F.mul(v, self.F.inv(den))
        den = self._eval(c.den)
        if not den:
            raise ZeroDivisionError("denominator vanishes at tau")
        return self.F.mul(self._eval(c.num), self.F.inv(den))

    def _eval(self, poly: MultiPoly):
        if poly.n == 0:
            return poly.const_value()
        return _pshift_eval(self.F, poly.to_dense() if poly.terms else [], self.tau)

    def element(self, x):
        return tuple(self.scalar(c) for c in x.coords)


def _denominators_ok(F, tau, scalars):
    for c in scalars:
        if c.den.is_const():
            continue
        if not _pshift_eval(F, c.den.to_dense(), tau):
            return False
    return True


def _trace_form_unit(A: FlatAlgebra, F: GF):
    n = A.n
    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    prods = [[A.mul(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    tr = [0] * n
    for k in range(n):
        acc = 0
        for j in range(n):
            acc = F.add(acc, prods[k][j][j])
        tr[k] = acc
    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            for k, x in enumerate(prods[i][j]):
                if x and tr[k]:
                    acc = F.add(acc, F.mul(x, tr[k]))
            row.append(acc)
        gram.append(row)
    _, piv = _gf_rref(F, gram, n)
    return len(piv) == n


def _mult_matrix_cols(A: FlatAlgebra, a):
    n = A.n
    return [A.mul(a, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]


def _is_unit(A, F, a):
    cols = _mult_matrix_cols(A, a)
    rows = [[c[i] for c in cols] for i in range(A.n)]
    _, piv = _gf_rref(F, rows, A.n)
    return len(piv) == A.n


def _algebra_inverse(A, F, a, unit=None):
    cols = _mult_matrix_cols(A, a)
    target = unit if unit is not None else A.one()
    x = _gf_solve(F, cols, list(target))
    if x is None:
        raise ZeroDivisionError("not a unit")
    return tuple(x)


def _idempotents(A: FlatAlgebra, F: GF):
    """Primitive idempotents of an étale F-algebra.

    The Frobenius-fixed subalgebra is a product of copies of F, one per
    primitive idempotent; each of its elements is diagonalizable with
    eigenvalues in F, so spectral projectors split the identity."""
    n = A.n
    q = F.q
    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    frob = [A.power(b, q) for b in basis]
    rows = [[F.sub(frob[j][i], 1 if i == j else 0) for j in range(n)] for i in range(n)]
    fixed = _gf_kernel(F, rows, n)
    idem = [A.one()]
    for b in fixed:
        if len(idem) == len(fixed):
            break
        b = tuple(b)
        lams = _eigenvalues(A, F, b)
        if len(lams) <= 1:
            continue
        projs = []
        for lam in lams:
            proj = A.one()
            for mu in lams:
                if mu != lam:
                    c = F.inv(F.sub(lam, mu))
                    proj = A.mul(proj, A.scale(c, A.sub(b, A.scale(mu, A.one()))))
            projs.append(proj)
        new = []
        for e in idem:
            for proj in projs:
                pe = A.mul(e, proj)
                if not A.is_zero(pe):
                    new.append(pe)
        idem = new
    return idem


def _eigenvalues(A, F, b):
    """Roots in F of the minimal polynomial of b (b^q = b, so it splits)."""
    powers = [A.one()]
    while True:
        nxt = A.mul(powers[-1], b)
        c = _gf_solve(F, powers, list(nxt))
        if c is not None:
            break
        powers.append(nxt)
    # b^m = sum c_i b^i
    m = len(powers)
    out = []
    for lam in F.elements():
        acc = 1
        for _ in range(m):
            acc = F.mul(acc, lam)
        for i, ci in enumerate(c):
            acc = F.sub(acc, F.mul(ci, F.pow(lam, i)))
        if not acc:
            out.append(lam)
    return out


def _rank_of(A, F, e):
    cols = _mult_matrix_cols(A, e)
    rows = [[c[i] for c in cols] for i in range(A.n)]
    _, piv = _gf_rref(F, rows, A.n)
    return len(piv)


class _CornerField:
    """The field eA for a primitive idempotent e, presented as F_q[z]/(h) via
    a generating element, so polynomial arithmetic stays cheap."""

    def __init__(self, A, F, e, rng=None):
        self.A, self.F, self.e = A, F, e
        self.degree = _rank_of(A, F, e)
        self.size = F.q ** self.degree
        self.characteristic = F.p
        self._find_generator(rng or random.Random(0))
        self.zero = _CE(self, (0,) * self.degree)
        self.one = _CE(self, (1,) + (0,) * (self.degree - 1))

    def _find_generator(self, rng):
        A, F, e, d = self.A, self.F, self.e, self.degree
        cands = [e] if d == 1 else []
        for _ in range(400):
            if cands:
                a = cands.pop()
            else:
                a = A.mul(tuple(rng.randrange(F.q) for _ in range(A.n)), e)
            powers = [e]
            for _ in range(d):
                powers.append(A.mul(powers[-1], a))
            rows = [[pw[i] for pw in powers[:d]] for i in range(A.n)]
            _, piv = _gf_rref(F, rows, d)
            if len(piv) < d:
                continue
            c = _gf_solve(F, powers[:d], list(powers[d]))
            self.powers = powers[:d]
            # h = z^d - sum c_i z^i, stored monic low-first
            self.h = [F.neg(x) for x in c] + [1]
            return
        raise ArithmeticError("no generating element found for a residue field")

    def from_int(self, c):
        return self.embed(self.F.from_int(c))

    def __call__(self, x):
        return x

    def embed(self, c):
        return _CE(self, (c,) + (0,) * (self.degree - 1))

    def random(self, rng):
        return _CE(self, tuple(rng.randrange(self.F.q) for _ in range(self.degree)))

    def to_algebra(self, v):
        A = self.A
        acc = A.zero()
        for c, pw in zip(v, self.powers):
            if c:
                acc = A.add(acc, A.scale(c, pw))
        return acc

    def _mulv(self, x, y):
        F, d, h = self.F, self.degree, self.h
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] = F.add(prod[i + j], F.mul(a, b))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d):
                    if h[i]:
                        prod[k - d + i] = F.sub(prod[k - d + i], F.mul(c, h[i]))
        return tuple(prod[:d])

    def _invv(self, x):
        F = self.F
        r0, r1 = list(self.h), _ptrim(list(x))
        t0, t1 = [], [1]
        while len(r1) > 1:
            q, r = _pdivmod(F, r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _psub(F, t0, _pmul(F, q, t1))
        if not r1:
            raise ZeroDivisionError("not invertible in residue field")
        inv = F.inv(r1[0])
        out = [F.mul(inv, c) for c in t1] + [0] * self.degree
        return tuple(out[: self.degree])


class _CE:
    __slots__ = ("K", "v")

    def __init__(self, K, v):
        self.K = K
        self.v = v

    def __bool__(self):
        return any(self.v)

    def __eq__(self, o):
        return isinstance(o, _CE) and self.v == o.v

    def __hash__(self):
        return hash(self.v)

    def __add__(self, o):
        F = self.K.F
        return _CE(self.K, tuple(F.add(x, y) for x, y in zip(self.v, o.v)))

    def __sub__(self, o):
        F = self.K.F
        return _CE(self.K, tuple(F.sub(x, y) for x, y in zip(self.v, o.v)))

    def __neg__(self):
        F = self.K.F
        return _CE(self.K, tuple(F.neg(x) for x in self.v))

    def __mul__(self, o):
        return _CE(self.K, self.K._mulv(self.v, o.v))

    def __truediv__(self, o):
        return self * o.inverse()

    def inverse(self):
        return _CE(self.K, self.K._invv(self.v))

    def alg(self):
        return self.K.to_algebra(self.v)


def _powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly(mod.field, [mod.field.one])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def _gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def _roots_in_corner(g_coeffs, K: _CornerField, rng, count_only=False):
    """Roots in the finite field K of the polynomial with GF coefficients."""
    g = UniPoly(K, [K.embed(c) for c in g_coeffs]).monic()
    x = UniPoly.x(K)
    xq = _powmod(x, K.size, g)
    h = _gcd(g, xq - x)
    if count_only or h.degree <= 0:
        return max(h.degree, 0) if count_only else []
    out = []
    stack = [h]
    N = K.size
    p = K.characteristic
    bits = 0
    while p ** bits < N:
        bits += 1
    while stack:
        h = stack.pop()
        if h.degree == 1:
            out.append(-h.coeffs[0])
            continue
        for _ in range(200):
            a = K.random(rng)
            if p == 2:
                ax = UniPoly(K, [K.zero, a]) % h
                w = ax
                acc = ax
                for _ in range(bits - 1):
                    w = (w * w) % h
                    acc = acc + w
            else:
                w = _powmod(UniPoly(K, [a, K.one]), (N - 1) // 2, h)
                acc = w - UniPoly(K, [K.one])
            d = _gcd(h, acc) if acc else h
            if 0 < d.degree < h.degree:
                stack.append(d)
                stack.append(h // d)
                break
        else:
            raise ArithmeticError("equal-degree splitting failed")
    return out


def _eval_poly_alg(A, coeffs, r):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = A.add(A.mul(acc, r), c)
    return acc


def _derivative_coeffs(A, coeffs, F):
    out = []
    for i in range(1, len(coeffs)):
        k = F.from_int(i)
        out.append(A.scale(A.R.const(k), coeffs[i]) if k else A.zero())
    return out or [A.zero()]


# ---------------------------------------------------------------------------

def _separable_part_tower(t: ExtensionTower):
    """L^sep as K(g_i^(p^m)) for p^m >= [L:K], with a presentation over K."""
    p = t.characteristic
    m = exponent_bound(p, t.n)
    gens = [g ** (p ** m) for g in t.gens()]
    M = subfield_generated(t, gens)
    if M.dim == t.n:
        return M, None
    return M, present_subfield(t, M)


def _coefficient_bound(S: ExtensionTower, g_scalars):
    total = 0
    for lvl in S.levels:
        for vec in lvl.f:
            for c in vec:
                total += c.degree()
    for c in g_scalars:
        total += c.degree()
    return 4 * (total + 1)


def _rat_from_series(F: GF, K: RationalFunctionField, s, d, bound, tau):
    rec = _rational_reconstruct(F, s, d, bound)
    if rec is None:
        return None
    N, D = rec
    Nt = _shift_to_t(F, N, tau) if N else []
    Dt = _shift_to_t(F, D, tau)
    inv = F.inv(Dt[-1])
    Nt = [F.mul(inv, c) for c in Nt]
    Dt = [F.mul(inv, c) for c in Dt]
    if not all(F.in_prime_field(c) for c in Nt + Dt):
        return None
    num = MultiPoly(K.p, 1, {(i,): c for i, c in enumerate(Nt) if c})
    den = MultiPoly(K.p, 1, {(i,): c for i, c in enumerate(Dt) if c})
    return ratfunc_normalize(num, den, K)


def _taus(p, max_k):
    for k in range(1, max_k + 1):
        F = GF(p, k)
        for tau in F.elements():
            if k > 1 and tau < p ** (k - 1) and _in_subfield(F, tau, k):
                continue
            yield F, tau


def _in_subfield(F, tau, k):
    # skip tau already tried over a smaller field: tau^(p^j) = tau for a proper divisor j
    for j in range(1, k):
        if k % j == 0 and F.pow(tau, F.p ** j) == tau:
            return True
    return False


def _good_points(S, g, scalars, cfg, skip=()):
    """Specialization points where S stays étale with a basis whose trace form
    is a unit and g stays squarefree."""
    for F, tau in _taus(S.base.p, cfg.max_k):
        if (F.q, tau) in skip or not _denominators_ok(F, tau, scalars):
            continue
        spec = _Specialized(S, F, tau)
        gtau = [spec.scalar(c) for c in g.coeffs]
        gp = UniPoly(_FqField(F), [_Fq(F, c) for c in gtau])
        if _gcd(gp, gp.derivative()).degree > 0:
            continue
        if not _trace_form_unit(spec.A, F):
            continue
        yield spec, gtau


def _separable_roots(g: UniPoly, t: ExtensionTower, cfg: LiftConfig):
    """Roots in L of a separable g over K; returns (roots, complete, info)."""
    K = t.base
    if g.degree == 1:
        return [t.scalar(-g.coeffs[0] / g.coeffs[1])], True, {"regime": "linear"}
    if not isinstance(K, RationalFunctionField):
        raise NoGoodSpecialization(f"root finding over {K!r} is not supported")
    rng = random.Random(cfg.seed)
    g = g.monic()
    if K.n == 0:
        F = GF(K.p, 1)
        spec = _Specialized(t, F, 0)
        A = spec.A
        gc = [spec.scalar(c) for c in g.coeffs]
        idem = _idempotents(A, F)
        if len(idem) != 1:
            raise ArithmeticError("finite tower is not a field")
        rs = _roots_in_corner(gc, _CornerField(A, F, idem[0]), rng)
        out = [t.element(tuple(K.from_int(c) for c in r.alg())) for r in rs]
        return out, True, {"regime": "finite"}
    if K.n > 1:
        raise NoGoodSpecialization("separable root finding needs a univariate or finite base")
    M, pres = _separable_part_tower(t)
    S = pres.tower if pres is not None else t
    bound = cfg.bound or _coefficient_bound(S, g.coeffs)
    scalars = [c for lvl in S.levels for vec in lvl.f for c in vec] + list(g.coeffs)
    scanned = []
    for spec, gtau in _good_points(S, g, scalars, cfg):
        corners = [_CornerField(spec.A, spec.F, e) for e in _idempotents(spec.A, spec.F)]
        per = [_roots_in_corner(gtau, Kc, rng) for Kc in corners]
        scanned.append((spec, per))
        if min(len(rs) for rs in per) == 0 or len(scanned) >= cfg.scan:
            break
    if not scanned:
        raise NoGoodSpecialization("no usable specialization point within the search budget")
    root_bound = min(min(len(rs) for rs in per) for _, per in scanned)
    info = {"regime": "specialized", "bound": bound}
    if root_bound == 0:
        return [], True, info

    def count(entry):
        c = 1
        for rs in entry[1]:
            c *= len(rs)
        return c

    spec, per = min(scanned, key=count)
    lifter = _lift_candidates
    if count((spec, per)) > _COMBINE_LIMIT:
        # recombining one root per corner is too costly: recover roots from
        # the corner with the fewest residue roots, preferring large corners
        spec, per = min(
            ((sp, [rs]) for sp, pr in scanned for rs in pr),
            key=lambda e: (len(e[1][0]), -e[1][0][0].K.degree * e[0].F.k),
        )
        if len(per[0]) > cfg.max_candidates:
            raise NoGoodSpecialization("too many lifting candidates at every scanned point")
        lifter = _lift_one_corner_entry
    info["tau"] = (spec.F.q, spec.tau)
    skip = {(sp.F.q, sp.tau) for sp, _ in scanned}
    points = _good_points(S, g, scalars, cfg, skip)
    state = {"bound": root_bound, "used": 0}

    def tighten(have):
        # more specialization points can only lower the proven bound; they
        # are cheap next to a lifting round, so spend them first
        while state["bound"] > have and state["used"] < cfg.certify_budget:
            nxt = next(points, None)
            if nxt is None:
                break
            state["used"] += 1
            spec2, gtau2 = nxt
            b = min(
                _roots_in_corner(gtau2, _CornerField(spec2.A, spec2.F, e), rng, count_only=True)
                for e in _idempotents(spec2.A, spec2.F)
            )
            state["bound"] = min(state["bound"], b)
        return state["bound"]

    verified = lifter(g, S, spec, per, bound, K, root_bound, tighten)
    roots = [pres.from_tower(r) if pres is not None else r for r in verified]
    root_bound = tighten(len(roots))
    complete = len(roots) >= root_bound
    info["root_bound"] = root_bound
    return roots, complete, info


class _FqField:
    def __init__(self, F):
        self.F = F
        self.zero = _Fq(F, 0)
        self.one = _Fq(F, 1)
        self.characteristic = F.p

    def from_int(self, c):
        return _Fq(self.F, self.F.from_int(c))


class _Fq:
    __slots__ = ("F", "v")

    def __init__(self, F, v):
        self.F, self.v = F, v

    def __bool__(self):
        return bool(self.v)

    def __eq__(self, o):
        return isinstance(o, _Fq) and o.v == self.v

    def __hash__(self):
        return hash(self.v)

    def __add__(self, o):
        return _Fq(self.F, self.F.add(self.v, o.v))

    def __sub__(self, o):
        return _Fq(self.F, self.F.sub(self.v, o.v))

    def __neg__(self):
        return _Fq(self.F, self.F.neg(self.v))

    def __mul__(self, o):
        return _Fq(self.F, self.F.mul(self.v, o.v))

    def __truediv__(self, o):
        return _Fq(self.F, self.F.mul(self.v, self.F.inv(o.v)))


_CHECK_TERMS = 10
# above this many corner-root combinations, roots come from a single corner
_COMBINE_LIMIT = 64
_MAX_UNKNOWNS = 400


def _lift_candidates(g, S, spec, per, bound, K, target, tighten=None):
    """Hensel-lift the residue roots and keep the exactly verified roots.

    A corner of the specialized algebra is a field F_q[z]/(h). Its generator
    is lifted once into the series algebra (the lifted idempotent acting as
    the identity); each residue root is lifted in the small ring
    F_q[[e]][z]/(h) and mapped back through the powers of that generator.
    A root of g in L is the sum of one lifted root per corner, so only the
    recombination runs over the product of choices, and it costs additions
    and rational reconstruction. Degree bounds grow geometrically up to
    `bound`; stops once `target` roots (a proven upper bound, which
    `tighten(found)` may lower between rounds) are in hand."""
    import itertools

    F, tau = spec.F, spec.tau
    g_res = [spec.scalar(c) for c in g.coeffs]
    corners = []
    for rs in per:
        Kc = rs[0].K
        inv_dg = [_ce_eval(Kc, _res_derivative(F, g_res), c).inverse().v for c in rs]
        corners.append((Kc, [c.v for c in rs], inv_dg))
    pending = set(itertools.product(*[range(len(rs)) for rs in per]))
    schedule = sorted({min(b, bound) for b in (4, 16)} | {bound})
    out = []
    for level, b in enumerate(schedule):
        if level and tighten is not None:
            target = tighten(len(out))
            if len(out) >= target:
                return out
        # terms beyond the 2b + 2 that Padé needs make false fits unlikely
        d = 2 * b + 2 + _CHECK_TERMS
        SR = _SeriesRing(F, d)
        fdata = [[tuple(_expand(F, c, tau, d) for c in vec) for vec in lvl.f] for lvl in S.levels]
        SA = FlatAlgebra(SR, S.degrees, fdata)
        gser = [_expand(F, c, tau, d) for c in g.coeffs]
        lift = lambda v: tuple(SR.const(x) for x in v)
        lifted = []
        for Kc, roots0, winv in corners:
            E = _lift_idempotent(SA, lift(Kc.e), d)
            zpow = _lift_corner_powers(SA, SR, F, Kc, E, d)
            RA = FlatAlgebra(SR, [Kc.degree], [[(SR.const(c),) for c in Kc.h]])
            gR = [RA.scale(c, RA.one()) for c in gser]
            dgR = _derivative_coeffs(RA, gR, F)
            corner = []
            for r0, w0 in zip(roots0, winv):
                r = _newton(RA, gR, dgR, lift(r0), lift(w0), d)
                acc = SA.zero()
                for c, zp in zip(r, zpow):
                    acc = SA.add(acc, SA.scale(c, zp))
                corner.append(acc)
            lifted.append(corner)
        for combo in sorted(pending):
            r = lifted[0][combo[0]]
            for i in range(1, len(combo)):
                r = SA.add(r, lifted[i][combo[i]])
            coords = []
            for series in r:
                c = _rat_from_series(F, K, series, d, b, tau)
                if c is None:
                    break
                coords.append(c)
            if len(coords) < len(r):
                continue
            cand = S.element(coords)
            if not g(cand):
                out.append(cand)
                pending.discard(combo)
                if len(out) >= target:
                    return out
        if not pending:
            break
    return out


def _lift_one_corner_entry(g, S, spec, per, bound, K, target, tighten=None):
    return _lift_one_corner(g, S, spec, per[0], bound, K, target, tighten)


def _lift_one_corner(g, S, spec, corner_roots, bound, K, target, tighten=None):
    """Like _lift_candidates, but lifts the roots of a single corner only.

    L is a field, so a root of g in L is already determined by its image in
    one corner. Its coordinates x_j = -P_j/Q are recovered from the lifted
    image rho by one linear system over F_p: sum P_j(t) E b_j + Q(t) rho = 0
    to the working precision, with deg P_j, deg Q <= b. This avoids the
    product over the roots of all corners."""
    F, tau = spec.F, spec.tau
    Kc = corner_roots[0].K
    g_res = [spec.scalar(c) for c in g.coeffs]
    roots0 = [c.v for c in corner_roots]
    winv = [_ce_eval(Kc, _res_derivative(F, g_res), c).inverse().v for c in corner_roots]
    n, rank = S.n, Kc.degree * F.k
    rows = _corner_coordinates(spec.A, F, Kc)
    pending = list(range(len(roots0)))
    # beyond this many unknowns the elimination costs more than the search
    # is worth; roots of higher degree are then reported as not found
    cap = max(4, _MAX_UNKNOWNS // (n + 1) - 1)
    schedule = sorted({min(b, bound, cap) for b in (4, 16, bound)})
    out = []
    for level, b in enumerate(schedule):
        if level and tighten is not None:
            target = tighten(len(out))
            if len(out) >= target:
                return out
        unknowns = (n + 1) * (b + 1)
        d = -(-unknowns // rank) + _CHECK_TERMS
        SR = _SeriesRing(F, d)
        fdata = [[tuple(_expand(F, c, tau, d) for c in vec) for vec in lvl.f] for lvl in S.levels]
        SA = FlatAlgebra(SR, S.degrees, fdata)
        lift = lambda v: tuple(SR.const(x) for x in v)
        E = _lift_idempotent(SA, lift(Kc.e), d)
        zpow = _lift_corner_powers(SA, SR, F, Kc, E, d)
        RA = FlatAlgebra(SR, [Kc.degree], [[(SR.const(c),) for c in Kc.h]])
        gR = [RA.scale(c, RA.one()) for c in (_expand(F, c, tau, d) for c in g.coeffs)]
        dgR = _derivative_coeffs(RA, gR, F)
        basis_cols = []
        for j in range(n):
            unit = tuple(SR.one if i == j else SR.zero for i in range(n))
            basis_cols.extend(_t_multiples(F, tau, _pick(SA.mul(E, unit), rows), b))
        for i in list(pending):
            r = _newton(RA, gR, dgR, lift(roots0[i]), lift(winv[i]), d)
            rho = SA.zero()
            for c, zp in zip(r, zpow):
                rho = SA.add(rho, SA.scale(c, zp))
            M = _digit_matrix(F, basis_cols + _t_multiples(F, tau, _pick(rho, rows), b))
            for v in _nullspace_mod_p(M, F.p)[:3]:
                cand = _corner_candidate(S, K, v, n, b)
                if cand is not None and not g(cand):
                    out.append(cand)
                    pending.remove(i)
                    break
            if len(out) >= target:
                return out
        if not pending:
            break
    return out


def _corner_coordinates(A, F, Kc):
    """m coordinates on which the corner e*A projects injectively.

    An invertible minor at e = 0 stays invertible over the series ring, so
    these coordinates determine every element of the lifted corner."""
    n = A.n
    cols = [A.mul(Kc.e, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]
    chosen = []
    for i in range(n):
        trial = chosen + [i]
        _, piv = _gf_rref(F, [[c[r] for c in cols] for r in trial], n)
        if len(piv) == len(trial):
            chosen = trial
            if len(chosen) == Kc.degree:
                break
    return chosen


def _pick(x, rows):
    return [x[i] for i in rows]


def _t_multiples(F, tau, x, b):
    """t^i * x for i = 0..b, t = tau + e, each flattened to a list over F_q."""
    cur = [list(s) for s in x]
    out = []
    for i in range(b + 1):
        out.append([c for s in cur for c in s])
        if i < b:
            # multiply every series by tau + e
            cur = [[F.add(F.mul(tau, s[k]), s[k - 1] if k else 0) for k in range(len(s))] for s in cur]
    return out


def _digit_matrix(F, cols):
    """Columns over F_q as an integer matrix over F_p (k digit rows per entry)."""
    if F.k == 1:
        return np.array(cols, dtype=np.int64).T
    dig = [F._digits(a) for a in range(F.q)]
    return np.array([[x for c in col for x in dig[c]] for col in cols], dtype=np.int64).T


def _nullspace_mod_p(M, p):
    """A basis of {x : M x = 0 mod p}, one vector per free column."""
    M = M % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if not len(nz):
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if len(hit):
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-M[i, f]) % p
        basis.append(x)
    return basis


def _corner_candidate(S, K, v, n, b):
    """x with x_j = -P_j/Q from a kernel vector (P_0..P_(n-1), Q), or None."""
    v = [int(c) for c in v]
    Q = MultiPoly(K.p, 1, {(i,): c for i, c in enumerate(v[n * (b + 1):]) if c})
    if not Q.terms:
        return None
    coords = []
    for j in range(n):
        P = MultiPoly(K.p, 1, {(i,): c for i, c in enumerate(v[j * (b + 1):(j + 1) * (b + 1)]) if c})
        coords.append(-ratfunc_normalize(P, Q, K) if P.terms else K.zero)
    return S.element(coords)


def _res_derivative(F, coeffs):
    return [F.mul(F.from_int(i), c) for i, c in enumerate(coeffs)][1:] or [0]


def _ce_eval(Kc, coeffs, x):
    acc = Kc.embed(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * x + Kc.embed(c)
    return acc


def _newton(Alg, coefs, dcoefs, r, w, d):
    """Quadratic Newton iteration for a root of sum coefs[i] x^i, with w an
    approximate inverse of the derivative, to precision d."""
    two = Alg.scale(Alg.R.const(Alg.R.F.from_int(2)), Alg.one())
    prec = 1
    while prec < d:
        r = Alg.sub(r, Alg.mul(_eval_poly_alg(Alg, coefs, r), w))
        prec *= 2
        if prec < d:
            w = Alg.mul(w, Alg.sub(two, Alg.mul(_eval_poly_alg(Alg, dcoefs, r), w)))
    return r


def _lift_corner_powers(SA, SR, F, Kc, E, d):
    """E, Z, .., Z^(m-1) for the lift Z in E*SA of the corner generator."""
    m = Kc.degree
    if m == 1:
        return [E]
    lift = lambda v: tuple(SR.const(x) for x in v)
    gen = _CE(Kc, (0, 1) + (0,) * (m - 2))
    w0 = _ce_eval(Kc, _res_derivative(F, Kc.h), gen).inverse().alg()
    h = [SA.scale(SR.const(c), SA.one()) for c in Kc.h]
    # w stays inside the corner, so the constant term of h only acts there
    Z = _newton(SA, h, _derivative_coeffs(SA, h, F), SA.mul(E, lift(Kc.powers[1])), SA.mul(E, lift(w0)), d)
    out = [E, Z]
    while len(out) < m:
        out.append(SA.mul(out[-1], Z))
    return out


def _lift_idempotent(SA, e, d):
    """The idempotent of SA congruent to e, by e <- 3e^2 - 2e^3."""
    R = SA.R
    three = SA.scale(R.const(R.F.from_int(3)), SA.one())
    two = SA.scale(R.const(R.F.from_int(2)), SA.one())
    prec = 1
    while prec < d:
        e2 = SA.mul(e, e)
        e = SA.mul(e2, SA.sub(three, SA.mul(two, e)))
        prec *= 2
    return e


def _const_series(x, d):
    return (x,) + (0,) * (d - 1)


def _expand(F, c, tau, d):
    num = _ptaylor(F, c.num.to_dense() if c.num.terms else [], tau, d)
    den = _ptaylor(F, c.den.to_dense(), tau, d)
    return _series_div(F, num, den, d)


# ---------------------------------------------------------------------------

def pth_root_in(t: ExtensionTower, y, e: int):
    """The x in L with x^(p^e) = y, or None."""
    if e == 0:
        return y
    from .tower import power_map_matrix

    C = power_map_matrix(t, e)
    cols = [C.column(j) for j in range(t.n)] + [[-c for c in y.coords]]
    ext = Matrix.from_columns(t.base, cols)
    keep = Subspace.zero(t.base, t.n)
    sol = semilinear_kernel(ext, e, keep)
    for v in sol.basis:
        if v[-1]:
            inv = t.base.one / v[-1]
            x = t.element(tuple(c * inv for c in v[:-1]))
            if x ** (t.characteristic ** e) == y:
                return x
    return None


def certify_rootless(f: UniPoly, t: ExtensionTower, cfg: LiftConfig | None = None, points: int = 8) -> bool:
    """True when f (monic, coefficients in L) provably has no root in L.

    A root r gives the root r^(p^m) of the polynomial with coefficients
    raised to p^m, and that polynomial lives over the separable part of L.
    At a good specialization point every residue field of that part then
    holds a root, so one residue field without a root is a certificate.
    False means undecided, not that a root exists."""
    cfg = cfg or LiftConfig()
    K = t.base
    if not isinstance(K, RationalFunctionField) or K.n != 1:
        return False
    f = f.monic()
    q = t.characteristic ** exponent_bound(t.characteristic, t.n)
    M, pres = _separable_part_tower(t)
    coeffs = [t.coerce(c) ** q for c in f.coeffs]
    if pres is not None:
        coeffs = [pres.to_tower(c) for c in coeffs]
    S = pres.tower if pres is not None else t
    scalars = [c for lvl in S.levels for vec in lvl.f for c in vec]
    scalars += [c for x in coeffs for c in x.coords]
    tried = 0
    for F, tau in _taus(K.p, cfg.max_k):
        if tried >= points:
            break
        if not _denominators_ok(F, tau, scalars):
            continue
        spec = _Specialized(S, F, tau)
        if not _trace_form_unit(spec.A, F):
            continue
        tried += 1
        A = spec.A
        images = [spec.element(x) for x in coeffs]
        for e in _idempotents(A, F):
            Kc = _CornerField(A, F, e)
            cs = [_CE(Kc, tuple(_gf_solve(F, Kc.powers, list(A.mul(e, a))))) for a in images]
            h = UniPoly(Kc, cs)
            x = UniPoly.x(Kc)
            if _gcd(h, _powmod(x, Kc.size, h) - x).degree <= 0:
                return True
    return False


def roots_in_field(f: UniPoly, t: ExtensionTower, cfg: LiftConfig | None = None) -> RootResult:
    """All roots of f (coefficients in K) that lie in L, each verified."""
    cfg = cfg or LiftConfig()
    if not f:
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return RootResult([], True, "constant")
    f = f.monic()
    fsep, e = separable_presentation(f)
    ys, complete, info = _separable_roots(fsep, t, cfg)
    out = []
    for y in ys:
        x = pth_root_in(t, y, e)
        if x is not None and not f(x):
            out.append(x)
    return RootResult(out, complete, info["regime"], info.get("bound"), info.get("tau"))
