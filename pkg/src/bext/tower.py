"""Finite extensions L/K as towers of simple quotient steps.

Elements are stored as flat coordinate tuples over the base field K on the
monomial basis g_1^e_1 ... g_k^e_k, with the lowest generator varying
fastest: index = e_1 + d_1*(e_2 + d_2*(e_3 + ...)). A prefix-tower element
therefore embeds by zero padding.
"""

from __future__ import annotations

import itertools
import math

from .basefield import RationalFunctionField, UniPoly, poly_xgcd, separable_presentation
from .exlinalg import Echelon, Matrix, Subspace, as_sparse, kernel_of_rows, semilinear_kernel


class ReducibleModulus(ArithmeticError):
    """An inversion met a zero divisor: the named step's modulus factors."""

    def __init__(self, step, factor):
        super().__init__(f"minimal polynomial of step {step!r} has the proper factor {factor!r}")
        self.step = step
        self.factor = factor


class DivisionByZero(ZeroDivisionError):
    pass


class NotABasis(ValueError):
    pass


class NotFinite(ValueError):
    pass


class UnsupportedAmbient(ValueError):
    pass


class ExtensionTower:
    """L = K[g_1..g_k]/(f_1, .., f_k); also usable as a coefficient field."""

    def __init__(self, base, parent=None, name=None, minpoly=None):
        self.base = base
        self.parent = parent
        self.name = name
        if name is None:
            # the trivial tower L = K
            self.d = 1
            self.m = 1
            self.n = 1
            self.names = ()
            self.degrees = ()
            self.f = None
        else:
            pre = parent.n if parent is not None else 1
            f = minpoly
            if f.degree < 1:
                raise ValueError("minimal polynomial must have degree >= 1")
            if not (f.lc() == f.field.one):
                raise ValueError("minimal polynomial must be monic")
            self.d = f.degree
            self.m = pre
            self.n = pre * self.d
            self.names = (parent.names if parent is not None else ()) + (name,)
            self.degrees = (parent.degrees if parent is not None else ()) + (self.d,)
            if len(set(self.names)) != len(self.names):
                raise ValueError(f"generator name {name!r} already used")
            self.f = [self._lower_coords(c) for c in f.coeffs]
        self.minpoly = minpoly
        self._zero = None
        self._one = None
        self._mulcache = {}
        self._basis_cache = None

    # -- construction ------------------------------------------------------
    @classmethod
    def over(cls, base):
        return cls(base)

    def extend(self, name: str, f: UniPoly) -> "ExtensionTower":
        parent = self if self.name is not None else None
        return ExtensionTower(self.base, parent, name, f)

    @property
    def levels(self):
        out = []
        t = self if self.name is not None else None
        while t is not None:
            out.append(t)
            t = t.parent
        return out[::-1]

    def prefix(self, k: int) -> "ExtensionTower":
        """Tower of the first k steps (k = 0 gives the trivial tower)."""
        if k == 0:
            return ExtensionTower(self.base)
        return self.levels[k - 1]

    def _lower_coords(self, c):
        """Coordinates of a coefficient living one level down."""
        if self.parent is None:
            if isinstance(c, TowerElement) and c.tower.name is None and c.tower.base is self.base:
                return (c.coords[0],)
            return (self.base(c),)
        return self.parent.coerce(c).coords

    # -- field protocol ----------------------------------------------------
    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def is_finite(self):
        return getattr(self.base, "is_finite", False)

    def order(self):
        if not self.is_finite:
            return None
        return self.base.order() ** self.n

    @property
    def zero(self):
        if self._zero is None:
            self._zero = TowerElement(self, (self.base.zero,) * self.n)
        return self._zero

    @property
    def one(self):
        if self._one is None:
            self._one = TowerElement(self, (self.base.one,) + (self.base.zero,) * (self.n - 1))
        return self._one

    def from_int(self, c: int):
        return self.scalar(self.base.from_int(c))

    def scalar(self, a):
        return TowerElement(self, (a,) + (self.base.zero,) * (self.n - 1))

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return TowerElement(self, coords)

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, TowerElement):
            if x.tower is self:
                return x
            if x.tower.base is self.base and x.tower.n <= self.n and self._is_prefix(x.tower):
                return TowerElement(self, x.coords + (self.base.zero,) * (self.n - x.tower.n))
            base = self.base
            if isinstance(base, ExtensionTower) and (x.tower is base or base._is_prefix(x.tower)):
                return self.scalar(base.coerce(x))
            if isinstance(base, SubfieldScalars) and x.tower is base.L:
                return self.scalar(x)
            raise TypeError("element belongs to an unrelated tower")
        if isinstance(x, int):
            return self.from_int(x)
        return self.scalar(self.base(x))

    def _is_prefix(self, other):
        if other.name is None:
            return True
        t = self
        while t is not None:
            if t is other or (t.names == other.names and t.minpoly_key() == other.minpoly_key()):
                return True
            t = t.parent
        return False

    def minpoly_key(self):
        return tuple(tuple(c) for c in self.f) if self.f is not None else ()

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, ExtensionTower)
            and self.base == other.base
            and self.names == other.names
            and self._keys() == other._keys()
        )

    def _keys(self):
        return tuple(t.minpoly_key() for t in self.levels)

    def __hash__(self):
        return hash((self.names, self.n))

    def __repr__(self):
        if self.name is None:
            return f"Tower({self.base!r})"
        steps = ", ".join(f"{t.name}: {t.minpoly!r}" for t in self.levels)
        return f"Tower({self.base!r}; {steps})"

    # -- generators and bases ----------------------------------------------
    def gen(self, name: str):
        k = self.names.index(name)
        if self.degrees[k] == 1:
            lvl = self.levels[k]
            return -self.coerce(lvl._lower(lvl.f[0]))
        stride = 1
        for d in self.degrees[:k]:
            stride *= d
        coords = [self.base.zero] * self.n
        coords[stride] = self.base.one
        return TowerElement(self, tuple(coords))

    def gens(self):
        return [self.gen(nm) for nm in self.names]

    def exponents(self, j: int):
        out = []
        for d in self.degrees:
            out.append(j % d)
            j //= d
        return tuple(out)

    def index_of(self, exps) -> int:
        j = 0
        stride = 1
        for e, d in zip(exps, self.degrees):
            j += e * stride
            stride *= d
        return j

    def basis_element(self, j: int):
        coords = [self.base.zero] * self.n
        coords[j] = self.base.one
        return TowerElement(self, tuple(coords))

    def basis(self):
        if self._basis_cache is None:
            self._basis_cache = [self.basis_element(j) for j in range(self.n)]
        return self._basis_cache

    def basis_names(self):
        out = []
        for j in range(self.n):
            parts = []
            for nm, e in zip(self.names, self.exponents(j)):
                if e == 1:
                    parts.append(nm)
                elif e > 1:
                    parts.append(f"{nm}^{e}")
            out.append("*".join(parts) or "1")
        return out

    # -- flat arithmetic -----------------------------------------------------
    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _mul(self, a, b):
        if self.name is None:
            return (a[0] * b[0],)
        d, m = self.d, self.m
        f = self.f
        if m == 1:
            zero = self.base.zero
            prod = [zero] * (2 * d - 1)
            bnz = [(j, y) for j, y in enumerate(b) if y]
            if not bnz:
                return (zero,) * d
            for i, x in enumerate(a):
                if x:
                    for j, y in bnz:
                        prod[i + j] = prod[i + j] + x * y
            for k in range(2 * d - 2, d - 1, -1):
                c = prod[k]
                if c:
                    base = k - d
                    for i in range(d):
                        fi = f[i][0]
                        if fi:
                            prod[base + i] = prod[base + i] - c * fi
            return tuple(prod[:d])
        P = self.parent
        zero = P.zero.coords
        A = [a[i * m:(i + 1) * m] for i in range(d)]
        B = [b[i * m:(i + 1) * m] for i in range(d)]
        bnz = [(j, y) for j, y in enumerate(B) if any(y)]
        prod = [zero] * (2 * d - 1)
        for i, x in enumerate(A):
            if any(x):
                for j, y in bnz:
                    prod[i + j] = P._add(prod[i + j], P._mul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if any(c):
                base = k - d
                for i in range(d):
                    fi = f[i]
                    if any(fi):
                        prod[base + i] = P._sub(prod[base + i], P._mul(c, fi))
        return tuple(x for s in prod[:d] for x in s)

    def _scale(self, c, a):
        return tuple(c * x for x in a)

    def _lower(self, coords_slice):
        """Wrap a level-(k-1) coordinate slice as an element of that field."""
        if self.parent is None:
            return coords_slice[0]
        return TowerElement(self.parent, tuple(coords_slice))

    def _lower_field(self):
        return self.parent if self.parent is not None else self.base

    def as_poly(self, a) -> UniPoly:
        """a as a polynomial in the top generator over the previous level."""
        m = self.m
        F = self._lower_field()
        return UniPoly(F, [self._lower(a[i * m:(i + 1) * m]) for i in range(self.d)])

    def _from_poly(self, g: UniPoly):
        m = self.m
        F = self._lower_field()
        zero = F.zero
        coeffs = list(g.coeffs) + [zero] * (self.d - len(g.coeffs))
        out = []
        for c in coeffs[: self.d]:
            if self.parent is None:
                out.append(c)
            else:
                out.extend(self.parent.coerce(c).coords)
        return tuple(out)

    def _inv(self, a):
        if not any(a):
            raise DivisionByZero("inverse of zero")
        if self.name is None:
            return (self.base.one / a[0],)
        g = self.as_poly(a)
        if g.degree == 0:
            c = g.coeffs[0]
            inv = (self._lower_field().one / c)
            return self._from_poly(UniPoly(self._lower_field(), [inv]))
        f = self.minpoly_over_lower()
        d, s, _ = poly_xgcd(g, f)
        if d.degree > 0:
            raise ReducibleModulus(self.name, d)
        return self._from_poly(s % f)

    def minpoly_over_lower(self) -> UniPoly:
        F = self._lower_field()
        return UniPoly(F, [self._lower(c) for c in self.f])

    # -- linear maps ---------------------------------------------------------
    def regular_rep(self, a) -> Matrix:
        """Matrix (acting on coordinate columns) of multiplication by a."""
        a = self.coerce(a)
        cached = self._mulcache.get(a.coords)
        if cached is not None:
            return cached
        cols = [self._mul(a.coords, b.coords) for b in self.basis()]
        m = Matrix.from_columns(self.base, cols)
        if len(self._mulcache) < 4096:
            self._mulcache[a.coords] = m
        return m


class TowerElement:
    __slots__ = ("tower", "coords", "_hash")

    def __init__(self, tower, coords):
        self.tower = tower
        self.coords = coords
        self._hash = None

    def _c(self, other):
        if isinstance(other, TowerElement) and other.tower is self.tower:
            return other
        try:
            return self.tower.coerce(other)
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return False
        return self.coords == o.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __add__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return TowerElement(self.tower, self.tower._add(self.coords, o.coords))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, tuple(-x for x in self.coords))

    def __sub__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return TowerElement(self.tower, self.tower._sub(self.coords, o.coords))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        if o.is_scalar():
            return TowerElement(self.tower, self.tower._scale(o.coords[0], self.coords))
        if self.is_scalar():
            return TowerElement(self.tower, self.tower._scale(self.coords[0], o.coords))
        return TowerElement(self.tower, self.tower._mul(self.coords, o.coords))

    __rmul__ = __mul__

    def is_scalar(self):
        return not any(self.coords[1:])

    def inverse(self):
        return TowerElement(self.tower, self.tower._inv(self.coords))

    def __truediv__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.tower.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self):
        names = self.tower.basis_names()
        parts = []
        for c, nm in zip(self.coords, names):
            if not c:
                continue
            cs = repr(c)
            if nm == "1":
                parts.append(cs)
            elif c == self.tower.base.one:
                parts.append(nm)
            else:
                parts.append(f"({cs})*{nm}")
        return " + ".join(parts) or "0"


def elem_invert(a: TowerElement) -> TowerElement:
    return a.inverse()


def regular_rep(a: TowerElement) -> Matrix:
    return a.tower.regular_rep(a)


# ---------------------------------------------------------------------------
# Subfields

class Subfield:
    """An intermediate field K <= M <= L held as an echelonized K-subspace."""

    def __init__(self, tower: ExtensionTower, space: Subspace, certified: bool = False):
        self.tower = tower
        self.space = space
        self.certified = certified
        self._gens = None

    @property
    def dim(self):
        return self.space.dim

    @property
    def index(self):
        """[L : M]."""
        return self.tower.n // self.dim

    def contains(self, a) -> bool:
        a = self.tower.coerce(a)
        return self.space.contains(a.coords)

    def __contains__(self, a):
        return self.contains(a)

    def basis(self):
        t = self.tower
        zero = t.base.zero
        return [TowerElement(t, tuple(r.get(j, zero) for j in range(t.n))) for r in self.space.rows]

    def is_subfield_of(self, other: "Subfield") -> bool:
        return self.space.is_subspace_of(other.space)

    def __le__(self, other):
        return self.is_subfield_of(other)

    def __eq__(self, other):
        return isinstance(other, Subfield) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"Subfield(dim={self.dim} of {self.tower.n})"

    def is_base(self):
        return self.dim == 1

    def is_whole(self):
        return self.dim == self.tower.n

    def certify(self):
        basis = self.basis()
        one = self.tower.one
        if not self.space.contains(one.coords):
            raise ValueError("subspace does not contain 1")
        if self.tower.n % self.dim:
            raise ValueError("subspace dimension does not divide [L:K]")
        for i, a in enumerate(basis):
            for b in basis[i:]:
                if not self.space.contains((a * b).coords):
                    raise ValueError("subspace is not closed under multiplication")
        self.certified = True
        return self

    def generators(self):
        """A short generating set chosen greedily from the echelon basis."""
        if self._gens is None:
            gens = []
            cur = base_subfield(self.tower)
            for b in self.basis():
                if cur.dim == self.dim:
                    break
                if not cur.contains(b):
                    gens.append(b)
                    cur = subfield_generated(self.tower, gens, certify=False)
            self._gens = gens
        return list(self._gens)

    def regular_rep(self, a) -> Matrix:
        """Multiplication by a in M on M's own echelon basis."""
        a = self.tower.coerce(a)
        cols = [self.space.coordinates((a * b).coords) for b in self.basis()]
        return Matrix.from_columns(self.tower.base, cols)

    def matrices(self):
        return [self.tower.regular_rep(b) for b in self.basis()]


def base_subfield(t: ExtensionTower) -> Subfield:
    return Subfield(t, Subspace.span(t.base, t.n, [t.one.coords]), certified=True)


def whole_field(t: ExtensionTower) -> Subfield:
    return Subfield(t, Subspace.full(t.base, t.n), certified=True)


def subfield_from_space(t: ExtensionTower, space: Subspace, certify: bool = True) -> Subfield:
    sf = Subfield(t, space)
    return sf.certify() if certify else sf


def subfield_generated(t: ExtensionTower, gens, certify: bool = True) -> Subfield:
    """Smallest subfield containing K and gens: close span{1} under
    multiplication by every generator."""
    gens = [t.coerce(g) for g in gens]
    ech = Echelon(t.n, t.base)
    ech.add(t.one.coords)
    frontier = [t.one]
    gens = [g for g in gens if not g.is_scalar()]
    while frontier and ech.rank < t.n:
        nxt = []
        for v in frontier:
            for g in gens:
                w = v * g
                if ech.add(w.coords):
                    nxt.append(w)
        frontier = nxt
    sf = Subfield(t, ech.subspace())
    return sf.certify() if certify else sf


def compositum(M: Subfield, N: Subfield) -> Subfield:
    if M.tower is not N.tower:
        raise ValueError("subfields of different towers")
    if M.is_subfield_of(N):
        return N
    if N.is_subfield_of(M):
        return M
    return subfield_generated(M.tower, M.generators() + N.generators())


def intersection(M: Subfield, N: Subfield) -> Subfield:
    return Subfield(M.tower, M.space.meet(N.space), certified=True)


def is_linearly_disjoint(M: Subfield, N: Subfield) -> bool:
    return compositum(M, N).dim == M.dim * N.dim


# ---------------------------------------------------------------------------
# Minimal polynomials

def _reduce_tracked(ech: Echelon, v):
    v = as_sparse(v)
    combo = {}
    for c in [k for k in v if k in ech.rows]:
        x = v.get(c)
        if x:
            from .exlinalg import _axpy

            _axpy(v, x, ech.rows[c])
            _axpy(combo, x, ech.combos[c])
    return v, combo


def minimal_polynomial(a, over: Subfield | None = None) -> UniPoly:
    """Monic minimal polynomial of a over `over` (K when omitted).

    Over K the coefficients are base scalars; otherwise they are tower
    elements lying in `over`."""
    t = a.tower
    if over is None:
        over = base_subfield(t)
    mbasis = [t.one] if over.dim == 1 else over.basis()
    ech = Echelon(t.n, t.base, track=True)
    labels = []
    power = t.one
    k = 0
    while True:
        if k > 0:
            res, combo = _reduce_tracked(ech, power.coords)
            if not res:
                # a^k = -sum combo * (mb a^i), so the x^i coefficient is
                # sum combo * mb
                coeffs = [t.zero] * k
                for idx, c in combo.items():
                    i, mb = labels[idx]
                    coeffs[i] = coeffs[i] + mb * c
                coeffs.append(t.one)
                if over.dim == 1:
                    return UniPoly(t.base, [c.coords[0] for c in coeffs])
                return UniPoly(t, coeffs)
        for mb in mbasis:
            labels.append((k, mb))
            ech.add((mb * power).coords)
        power = power * a
        k += 1
        if k > t.n + 1:
            raise ArithmeticError("no linear dependence found")


def is_pi_element(a) -> bool:
    f = minimal_polynomial(a)
    fsep, _ = separable_presentation(f)
    return fsep.degree == 1


def is_sep_element(a) -> bool:
    f = minimal_polynomial(a)
    _, n = separable_presentation(f)
    return n == 0


def charpoly(m: Matrix) -> UniPoly:
    """Characteristic polynomial by the Faddeev-LeVerrier-free route:
    Hessenberg-free interpolation is avoided; uses the Berkowitz recursion."""
    F = m.field
    n = m.rows
    A = m.entries
    # Berkowitz: build vectors of coefficients
    vect = [F.one]
    for r in range(n):
        # leading principal submatrix of size r+1
        Rrow = A[r][:r]
        Ccol = [A[i][r] for i in range(r)]
        a_rr = A[r][r]
        # Toeplitz column: [1, -a_rr, -R C, -R A C, -R A^2 C, ...]
        col = [F.one, -a_rr]
        v = Ccol
        for _ in range(r):
            s = F.zero
            for x, y in zip(Rrow, v):
                if x and y:
                    s = s + x * y
            col.append(-s)
            v = [sum((A[i][j] * v[j] for j in range(r) if A[i][j] and v[j]), F.zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = F.zero
            for j in range(min(i + 1, len(vect))):
                c = col[i - j] if i - j < len(col) else F.zero
                if c and vect[j]:
                    s = s + c * vect[j]
            new.append(s)
        vect = new
    # vect holds coefficients of det(xI - A) from x^n downward
    return UniPoly(F, vect[::-1])


# ---------------------------------------------------------------------------
# Scalars drawn from a subfield, and towers over subfields

class SubfieldScalars:
    """The field M (a certified subfield of some tower L) used as a base;
    values are the tower elements of L that lie in M."""

    is_finite = False

    def __init__(self, M: Subfield):
        self.M = M
        self.L = M.tower
        self.zero = self.L.zero
        self.one = self.L.one

    @property
    def characteristic(self):
        return self.L.characteristic

    def from_int(self, c):
        return self.L.from_int(c)

    def __call__(self, x):
        x = self.L.coerce(x)
        return x

    def order(self):
        return None

    def __eq__(self, other):
        return isinstance(other, SubfieldScalars) and other.M == self.M and other.L is self.L

    def __hash__(self):
        return hash(self.M)

    def __repr__(self):
        return f"Scalars({self.M!r})"


class Presentation:
    """A tower T presenting base(gens), with translations to and from L."""

    def __init__(self, tower, source, base_field, gens, kbasis, ech, monos):
        self.tower = tower
        self.source = source
        self.base_subfield = base_field
        self.gens = gens
        self._kbasis = kbasis
        self._ech = ech
        self._monos = monos

    @property
    def subfield(self) -> Subfield:
        return Subfield(self.source, Subspace.span(self.source.base, self.source.n, [v.coords for v, _, _ in self._kbasis]), True)

    def to_tower(self, x):
        """Element of L (lying in the presented field) -> element of T."""
        x = self.source.coerce(x)
        res, combo = _reduce_tracked(self._ech, x.coords)
        if res:
            raise ValueError("element is not in the presented field")
        T = self.tower
        coords = [T.base.zero] * T.n
        for idx, c in combo.items():
            _, j, mb = self._kbasis[idx]
            if isinstance(T.base, SubfieldScalars):
                coords[j] = coords[j] - mb * c
            else:
                coords[j] = coords[j] - c
        return T.element(coords)

    def from_tower(self, y):
        y = self.tower.coerce(y)
        acc = self.source.zero
        for c, mono in zip(y.coords, self._monos):
            if c:
                acc = acc + mono * c
        return acc


def tower_over(t: ExtensionTower, base: Subfield, gens) -> Presentation:
    """Present base(gens) as a tower over base (K or a subfield M)."""
    use_k = base.dim == 1
    T = ExtensionTower(t.base if use_k else SubfieldScalars(base))
    mbasis = [t.one] if use_k else base.basis()
    monos = [t.one]
    adopted = []
    current = base
    for g in gens:
        g = t.coerce(g)
        if current.contains(g):
            continue
        f = minimal_polynomial(g, current)
        # express coefficients (elements of current) in the tower built so far
        pres = _presentation_of(t, T, mbasis, monos, base)
        lower = T if T.name is not None else None
        coeffs = []
        for c in f.coeffs:
            if use_k and current.dim == 1:
                coeffs.append(c)
            else:
                c = t.coerce(c)
                y = pres.to_tower(c)
                coeffs.append(y if lower is not None else y.coords[0])
        fld = lower if lower is not None else T.base
        name = t.names[t.gens().index(g)] if g in t.gens() else f"g{len(adopted) + 1}"
        if name in T.names:
            name = f"{name}_{len(adopted) + 1}"
        T = T.extend(name, UniPoly(fld, coeffs))
        monos = [m * g ** e for e in range(f.degree) for m in monos]
        adopted.append(g)
        current = subfield_generated(t, base.generators() + adopted, certify=False)
    return _presentation_of(t, T, mbasis, monos, base, adopted)


def _presentation_of(t, T, mbasis, monos, base, gens=None):
    kbasis = []
    ech = Echelon(t.n, t.base, track=True)
    for j, mono in enumerate(monos):
        for mb in mbasis:
            v = mb * mono
            kbasis.append((v, j, mb))
            if not ech.add(v.coords):
                raise NotABasis("presentation basis is dependent")
    return Presentation(T, t, base, gens or [], kbasis, ech, monos)


def rebase(t: ExtensionTower, M: Subfield) -> Presentation:
    """L presented over M by adjoining the original generators."""
    return tower_over(t, M, t.gens())


def present_subfield(t: ExtensionTower, M: Subfield) -> Presentation:
    """M presented as a tower over K."""
    return tower_over(t, base_subfield(t), M.generators())


# ---------------------------------------------------------------------------
# Frobenius-twisted membership: {a : a^(p^e) in keep}

def power_map_matrix(t: ExtensionTower, e: int) -> Matrix:
    q = t.characteristic ** e
    cols = [(b ** q).coords for b in t.basis()]
    return Matrix.from_columns(t.base, cols)


def pe_kernel(t: ExtensionTower, e: int, keep: Subfield, limit: int = 4096) -> Subfield:
    space = semilinear_kernel(power_map_matrix(t, e), e, keep.space, limit=limit)
    return Subfield(t, space).certify()


def exponent_bound(p: int, n: int) -> int:
    """Least m with p^m >= n."""
    m = 0
    while p ** m < n:
        m += 1
    return m


# ---------------------------------------------------------------------------
# Field-protocol additions for finite towers used as bases

def _finite_pe_basis(self, e):
    if not self.is_finite:
        from .exlinalg import UnsupportedBase

        raise UnsupportedBase("p^e-th roots are only computable over finite towers")
    return [()]


def _finite_pe_decompose(self, a, e):
    return {(): a}


def _finite_monomial(self, r):
    return self.one


def _finite_pe_root(self, a, e):
    if not self.is_finite:
        return None
    p = self.characteristic
    N = self.n * int(round(math.log(self.base.order(), p)))
    k = e
    while k % N:
        k += 1
    return a ** (p ** (k - e))


def _finite_frobenius(self, a, e):
    return a ** (self.characteristic ** e)


ExtensionTower.pe_basis = _finite_pe_basis
ExtensionTower.pe_decompose = _finite_pe_decompose
ExtensionTower.monomial = _finite_monomial
ExtensionTower.pe_root = _finite_pe_root
ExtensionTower.frobenius = _finite_frobenius


# ---------------------------------------------------------------------------
# Import from an ambient rational function field

class AmbientImport:
    """A tower for L = K(L_gens) inside F = F_p(vars), K generated by
    p^(e_i)-th powers of the variables."""

    def __init__(self, tower, ambient, kfield, exps, lgens_amb, images):
        self.tower = tower
        self.ambient = ambient
        self.kfield = kfield
        self.exps = exps
        self.lgens = lgens_amb
        self._images = images

    def to_ambient(self, x):
        x = self.tower.coerce(x)
        acc = self.ambient.zero
        for c, img in zip(x.coords, self._images):
            if c:
                acc = acc + self.k_to_ambient(c) * img
        return acc

    def k_to_ambient(self, c):
        sub = [self.ambient.gen(v) ** q for v, q in zip(self.ambient.vars, self.exps)]
        num = _subst(c.num, sub, self.ambient)
        den = _subst(c.den, sub, self.ambient)
        return num / den

    def from_ambient(self, a):
        """Element of F lying in L -> tower element."""
        vec = _ambient_coords(a, self.ambient, self.kfield, self.exps)
        target = {k: v for k, v in vec.items()}
        T = self.tower
        rows = []
        keys = sorted({k for img in self._img_vecs() for k in img} | set(target))
        cols = [[img.get(k, self.kfield.zero) for k in keys] for img in self._img_vecs()]
        from .exlinalg import solve

        m = Matrix.from_columns(self.kfield, cols)
        x = solve(m, [target.get(k, self.kfield.zero) for k in keys])
        if x is None:
            raise ValueError("element not in L")
        return T.element(x)

    def _img_vecs(self):
        if not hasattr(self, "_iv"):
            self._iv = [_ambient_coords(img, self.ambient, self.kfield, self.exps) for img in self._images]
        return self._iv


def _subst(poly, values, field):
    acc = field.zero
    for e, c in poly.terms.items():
        term = field.from_int(c)
        for v, k in zip(values, e):
            if k:
                term = term * v ** k
        acc = acc + term
    return acc


def _ambient_coords(a, ambient, kfield, exps):
    """Coordinates of a in F over K on the monomial basis x^r, r_i < q_i.

    a = num/den = num*den^(Q-1)/den^Q with Q = lcm of the q_i, so den^Q lies
    in K; the numerator splits by exponent residues."""
    Q = 1
    for q in exps:
        Q = Q * q // math.gcd(Q, q)
    den_q = a.den ** Q
    num = a.num * (a.den ** (Q - 1))
    parts: dict = {}
    for x, c in num.terms.items():
        r = tuple(k % q for k, q in zip(x, exps))
        parts.setdefault(r, {})[tuple((k - k % q) // q for k, q in zip(x, exps))] = c
    dq = {}
    for x, c in den_q.terms.items():
        dq[tuple(k // q for k, q in zip(x, exps))] = c
    from .basefield import MultiPoly, ratfunc_normalize

    dpoly = MultiPoly(kfield.p, kfield.n, dq)
    return {
        r: ratfunc_normalize(MultiPoly(kfield.p, kfield.n, t), dpoly, kfield)
        for r, t in parts.items()
    }


def from_ambient(p: int, vars, k_gens, l_gens, kvar_names=None) -> AmbientImport:
    """Build a tower for L = K(l_gens) where K = F_p(x_1^(q_1), ..) and
    the ambient field is F = F_p(x_1, ..)."""
    ambient = RationalFunctionField(p, vars)
    k_gens = [ambient(g) if not isinstance(g, str) else ambient.parse(g) for g in k_gens]
    l_gens = [ambient(g) if not isinstance(g, str) else ambient.parse(g) for g in l_gens]
    exps = [None] * ambient.n
    for g in k_gens:
        shape = None
        if g.den.is_one() and len(g.num.terms) == 1:
            (e, c), = g.num.terms.items()
            used = [i for i, k in enumerate(e) if k]
            if c == 1 and len(used) == 1 and _is_power_of(e[used[0]], p):
                shape = (used[0], e[used[0]])
        if shape is None:
            raise UnsupportedAmbient(f"K generator {g!r} is not a p-power of a variable")
        i, q = shape
        exps[i] = q if exps[i] is None else min(exps[i], q)
    for v, q in zip(ambient.vars, exps):
        if q is None:
            raise UnsupportedAmbient(f"no generator of K of the form {v}^(p^e); F/K is not finite")
    names = kvar_names or [f"{v}{q}" for v, q in zip(ambient.vars, exps)]
    kfield = RationalFunctionField(p, names)
    bound = 1
    for q in exps:
        bound *= q
    T = ExtensionTower(kfield)
    images = [ambient.one]
    keys: dict = {}

    def vec(a):
        out = {}
        for r, c in _ambient_coords(a, ambient, kfield, exps).items():
            if r not in keys:
                keys[r] = len(keys)
            out[keys[r]] = c
        return out

    used_names = set()
    for idx, g in enumerate(l_gens):
        # express powers of g against the current K-basis images * g^i
        ech = Echelon(bound, kfield, track=True)
        labels = []
        power = ambient.one
        deg = 0
        found = None
        while deg <= bound:
            if deg > 0:
                res, combo = _reduce_tracked(ech, vec(power))
                if not res:
                    found = (deg, combo)
                    break
            for j, img in enumerate(images):
                labels.append((deg, j))
                ech.add(vec(img * power))
            power = power * g
            deg += 1
        if found is None:
            raise NotFinite("dependence search exceeded the ambient degree bound")
        deg, combo = found
        if deg == 1:
            continue
        # g^deg = sum combo * images[j] * g^i ; build coefficients in T
        lower = T if T.name is not None else None
        fld = lower if lower is not None else kfield
        coeffs = [fld.zero] * deg
        for lid, c in combo.items():
            i, j = labels[lid]
            if lower is None:
                coeffs[i] = coeffs[i] + c
            else:
                coeffs[i] = coeffs[i] + lower.basis_element(j) * c
        coeffs.append(fld.one)
        name = _gen_name(l_gens[idx], ambient, idx, used_names)
        used_names.add(name)
        T = T.extend(name, UniPoly(fld, coeffs))
        images = [img * g ** e for e in range(deg) for img in images]
    return AmbientImport(T, ambient, kfield, exps, l_gens, images)


def _is_power_of(q, p):
    while q % p == 0:
        q //= p
    return q == 1


def _gen_name(g, ambient, idx, used):
    if g.den.is_one() and len(g.num.terms) == 1:
        (e, c), = g.num.terms.items()
        if c == 1 and sum(e) == 1:
            nm = ambient.vars[e.index(1)]
            if nm not in used:
                return nm
    nm = f"w{idx + 1}" if idx else "w"
    while nm in used:
        nm += "_"
    return nm


# ---------------------------------------------------------------------------
# maps between towers

def evaluate_at(x, images, target):
    """The normal form of x with its tower generators replaced by images
    (elements of target)."""
    t = x.tower
    images = [target.coerce(g) for g in images]
    acc = target.zero
    powers = []
    for g, d in zip(images, t.degrees):
        pw = [target.one]
        for _ in range(d - 1):
            pw.append(pw[-1] * g)
        powers.append(pw)
    for j, c in enumerate(x.coords):
        if not c:
            continue
        term = target.one
        for pw, e in zip(powers, t.exponents(j)):
            if e:
                term = term * pw[e]
        acc = acc + term * c
    return acc


def concatenate(t1: ExtensionTower, t2: ExtensionTower):
    """The tower t1 followed by the steps of t2 (the K-algebra L1 (x) L2).

    Clashing generator names of t2 get a numeric suffix. Returns the tower
    and the images of the generators of t1 and of t2 in it.
    """
    if t1.base != t2.base:
        raise ValueError("towers over different base fields")
    T = t1
    used = set(t1.names)
    new_gens = []
    for lvl in t2.levels:
        name = lvl.name
        k = 2
        while name in used:
            name = f"{lvl.name}{k}"
            k += 1
        used.add(name)
        lower_src = lvl.parent
        coeffs = []
        for c in lvl.f:
            if lower_src is None:
                coeffs.append(c[0])
            else:
                coeffs.append(evaluate_at(lower_src.element(c), new_gens, T))
        fld = T if T.name is not None else T.base
        if lower_src is None and T.name is not None:
            coeffs = [T.scalar(c) for c in coeffs]
        T = T.extend(name, UniPoly(fld, coeffs))
        new_gens = [T.coerce(g) for g in new_gens] + [T.gen(name)]
    g1 = [T.coerce(g) for g in t1.gens()]
    return T, g1, new_gens
