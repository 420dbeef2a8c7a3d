"""Subalgebras of E(L/K) = M_n(K): generation, centralizers, simplicity,
embeddings and conjugating units.

Matrices act on coordinate columns over the monomial basis of the tower, so
column j of a matrix holds the image of basis element j. Algebras are stored
as echelonized subspaces of the flattened (row-major) n*n matrix space.
"""

from __future__ import annotations

import itertools
import random

from .exlinalg import Echelon, Matrix, Subspace, kernel_of_rows, relations
from .tower import ExtensionTower, NotABasis, Subfield, subfield_from_space


class NotContainingL(ValueError):
    pass


class NoUnitFound(ArithmeticError):
    pass


def _flat(m: Matrix) -> dict:
    return m.sparse_flat()


def _unflat(K, n, v) -> Matrix:
    return Matrix.from_flat(K, n, v)


class MatAlgebra:
    """A unital subalgebra of E(L/K), with an optional generating set."""

    def __init__(self, tower: ExtensionTower, space: Subspace, gens=None, contains_L=None):
        self.tower = tower
        self.space = space
        self.n = tower.n
        self.gens = list(gens) if gens is not None else None
        self._contains_L = contains_L
        self._basis = None

    @property
    def field(self):
        return self.tower.base

    @property
    def dim(self):
        return self.space.dim

    @property
    def basis(self) -> list:
        if self._basis is None:
            K, n = self.field, self.n
            self._basis = [_unflat(K, n, r) for r in self.space.rows]
        return self._basis

    def generators(self) -> list:
        return self.gens if self.gens is not None else self.basis

    def contains(self, m: Matrix) -> bool:
        return self.space.contains(_flat(m))

    def __contains__(self, m):
        return self.contains(m)

    def coordinates(self, m: Matrix) -> list:
        return self.space.coordinates(_flat(m))

    @property
    def contains_L(self) -> bool:
        if self._contains_L is None:
            t = self.tower
            self._contains_L = all(self.contains(t.regular_rep(g)) for g in t.gens())
        return self._contains_L

    def is_subalgebra_of(self, other: "MatAlgebra") -> bool:
        return self.space.is_subspace_of(other.space)

    def __le__(self, other):
        return self.is_subalgebra_of(other)

    def __eq__(self, other):
        return isinstance(other, MatAlgebra) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"MatAlgebra(dim={self.dim} in M_{self.n})"

    def is_commutative(self) -> bool:
        gens = self.generators()
        return all((a * b) == (b * a) for i, a in enumerate(gens) for b in gens[i + 1:])


class AlgebraHom:
    """A K-algebra map given by the images of a source basis."""

    def __init__(self, source_basis: list, images: list, target: ExtensionTower):
        self.source_basis = list(source_basis)
        self.images = list(images)
        self.target = target
        K = target.base
        m = source_basis[0].rows if source_basis else 0
        self._source = Subspace.span(K, m * m, [_flat(b) for b in source_basis])
        self._ech = Echelon(m * m, K, track=True)
        for b in source_basis:
            self._ech.add(_flat(b))
        self.verified = False

    def __call__(self, x: Matrix) -> Matrix:
        """Image of a source element, by its coordinates in the source basis."""
        v = _flat(x)
        ech = self._ech
        combo: dict = {}
        for c in sorted(ech.rows):
            a = v.get(c)
            if a:
                from .exlinalg import _axpy

                _axpy(v, a, ech.rows[c])
                for i, y in ech.combos[c].items():
                    combo[i] = combo.get(i, self.target.base.zero) + a * y
        if v:
            raise ValueError("element outside the source algebra")
        n = self.target.n
        acc = Matrix.zeros(self.target.base, n, n)
        for i, c in combo.items():
            if c:
                acc = acc + self.images[i].scale(c)
        return acc

    def verify(self) -> bool:
        """Unital and multiplicative on all basis pairs."""
        K = self.target.base
        m = self.source_basis[0].rows
        n = self.target.n
        ok = self(Matrix.identity(K, m)) == Matrix.identity(K, n)
        for a, fa in zip(self.source_basis, self.images):
            if not ok:
                break
            for b, fb in zip(self.source_basis, self.images):
                if self(a * b) != fa * fb:
                    ok = False
                    break
        self.verified = ok
        return ok

    def image_algebra(self) -> MatAlgebra:
        t = self.target
        return MatAlgebra(t, Subspace.span(t.base, t.n * t.n, [_flat(m) for m in self.images]), gens=self.images)


# ---------------------------------------------------------------------------
# constructors

def full_algebra(t: ExtensionTower) -> MatAlgebra:
    """E(L/K) itself."""
    K, n = t.base, t.n
    gens = []
    if n > 1:
        # a cyclic shift and a diagonal unit matrix generate M_n(K)
        shift = Matrix.zeros(K, n, n)
        for i in range(n):
            shift.entries[(i + 1) % n][i] = K.one
        e00 = Matrix.zeros(K, n, n)
        e00.entries[0][0] = K.one
        gens = [shift, e00]
    return MatAlgebra(t, Subspace.full(K, n * n), gens=gens, contains_L=True)


def field_image(t: ExtensionTower, M: Subfield | None = None) -> MatAlgebra:
    """The image of M (default: L) under the regular representation."""
    K, n = t.base, t.n
    if M is None:
        basis = t.basis()
        gens = list(t.gens())
    else:
        basis = M.basis()
        gens = M.generators()
    space = Subspace.span(K, n * n, [_flat(t.regular_rep(b)) for b in basis])
    return MatAlgebra(t, space, gens=[t.regular_rep(g) for g in gens], contains_L=(M is None or M.dim == n))


def generate_algebra(t: ExtensionTower, gens) -> MatAlgebra:
    """Smallest unital subalgebra containing gens: close span{I} under right
    multiplication by every generator."""
    K, n = t.base, t.n
    gens = [g for g in gens]
    ident = Matrix.identity(K, n)
    ech = Echelon(n * n, K)
    ech.add(_flat(ident))
    frontier = [ident]
    while frontier and ech.rank < n * n:
        nxt = []
        for b in frontier:
            for g in gens:
                w = b * g
                if ech.add(_flat(w)):
                    nxt.append(w)
        frontier = nxt
    return MatAlgebra(t, ech.subspace(), gens=gens)


def commutator_forms(s: Matrix, n: int) -> list:
    """For every flat position (i, j), the linear form in the flattened c
    giving (c s - s c)_ij."""
    forms = []
    S = s.entries
    for i in range(n):
        for j in range(n):
            row = {}
            for k in range(n):
                x = S[k][j]
                if x:
                    key = i * n + k
                    row[key] = row[key] + x if key in row else x
                y = S[i][k]
                if y:
                    key = k * n + j
                    row[key] = row[key] - y if key in row else -y
            forms.append({k: v for k, v in row.items() if v})
    return forms


def _commutator_rows(s: Matrix, n: int):
    return [r for r in commutator_forms(s, n) if r]


def centralizer(t: ExtensionTower, S, within: MatAlgebra | None = None) -> MatAlgebra:
    """{c in within : c s = s c for all s in S}.

    Constraints are applied one element of S at a time, so later kernels are
    taken over the already reduced solution space.
    """
    K, n = t.base, t.n
    S = [s for s in S]
    if within is None:
        if not S:
            return full_algebra(t)
        space = kernel_of_rows(_commutator_rows(S[0], n), n * n, K)
        rest = S[1:]
    else:
        space = within.space
        rest = S
    basis = [_unflat(K, n, r) for r in space.rows]
    for s in rest:
        if len(basis) <= 1:
            break
        comms = [_flat(b * s - s * b) for b in basis]
        if not any(comms):
            continue
        rels = relations(comms, K, n * n)
        new = []
        for rel in rels:
            acc = Matrix.zeros(K, n, n)
            for i, c in rel.items():
                acc = acc + basis[i].scale(c)
            new.append(acc)
        basis = new
        space = Subspace.span(K, n * n, [_flat(b) for b in basis])
        basis = [_unflat(K, n, r) for r in space.rows]
    return MatAlgebra(t, space)


def center(a: MatAlgebra) -> MatAlgebra:
    return centralizer(a.tower, a.generators(), within=a)


def _m_basis(t: ExtensionTower, M: Subfield):
    """A greedy M-basis of L drawn from the monomial basis, and the K-basis
    mu_l * e_k it induces (k major)."""
    mu = M.basis()
    ech = Echelon(t.n, t.base)
    e = []
    for b in t.basis():
        if ech.rank == t.n:
            break
        prods = [m * b for m in mu]
        trial = Echelon(t.n, t.base)
        trial.rows = {k: dict(v) for k, v in ech.rows.items()}
        if all(trial.add(p.coords) for p in prods):
            ech = trial
            e.append(b)
    return mu, e


def endomorphisms_over(t: ExtensionTower, M: Subfield) -> MatAlgebra:
    """E(L/M) built directly: the maps e_k -> mu e_j extended M-linearly,
    written in the monomial basis."""
    K, n = t.base, t.n
    mu, e = _m_basis(t, M)
    r, m = len(e), len(mu)
    cols = [(mu[l] * e[k]).coords for k in range(r) for l in range(m)]
    P = Matrix.from_columns(K, cols)
    Pinv = P.inverse()
    ech = Echelon(n * n, K)
    zero_col = [K.zero] * n
    for j in range(r):
        for k in range(r):
            for l in range(m):
                img = []
                for k2 in range(r):
                    for l2 in range(m):
                        img.append((mu[l2] * mu[l] * e[j]).coords if k2 == k else zero_col)
                X = Matrix.from_columns(K, img)
                ech.add(_flat(X * Pinv))
    return MatAlgebra(t, ech.subspace(), contains_L=True)


def double_centralizer_roundtrip(t: ExtensionTower, B: MatAlgebra):
    """(C, CC, ok) with C = C_E(B), CC = C_E(C), ok iff CC = B and
    dim B * dim C = n^2."""
    C = centralizer(t, B.generators())
    CC = centralizer(t, C.basis)
    ok = CC == B and B.dim * C.dim == t.n * t.n
    return C, CC, ok


def _ideal_is_everything(a: MatAlgebra, b: Matrix, gens) -> bool:
    K, n = a.field, a.n
    ech = Echelon(n * n, K)
    ech.add(_flat(b))
    frontier = [b]
    while frontier:
        if ech.rank == a.dim:
            return True
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (g * x, x * g):
                    if ech.add(_flat(y)):
                        nxt.append(y)
                        if ech.rank == a.dim:
                            return True
        frontier = nxt
    return ech.rank == a.dim


def is_simple(a: MatAlgebra, method: str = "auto") -> bool:
    """Two-sided ideal test: the ideal generated by every basis element must
    be the whole algebra.

    method="auto" first tries two sound shortcuts: a of dimension n^2 is all
    of M_n(K), and an algebra containing L has L as a faithful simple module
    (any nonzero vector generates L under L itself), which forces simplicity.
    method="ideal" always runs the ideal test.
    """
    if method not in ("auto", "ideal"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        if a.dim == a.n * a.n:
            return True
        if a.contains_L:
            return True
    gens = a.generators()
    return all(_ideal_is_everything(a, b, gens) for b in a.basis)


def diagonal_embedding(t: ExtensionTower, M: Subfield, e) -> AlgebraHom:
    """theta_e : E(M/K) -> E(L/K) for an M-basis e of L, acting on the
    coordinates of sum m_k e_k by applying phi to every m_k.

    E(M/K) is written in M's echelon K-basis.
    """
    K, n = t.base, t.n
    mu = M.basis()
    e = [t.coerce(x) for x in e]
    m, r = len(mu), len(e)
    if m * r != n:
        raise NotABasis(f"{r} elements cannot be a basis of L over a degree-{m} subfield")
    cols = [(mu[l] * e[k]).coords for k in range(r) for l in range(m)]
    P = Matrix.from_columns(K, cols)
    try:
        Pinv = P.inverse()
    except ZeroDivisionError as exc:
        raise NotABasis("elements are not linearly independent over M") from exc
    source, images = [], []
    for a in range(m):
        for b in range(m):
            unit = Matrix.zeros(K, m, m)
            unit.entries[a][b] = K.one
            source.append(unit)
            # mu_b e_k -> mu_a e_k, other basis vectors -> 0
            blk = Matrix.zeros(K, n, n)
            for k in range(r):
                blk.entries[k * m + a][k * m + b] = K.one
            images.append(P * blk * Pinv)
    hom = AlgebraHom(source, images, t)
    if not hom.verify():
        raise ArithmeticError("block-diagonal embedding failed to be multiplicative")
    return hom


def conjugation_hom(A: MatAlgebra, v: Matrix) -> AlgebraHom:
    vinv = v.inverse()
    return AlgebraHom(A.basis, [v * a * vinv for a in A.basis], A.tower)


def conjugating_unit(A: MatAlgebra, B: MatAlgebra, iso: AlgebraHom, budget: int = 200, seed: int = 0) -> Matrix:
    """An invertible u with u a u^-1 = iso(a) for every a in A."""
    t = A.tower
    K, n = t.base, t.n
    rows = []
    for a in A.basis:
        fa = iso(a)
        # (u a - fa u)_ij = sum_k u_ik a_kj - fa_ik u_kj
        rows.extend(_twisted_rows(a, fa, n))
    U = kernel_of_rows(rows, n * n, K)
    if U.dim == 0:
        raise NoUnitFound("the intertwiner space is zero")
    basis = [_unflat(K, n, r) for r in U.rows]
    p = K.characteristic
    tried = 0
    for size in (1, 2, 3):
        for idx in itertools.combinations(range(len(basis)), size):
            for coeffs in itertools.product(range(1, p), repeat=size):
                if tried >= budget:
                    raise NoUnitFound(f"no invertible intertwiner within {budget} trials")
                tried += 1
                u = basis[idx[0]].scale(K.from_int(coeffs[0]))
                for i, c in zip(idx[1:], coeffs[1:]):
                    u = u + basis[i].scale(K.from_int(c))
                if u.is_invertible():
                    return u
    rng = random.Random(seed)
    while tried < budget:
        tried += 1
        u = Matrix.zeros(K, n, n)
        for b in basis:
            u = u + b.scale(_random_scalar(K, rng))
        if u.is_invertible():
            return u
    raise NoUnitFound(f"no invertible intertwiner within {budget} trials")


def _random_scalar(K, rng):
    if hasattr(K, "random_element"):
        return K.random_element(rng, degree=2, allow_fraction=True)
    return K.from_int(rng.randrange(K.characteristic))


def _twisted_rows(a: Matrix, fa: Matrix, n: int):
    rows = []
    Ae, Fe = a.entries, fa.entries
    for i in range(n):
        for j in range(n):
            row = {}
            for k in range(n):
                x = Ae[k][j]
                if x:
                    key = i * n + k
                    row[key] = row[key] + x if key in row else x
                y = Fe[i][k]
                if y:
                    key = k * n + j
                    row[key] = row[key] - y if key in row else -y
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def algebra_to_subfield(t: ExtensionTower, A: MatAlgebra) -> Subfield:
    """C_E(A) read back as a subfield of L (each centralizing matrix is
    multiplication by its value at 1)."""
    if not A.contains_L:
        raise NotContainingL("algebra does not contain the image of L")
    C = centralizer(t, A.generators())
    K, n = t.base, t.n
    vecs = [m.column(0) for m in C.basis]
    return subfield_from_space(t, Subspace.span(K, n, vecs))
