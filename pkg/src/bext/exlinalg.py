"""Exact linear algebra over any field whose elements support + - * / and
truth testing: echelon forms, kernels, subspaces, and the Frobenius-twisted
kernel used for purely inseparable elements.

Vectors are handled internally as sparse dicts {column: value}."""

from __future__ import annotations

from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    pass


class UnsupportedBase(ValueError):
    pass


class TooManyUnknowns(ValueError):
    pass


def as_sparse(v) -> dict:
    if isinstance(v, dict):
        return {k: x for k, x in v.items() if x}
    return {i: x for i, x in enumerate(v) if x}


def to_dense(v: dict, dim: int, zero) -> list:
    out = [zero] * dim
    for k, x in v.items():
        out[k] = x
    return out


def _axpy(v: dict, c, row: dict):
    """v -= c * row, in place."""
    for k, x in row.items():
        y = v.get(k)
        if y is None:
            v[k] = -(c * x)
        else:
            y = y - c * x
            if y:
                v[k] = y
            else:
                del v[k]


class Echelon:
    """Fully reduced row echelon basis grown one vector at a time.

    With track=True every row also carries the combination of inserted
    vectors it came from, and dependent insertions are recorded as relations.
    """

    def __init__(self, dim: int, field, track: bool = False):
        self.dim = dim
        self.field = field
        self.rows: dict = {}
        self.track = track
        self.combos: dict = {}
        self.relations: list = []
        self._count = 0

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v) -> dict:
        v = as_sparse(v)
        rows = self.rows
        for c in [k for k in v if k in rows]:
            x = v.get(c)
            if x:
                _axpy(v, x, rows[c])
        return v

    def add(self, v, combo=None) -> bool:
        idx = self._count
        self._count += 1
        v = as_sparse(v)
        rows = self.rows
        if self.track:
            combo = dict(combo) if combo is not None else {idx: self.field.one}
        for c in [k for k in v if k in rows]:
            x = v.get(c)
            if x:
                _axpy(v, x, rows[c])
                if self.track:
                    _axpy(combo, x, self.combos[c])
        if not v:
            if self.track:
                self.relations.append(combo)
            return False
        piv = min(v)
        inv = self.field.one / v[piv]
        if not (v[piv] == self.field.one):
            v = {k: x * inv for k, x in v.items()}
            if self.track:
                combo = {k: x * inv for k, x in combo.items()}
        for c, row in rows.items():
            x = row.get(piv)
            if x:
                _axpy(row, x, v)
                if self.track:
                    _axpy(self.combos[c], x, combo)
        rows[piv] = v
        if self.track:
            self.combos[piv] = combo
        return True

    def subspace(self) -> "Subspace":
        piv = sorted(self.rows)
        return Subspace(self.dim, self.field, [dict(self.rows[c]) for c in piv], piv)


class Subspace:
    """A subspace of field^dim held by its unique reduced echelon basis."""

    __slots__ = ("ambient_dim", "field", "rows", "pivots", "_index")

    def __init__(self, ambient_dim, field, rows, pivots):
        self.ambient_dim = ambient_dim
        self.field = field
        self.rows = list(rows)
        self.pivots = list(pivots)
        self._index = {c: i for i, c in enumerate(self.pivots)}

    @classmethod
    def span(cls, field, dim: int, vectors: Iterable) -> "Subspace":
        ech = Echelon(dim, field)
        for v in vectors:
            ech.add(v)
        return ech.subspace()

    @classmethod
    def zero(cls, field, dim: int) -> "Subspace":
        return cls(dim, field, [], [])

    @classmethod
    def full(cls, field, dim: int) -> "Subspace":
        return cls(dim, field, [{i: field.one} for i in range(dim)], list(range(dim)))

    @property
    def dim(self):
        return len(self.rows)

    @property
    def basis(self):
        z = self.field.zero
        return [to_dense(r, self.ambient_dim, z) for r in self.rows]

    def echelon(self) -> Echelon:
        ech = Echelon(self.ambient_dim, self.field)
        for c, r in zip(self.pivots, self.rows):
            ech.rows[c] = dict(r)
        return ech

    def reduce(self, v) -> dict:
        v = as_sparse(v)
        idx = self._index
        for c in [k for k in v if k in idx]:
            x = v.get(c)
            if x:
                _axpy(v, x, self.rows[idx[c]])
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v) -> list:
        """Coordinates of v in the echelon basis (v must lie in the span)."""
        v = as_sparse(v)
        if self.reduce(v):
            raise ValueError("vector not in subspace")
        z = self.field.zero
        return [v.get(c, z) for c in self.pivots]

    def combine(self, coords) -> dict:
        out: dict = {}
        for c, row in zip(coords, self.rows):
            if c:
                _axpy(out, -c, row)
        return out

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check(self, other)
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.pivots)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, pivots={self.pivots})"

    def meet(self, other):
        return subspace_meet(self, other)

    def join(self, other):
        return subspace_join(self, other)


def _check(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def relations(vectors: Sequence, field, dim: int | None = None) -> list:
    """Basis (as coefficient dicts) of {c : sum c_i v_i = 0}."""
    if dim is None:
        dim = max((max(as_sparse(v), default=-1) for v in vectors), default=-1) + 1
    ech = Echelon(dim, field, track=True)
    for v in vectors:
        ech.add(v)
    return ech.relations


def subspace_meet(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    if a.dim > b.dim:
        a, b = b, a
    residues = [b.reduce(r) for r in a.rows]
    out = []
    for rel in relations(residues, a.field, a.ambient_dim):
        v: dict = {}
        for i, c in rel.items():
            _axpy(v, -c, a.rows[i])
        out.append(v)
    return Subspace.span(a.field, a.ambient_dim, out)


def subspace_join(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    if a.dim < b.dim:
        a, b = b, a
    ech = a.echelon()
    for r in b.rows:
        ech.add(r)
    return ech.subspace()


def contains(a: Subspace, v) -> bool:
    return a.contains(v)


# ---------------------------------------------------------------------------

class Matrix:
    """Dense matrix with exact entries."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, field, entries: Sequence[Sequence], cols: int | None = None):
        self.field = field
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.entries[i][i] = field.one
        return m

    @classmethod
    def from_flat(cls, field, n, v):
        if isinstance(v, dict):
            v = to_dense(v, n * n, field.zero)
        return cls(field, [list(v[i * n:(i + 1) * n]) for i in range(n)])

    @classmethod
    def from_columns(cls, field, columns):
        n = len(columns[0]) if columns else 0
        return cls(field, [[col[i] for col in columns] for i in range(n)])

    def flat(self) -> list:
        return [x for r in self.entries for x in r]

    def sparse_flat(self) -> dict:
        c = self.cols
        return {i * c + j: x for i, r in enumerate(self.entries) for j, x in enumerate(r) if x}

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [r[j] for r in self.entries]

    def transpose(self):
        return Matrix(self.field, [list(c) for c in zip(*self.entries)]) if self.entries else self

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def is_zero(self):
        return not any(x for r in self.entries for x in r)

    def __add__(self, other):
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.entries])

    def scale(self, c):
        return Matrix(self.field, [[a * c for a in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return matmul(self, other)
        return self.scale(other)

    def apply(self, v: Sequence) -> list:
        z = self.field.zero
        out = []
        for r in self.entries:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def rank(self):
        return rref(self)[1]

    def inverse(self):
        n = self.rows
        if n != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        one, zero = self.field.one, self.field.zero
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.entries)]
        red, rk = rref(Matrix(self.field, aug))
        if rk < n or any(red.entries[i][i] != one for i in range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix(self.field, [r[n:] for r in red.entries[:n]])

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows

    def __repr__(self):
        return "Matrix(" + repr(self.entries) + ")"


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    z = a.field.zero
    bnz = [[(j, x) for j, x in enumerate(r) if x] for r in b.entries]
    out = []
    for r in a.entries:
        acc = [z] * b.cols
        for k, x in enumerate(r):
            if x:
                for j, y in bnz[k]:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return Matrix(a.field, out)


def rref(m: Matrix):
    """Reduced row echelon form (zero rows dropped) and rank."""
    ech = Echelon(m.cols, m.field)
    for r in m.entries:
        ech.add(r)
    sub = ech.subspace()
    rows = sub.basis
    return Matrix(m.field, rows, m.cols), sub.dim


def kernel(m: Matrix) -> Subspace:
    return kernel_of_rows(m.entries, m.cols, m.field)


def kernel_of_rows(rows: Iterable, ncols: int, field) -> Subspace:
    """{v : r.v = 0 for every row r}."""
    ech = Echelon(ncols, field)
    for r in rows:
        ech.add(r)
    pivots = ech.rows
    free = [j for j in range(ncols) if j not in pivots]
    vecs = []
    for f in free:
        v = {f: field.one}
        for c, row in pivots.items():
            x = row.get(f)
            if x:
                v[c] = -x
        vecs.append(v)
    return Subspace.span(field, ncols, vecs)


def solve(m: Matrix, b: Sequence):
    """One solution x of m x = b, or None."""
    aug = [list(r) + [bi] for r, bi in zip(m.entries, b)]
    ech = Echelon(m.cols + 1, m.field)
    for r in aug:
        ech.add(r)
    if m.cols in ech.rows:
        return None
    x = [m.field.zero] * m.cols
    for c, row in ech.rows.items():
        x[c] = row.get(m.cols, m.field.zero)
    return x


# ---------------------------------------------------------------------------

def semilinear_kernel(cols_map: Matrix, e: int, keep: Subspace, limit: int = 4096) -> Subspace:
    """{v : sum v_i^(p^e) * col_i(cols_map) lies in keep}, v ranging over K^n.

    The field of cols_map must expose pe_basis / pe_decompose / monomial /
    pe_root for its p^e-th power subfield.
    """
    F = cols_map.field
    n = cols_map.cols
    for attr in ("pe_basis", "pe_decompose", "pe_root", "monomial"):
        if not hasattr(F, attr):
            raise UnsupportedBase(f"{F!r} has no computable p^e-th roots")
    zero = F.zero
    cols = [cols_map.column(i) for i in range(n)]
    # step (i): d = v^(p^e) solves a K-linear system
    residues = [keep.reduce(c) for c in cols]
    D = Subspace.span(F, n, [
        {i: c for i, c in rel.items()} for rel in relations(residues, F, cols_map.rows)
    ])
    if D.dim == 0:
        return D
    basis = F.pe_basis(e)
    if n * len(basis) > limit:
        raise TooManyUnknowns(f"{n * len(basis)} unknowns exceed the limit {limit}")
    # step (ii): restrict d to (K^(p^e))^n; unknowns mu_(j, r), d = sum mu t^r w_j
    unknowns = [(j, r) for j in range(D.dim) for r in basis]
    if len(basis) == 1:
        sols = Subspace.full(F, len(unknowns))
    else:
        eqs: dict = {}
        for u, (j, r) in enumerate(unknowns):
            tr = F.monomial(r)
            for i, w in D.rows[j].items():
                for s, c in F.pe_decompose(tr * w, e).items():
                    if any(s):
                        root = F.pe_root(c, e)
                        eqs.setdefault((i, s), {})[u] = root
        sols = kernel_of_rows(list(eqs.values()), len(unknowns), F)
    # step (iii): v = (sum mu t^r w_j)^(1/p^e), mu = mu'^(p^e)
    out = []
    for row in sols.rows:
        d: dict = {}
        for u, mu_root in row.items():
            j, r = unknowns[u]
            coef = F.frobenius(mu_root, e) * F.monomial(r)
            _axpy(d, -coef, D.rows[j])
        v = {}
        for i, x in d.items():
            root = F.pe_root(x, e)
            if root is None:
                raise ArithmeticError("semilinear solve produced a non p^e-th power")
            v[i] = root
        out.append(v)
    return Subspace.span(F, n, out)
