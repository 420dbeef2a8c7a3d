"""Derivations, differential operators and the subfields they cut out.

A derivation is pinned down by its values on the tower generators; those
values must satisfy one linear condition per generator (differentiate its
minimal polynomial). Differential operators are computed twice: as the
centralizer of the separable closure, and by the order filtration
D_0 = L, D_i = {phi : [phi, l] in D_(i-1) for all l in L}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exlinalg import Echelon, Matrix, Subspace, kernel_of_rows
from .matalg import MatAlgebra, centralizer, commutator_forms, field_image, generate_algebra, _flat
from .tower import (
    ExtensionTower,
    Subfield,
    TowerElement,
    base_subfield,
    exponent_bound,
    pe_kernel,
    present_subfield,
    subfield_from_space,
    whole_field,
)


def partials(x: TowerElement) -> list:
    """Formal partial derivatives of the normal form of x, one per generator."""
    t = x.tower
    K = t.base
    p = t.characteristic
    out = [[K.zero] * t.n for _ in t.degrees]
    for idx, c in enumerate(x.coords):
        if not c:
            continue
        exps = t.exponents(idx)
        for j, a in enumerate(exps):
            if a % p:
                lowered = list(exps)
                lowered[j] -= 1
                k = t.index_of(lowered)
                out[j][k] = out[j][k] + c * K.from_int(a)
    return [TowerElement(t, tuple(v)) for v in out]


def _lift(t: ExtensionTower, coords) -> TowerElement:
    """A coefficient stored one level down, as an element of t."""
    return TowerElement(t, tuple(coords) + (t.base.zero,) * (t.n - len(coords)))


def _relation_jacobian(t: ExtensionTower) -> list:
    """Row i: the partials of F_i = g_i^d + sum c_k g_i^k at the generators."""
    K = t.base
    gens = t.gens()
    rows = []
    for i, lvl in enumerate(t.levels):
        g = gens[i]
        d = lvl.d
        coeffs = [_lift(t, c) for c in lvl.f]
        row = [t.zero for _ in gens]
        gpow = [t.one]
        for _ in range(d):
            gpow.append(gpow[-1] * g)
        for k in range(d + 1):
            c = coeffs[k] if k < d else t.one
            if k < d:
                for j, dc in enumerate(partials(c)[:i]):
                    if dc:
                        row[j] = row[j] + dc * gpow[k]
            if k % t.characteristic:
                row[i] = row[i] + c * gpow[k - 1] * K.from_int(k)
        rows.append(row)
    return rows


class DerivationSpace:
    """Der(L/M) with a K-basis of solution vectors and an L-basis of matrices."""

    def __init__(self, tower, over, space, l_basis):
        self.tower = tower
        self.over = over
        self.space = space
        self.l_basis = l_basis  # list of (values on generators, matrix)

    @property
    def k_dim(self):
        return self.space.dim

    @property
    def l_dim(self):
        return len(self.l_basis)

    @property
    def matrices(self) -> list:
        return [m for _, m in self.l_basis]

    def k_matrices(self) -> list:
        return [derivation_matrix(self.tower, _split(self.tower, r)) for r in self.space.basis]

    def certify(self) -> bool:
        t = self.tower
        basis = t.basis()
        for _, m in self.l_basis:
            images = [t.element(m.column(j)) for j in range(t.n)]
            if images[0]:
                return False
            for i, a in enumerate(basis):
                for j in range(i, t.n):
                    b = basis[j]
                    lhs = t.element(m.apply((a * b).coords))
                    if lhs != a * images[j] + images[i] * b:
                        return False
        return True


def _split(t, vec):
    n = t.n
    return [TowerElement(t, tuple(vec[j * n:(j + 1) * n])) for j in range(len(t.degrees))]


def derivation_matrix(t: ExtensionTower, values) -> Matrix:
    """The matrix of the derivation with the given generator values."""
    cols = []
    for b in t.basis():
        acc = t.zero
        for dj, v in zip(partials(b), values):
            if dj and v:
                acc = acc + dj * v
        cols.append(acc.coords)
    return Matrix.from_columns(t.base, cols)


def derivations(t: ExtensionTower, over: Subfield | None = None) -> DerivationSpace:
    """Derivations of L vanishing on `over` (default K)."""
    K, n = t.base, t.n
    k = len(t.degrees)
    rows = []

    def block_rows(elems):
        mats = [t.regular_rep(e) for e in elems]
        for r in range(n):
            row = {}
            for j, m in enumerate(mats):
                for c, x in enumerate(m.entries[r]):
                    if x:
                        row[j * n + c] = x
            if row:
                rows.append(row)

    for jac in _relation_jacobian(t):
        block_rows(jac)
    if over is not None and over.dim > 1:
        for m in over.generators():
            block_rows(partials(m))
    space = kernel_of_rows(rows, k * n, K)
    # greedy L-basis: keep a solution when it leaves the L-span so far
    ech = Echelon(k * n, K)
    l_basis = []
    basis = t.basis()
    for vec in space.basis:
        if not ech.reduce(vec):
            continue
        values = _split(t, vec)
        l_basis.append((values, derivation_matrix(t, values)))
        for b in basis:
            ech.add([c for v in values for c in (b * v).coords])
    return DerivationSpace(t, over, space, l_basis)


def constants_field(d: DerivationSpace) -> Subfield:
    t = d.tower
    if not d.l_basis:
        return whole_field(t)
    rows = [r for m in d.matrices for r in m.entries]
    return subfield_from_space(t, kernel_of_rows(rows, t.n, t.base))


def separable_chain(t: ExtensionTower) -> list:
    """L = M_0 > M_1 > ... with M_(i+1) the constants of Der(M_i/K), ending at
    the first M_i without derivations (which is L^sep)."""
    chain = [whole_field(t)]
    while True:
        M = chain[-1]
        if M.dim == t.n:
            T, pres = t, None
        elif M.dim == 1:
            return chain
        else:
            pres = present_subfield(t, M)
            T = pres.tower
        ders = derivations(T)
        if not ders.l_basis:
            return chain
        C = constants_field(ders)
        if pres is not None:
            vecs = [pres.from_tower(b).coords for b in C.basis()]
            C = subfield_from_space(t, Subspace.span(t.base, t.n, vecs))
        chain.append(C)


def separable_closure(t: ExtensionTower) -> Subfield:
    return separable_chain(t)[-1]


@dataclass
class DiffOpAlgebra:
    algebra: MatAlgebra
    d_plus: Subspace
    profile: list = field(default_factory=list)
    lsep: Subfield | None = None

    @property
    def dim(self):
        return self.algebra.dim

    def d_plus_matrices(self) -> list:
        K, n = self.algebra.field, self.algebra.n
        return [Matrix.from_flat(K, n, r) for r in self.d_plus.rows]


def _split_plus(t: ExtensionTower, D: MatAlgebra) -> Subspace:
    """D_+ = {phi - (phi(1))* : phi in D}, the operators killing 1."""
    n = t.n
    vecs = []
    for phi in D.basis:
        at_one = t.element(phi.column(0))
        vecs.append(_flat(phi - t.regular_rep(at_one)))
    return Subspace.span(t.base, n * n, vecs)


def diff_ops(t: ExtensionTower, lsep: Subfield | None = None) -> DiffOpAlgebra:
    """D(L/K) as the centralizer of L^sep in E(L/K)."""
    if lsep is None:
        lsep = separable_closure(t)
    gens = field_image(t, lsep).generators()
    D = centralizer(t, gens)
    D._contains_L = True if D.dim >= t.n else None
    return DiffOpAlgebra(D, _split_plus(t, D), lsep=lsep)


def _residue_forms(forms: list, W: Subspace, dim: int) -> list:
    """Linear forms whose joint kernel is {phi : forms(phi) lies in W}."""
    piv = set(W.pivots)
    out = {j: dict(forms[j]) for j in range(dim) if j not in piv}
    for c, row in zip(W.pivots, W.rows):
        fc = forms[c]
        if not fc:
            continue
        for j, w in row.items():
            if j == c or j in piv:
                continue
            target = out[j]
            for key, x in fc.items():
                y = target.get(key)
                y = -(w * x) if y is None else y - w * x
                if y:
                    target[key] = y
                else:
                    target.pop(key, None)
    return [r for r in out.values() if r]


def diff_ops_by_filtration(t: ExtensionTower, max_order: int | None = None) -> DiffOpAlgebra:
    """Union of the order filtration, computed by kernels until it stabilizes.

    The commutator condition is imposed for the tower generators only, which
    suffices because each D_i is an L-bimodule.
    """
    K, n = t.base, t.n
    if max_order is None:
        max_order = n * n
    L_img = field_image(t)
    W = L_img.space
    profile = [W.dim]
    forms = [commutator_forms(t.regular_rep(g), n) for g in t.gens()]
    for _ in range(max_order):
        if W.dim == n * n:
            break
        rows = []
        for fg in forms:
            rows.extend(_residue_forms(fg, W, n * n))
        nxt = kernel_of_rows(rows, n * n, K)
        if nxt.dim == W.dim:
            break
        W = nxt
        profile.append(W.dim)
    D = MatAlgebra(t, W, contains_L=True)
    return DiffOpAlgebra(D, _split_plus(t, D), profile=profile)


def dplus_constants(d: DiffOpAlgebra) -> Subfield:
    """L^(D_+): elements killed by every operator with zero constant term."""
    t = d.algebra.tower
    rows = [r for m in d.d_plus_matrices() for r in m.entries]
    if not rows:
        return whole_field(t)
    return subfield_from_space(t, kernel_of_rows(rows, t.n, t.base))


def l_dif(t: ExtensionTower, d: DiffOpAlgebra) -> Subfield:
    """C_L(D): elements whose multiplication commutes with all of D."""
    C = centralizer(t, d.algebra.generators(), within=field_image(t))
    return subfield_from_space(t, Subspace.span(t.base, t.n, [m.column(0) for m in C.basis]))


def purely_inseparable_part(t: ExtensionTower) -> Subfield:
    """L^pi = {a : a^(p^m) in K} with p^m >= [L:K]."""
    m = exponent_bound(t.characteristic, t.n)
    if m == 0:
        return whole_field(t)
    return pe_kernel(t, m, base_subfield(t))


def derivation_algebra(t: ExtensionTower, d: DerivationSpace) -> MatAlgebra:
    """Delta = L<Der>: generated by L and the derivations."""
    gens = [t.regular_rep(g) for g in t.gens()] + d.matrices
    A = generate_algebra(t, gens)
    A._contains_L = True
    return A


def sep_times_p(t: ExtensionTower, lsep: Subfield) -> Subfield:
    """L^sep * L^p, generated by L^sep and the p-th powers of the generators."""
    from .tower import subfield_generated

    p = t.characteristic
    return subfield_generated(t, lsep.generators() + [g ** p for g in t.gens()])
