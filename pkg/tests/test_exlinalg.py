import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bext.basefield import RationalFunctionField
from bext.exlinalg import Matrix, Subspace, kernel, matmul, rref, solve, subspace_join, subspace_meet

F3 = RationalFunctionField(3, [])
Kt = RationalFunctionField(2, ["t"])


def mat(rows, F=F3):
    return Matrix(F, [[F.from_int(x) for x in r] for r in rows])


small = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(0, 2), min_size=c, max_size=c), min_size=1, max_size=4)
)


def brute_kernel_size(rows):
    c = len(rows[0])
    return sum(
        1 for v in itertools.product(range(3), repeat=c)
        if all(sum(a * b for a, b in zip(r, v)) % 3 == 0 for r in rows)
    )


@settings(max_examples=80, deadline=None)
@given(small)
def test_kernel_matches_enumeration(rows):
    m = mat(rows)
    ker = kernel(m)
    assert 3 ** ker.dim == brute_kernel_size(rows)
    for v in ker.basis:
        assert all(not x for x in m.apply(v))
    _, rank = rref(m)
    assert rank + ker.dim == m.cols


@settings(max_examples=60, deadline=None)
@given(small)
def test_rref_shape(rows):
    r, rank = rref(mat(rows))
    pivots = []
    for row in r.entries:
        j = next(k for k, x in enumerate(row) if x)
        assert row[j] == F3.one
        pivots.append(j)
    assert pivots == sorted(set(pivots)) and len(pivots) == rank
    for i, j in enumerate(pivots):
        assert all(not r.entries[k][j] for k in range(len(pivots)) if k != i)


@settings(max_examples=60, deadline=None)
@given(small, small)
def test_meet_join_dimensions(a, b):
    c = min(len(a[0]), len(b[0]))
    A = Subspace.span(F3, c, [[F3.from_int(x) for x in r[:c]] for r in a])
    B = Subspace.span(F3, c, [[F3.from_int(x) for x in r[:c]] for r in b])
    assert subspace_join(A, B).dim + subspace_meet(A, B).dim == A.dim + B.dim
    assert subspace_meet(A, B).is_subspace_of(A)
    assert A.is_subspace_of(subspace_join(A, B))


def test_span_is_canonical():
    t = Kt.gen("t")
    A = Subspace.span(Kt, 2, [[t, t + 1], [Kt.one, Kt.zero]])
    B = Subspace.span(Kt, 2, [[Kt.zero, Kt.one], [t, Kt.one]])
    assert A == B and A.dim == 2


def test_inverse_over_function_field():
    t = Kt.gen("t")
    m = Matrix(Kt, [[t, Kt.one], [Kt.one, t + 1]])
    assert matmul(m, m.inverse()) == Matrix.identity(Kt, 2)
    x = solve(m, [Kt.one, Kt.zero])
    assert m.apply(x) == [Kt.one, Kt.zero]


def test_singular_solve():
    m = mat([[1, 2], [2, 1]])
    assert solve(m, [F3.one, F3.zero]) is None
    with pytest.raises(ZeroDivisionError):
        m.inverse()
