import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bext.differential import (
    derivation_algebra,
    derivations,
    diff_ops,
    diff_ops_by_filtration,
    dplus_constants,
    l_dif,
    purely_inseparable_part,
    separable_chain,
    separable_closure,
)
from bext.tower import subfield_generated

from conftest import catalog_tower

SMALL = ["ex0", "ex1", "ex2", "ex3", "ex4", "cube_root", "as3", "mixed"]

# (L^sep, L^pi, Der(L/K) over L) worked out by hand from the step polynomials
EXPECTED = {
    "ex0": (4, 1, 0),
    "ex1": (1, 2, 1),
    "ex2": (2, 1, 0),
    "ex3": (2, 2, 1),
    "ex4": (3, 1, 0),
    "cube_root": (1, 3, 1),
    "as3": (3, 1, 0),
    "mixed": (3, 2, 1),
}


@pytest.mark.parametrize("name", SMALL)
def test_two_routes_to_differential_operators(name):
    T = catalog_tower(name)
    lsep = separable_closure(T)
    D = diff_ops(T, lsep)
    assert D.algebra == diff_ops_by_filtration(T).algebra
    ld = l_dif(T, D)
    assert ld == lsep == dplus_constants(D)
    assert D.dim == (T.n // ld.dim) ** 2 * ld.dim


@pytest.mark.parametrize("name", SMALL)
def test_witness_dimensions(name):
    T = catalog_tower(name)
    sep, pi, der = EXPECTED[name]
    assert separable_closure(T).dim == sep
    assert purely_inseparable_part(T).dim == pi
    d = derivations(T)
    assert d.l_dim == der and d.certify()


def test_separable_chain_is_decreasing():
    T = catalog_tower("ex3")
    chain = separable_chain(T)
    for a, b in zip(chain, chain[1:]):
        assert b <= a and b != a
    assert chain[-1] == subfield_generated(T, [T.gen("s")])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=8, max_size=8))
def test_leibniz_rule(bits):
    T = catalog_tower("ex3")
    t = T.base.gen("t")
    a = T.element([T.base.from_int(b) + t * (i % 2) for i, b in enumerate(bits[:4])])
    b = T.element([T.base.from_int(b) for b in bits[4:]])
    for m in derivations(T).matrices:
        def d(x):
            return T.element(m.apply(x.coords))
        assert d(a * b) == a * d(b) + d(a) * b


def test_derivation_algebra_inside_diff_ops():
    T = catalog_tower("ex1")
    D = diff_ops(T)
    delta = derivation_algebra(T, derivations(T))
    assert delta == D.algebra and delta.dim == 4
