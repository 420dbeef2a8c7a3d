from hypothesis import given, settings
from hypothesis import strategies as st

from bext.basefield import RationalFunctionField, UniPoly
from bext.roots import GF, certify_rootless, pth_root_in, roots_in_field
from bext.tower import minimal_polynomial

from conftest import catalog_tower

K = RationalFunctionField(2, ["t"])
t = K.gen("t")


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (2, 4)]), st.data())
def test_gf_axioms(pk, data):
    F = GF(*pk)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.pow(a, F.q) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1


def _product(T, roots):
    f = UniPoly(T, [T.one])
    for r in roots:
        f = f * UniPoly(T, [-r, T.one])
    return f


def test_roots_of_a_minimal_polynomial():
    T = catalog_tower("ex3")
    s = T.gen("s")
    res = roots_in_field(minimal_polynomial(s), T)
    assert sorted(map(repr, res.roots)) == sorted(map(repr, [s, s + T.one]))
    assert res.complete


def test_inseparable_polynomial():
    T = catalog_tower("ex3")
    u = T.gen("u")
    x = UniPoly.x(K)
    res = roots_in_field(x ** 4 + t ** 2, T)
    assert [repr(r) for r in res.roots] == [repr(u)]


def test_no_roots_certified():
    T = catalog_tower("ex4")
    x = UniPoly.x(K)
    res = roots_in_field(x ** 2 + x + t, T)
    assert res.roots == [] and res.complete


def test_finite_field_roots():
    T = catalog_tower("ex0")
    F2 = T.base
    x = UniPoly.x(F2)
    res = roots_in_field(x ** 16 + x, T)
    assert len(res) == 16 and res.complete
    assert len(roots_in_field(x ** 4 + x + F2.one, T)) == 4
    assert len(roots_in_field(x ** 2 + x + F2.one, T)) == 2


def test_pth_root():
    T = catalog_tower("ex3")
    u, s = T.gen("u"), T.gen("s")
    assert pth_root_in(T, (u + s) ** 2, 1) == u + s
    # s = (u + s)^2, but u is not a square in L
    assert pth_root_in(T, s, 1) == u + s
    assert pth_root_in(T, u, 1) is None
    assert pth_root_in(T, T.coerce(t), 1) == u


def test_certify_rootless_is_sound():
    T = catalog_tower("ex3")
    u, s = T.gen("u"), T.gen("s")
    x = UniPoly.x(T)
    # x^2 + x + (s^2 + s) has the roots s and s + 1: never certified
    assert not certify_rootless(x ** 2 + x + s * s + s, T)
    assert not certify_rootless(_product(T, [u, s]), T)
    # x^2 + x + u has the root u + s in ex3, and none in K(u)
    assert not certify_rootless(x ** 2 + x + u, T)
    T1 = catalog_tower("ex1")
    x1 = UniPoly.x(T1)
    assert certify_rootless(x1 ** 2 + x1 + T1.gen("u"), T1)
