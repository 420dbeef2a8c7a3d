import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bext.galois import (
    NotNormal,
    NotPurelyInseparable,
    classify,
    correspondence_roundtrip,
    fixed_field,
    pi_correspondence,
    skew_group_algebra,
    subgroup_lattice,
)
from bext.harness.catalog import builtin
from bext.matalg import field_image
from bext.tower import base_subfield

from conftest import catalog_tower, catalog_witnesses

FAST = ["ex0", "ex1", "ex2", "ex3", "ex4", "cube_root", "as3", "mixed"]


@pytest.mark.parametrize("name", FAST)
def test_group_is_a_group_of_field_automorphisms(name):
    T = catalog_tower(name)
    G = catalog_witnesses(name).group
    assert G.complete
    expect = builtin(name).expect
    if "group_order" in expect:
        assert G.order == expect["group_order"]
    basis = T.basis()
    for g in G.elements:
        for a in basis:
            for b in basis:
                assert g(a * b) == g(a) * g(b)
        for c in T.base.gens():
            assert g(T.coerce(c)) == T.coerce(c)
    assert len(set(g.images for g in G.elements)) == G.order


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_automorphisms_are_additive_and_multiplicative(bits):
    T = catalog_tower("ex0")
    G = catalog_witnesses("ex0").group
    a = T.element([T.base.from_int(b) for b in bits])
    b = T.gen("a")
    for g in G.elements:
        assert g(a * b + a) == g(a) * g(b) + g(a)


@pytest.mark.parametrize("name", FAST)
def test_classification_matches_catalog(name):
    rec = classify(catalog_tower(name), w=catalog_witnesses(name))
    got = dict(rec.flags())
    got.update({"n": rec.n, "group_order": rec.group_order, "dim_D": rec.dims["D"],
                "dim_LxG": rec.dims["LxG"], "dim_DxG": rec.dims["DxG"]})
    for key, want in builtin(name).expect.items():
        if key in got:
            assert got[key] == want, key
    assert len(set(rec.criteria.values())) == 1


def test_subgroups_of_a_cyclic_group():
    G = catalog_witnesses("ex0").group
    lattice = subgroup_lattice(G)
    assert [len(H) for H, _ in lattice] == [1, 2, 4]
    assert all(normal for _, normal in lattice)
    assert [fixed_field(G, H).dim for H, _ in lattice] == [4, 2, 1]


def test_skew_algebra_of_artin_schreier_is_everything():
    T = catalog_tower("ex2")
    S = skew_group_algebra(field_image(T), catalog_witnesses("ex2").group)
    assert S.dim == 4 and S.is_direct


def test_correspondence_needs_normality():
    T = catalog_tower("ex4")
    with pytest.raises(NotNormal):
        correspondence_roundtrip(T, base_subfield(T), catalog_witnesses("ex4"))
    with pytest.raises(NotPurelyInseparable):
        pi_correspondence(T, base_subfield(T))


def test_correspondence_on_base_and_whole():
    T = catalog_tower("ex2")
    w = catalog_witnesses("ex2")
    r = correspondence_roundtrip(T, base_subfield(T), w)
    assert r["ok"] and r["dim_A"] == 4 and r["subgroup_order"] == 2
