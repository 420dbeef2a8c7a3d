import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bext.exlinalg import Matrix
from bext.matalg import (
    AlgebraHom,
    MatAlgebra,
    algebra_to_subfield,
    center,
    centralizer,
    conjugating_unit,
    diagonal_embedding,
    double_centralizer_roundtrip,
    endomorphisms_over,
    field_image,
    full_algebra,
    generate_algebra,
    is_simple,
)
from bext.tower import base_subfield, subfield_generated, whole_field

from conftest import catalog_tower


def _subfield(T, picks):
    gens = [T.basis()[i] for i in picks]
    return subfield_generated(T, gens) if gens else base_subfield(T)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["ex3", "ex4", "ex0", "as3"]), st.sets(st.integers(0, 3), max_size=2))
def test_centralizer_of_subfield_is_endomorphisms_over_it(name, picks):
    T = catalog_tower(name)
    M = _subfield(T, [i % T.n for i in picks])
    C = centralizer(T, field_image(T, M).generators())
    for c in C.basis[:4]:
        for g in field_image(T, M).generators():
            assert c * g == g * c
    assert C == endomorphisms_over(T, M)
    assert C.dim == (T.n // M.dim) ** 2 * M.dim
    assert algebra_to_subfield(T, C) == M


def test_field_image_is_maximal_commutative():
    T = catalog_tower("ex3")
    L = field_image(T)
    assert L.is_commutative() and centralizer(T, L.generators()) == L
    assert center(full_algebra(T)).dim == 1


@pytest.mark.parametrize("name", ["ex2", "ex3", "ex4", "cube_root"])
def test_double_centralizer(name):
    T = catalog_tower(name)
    for M in (base_subfield(T), whole_field(T), _subfield(T, [1])):
        B = centralizer(T, field_image(T, M).generators())
        C, CC, ok = double_centralizer_roundtrip(T, B)
        assert ok and CC == B and B.dim * C.dim == T.n ** 2
        assert is_simple(B) and is_simple(B, method="ideal")


def test_ideal_test_refutes_a_non_simple_algebra():
    T = catalog_tower("ex3")
    K = T.base
    N = Matrix.zeros(K, 4, 4)
    N.entries[0][3] = K.one
    A = generate_algebra(T, [N])
    assert A.dim == 2
    assert not is_simple(A, method="ideal")
    with pytest.raises(ValueError):
        is_simple(A, method="guess")


def test_diagonal_embedding_and_conjugating_unit():
    T = catalog_tower("ex3")
    M = _subfield(T, [1])  # K(u)
    u, s = T.gen("u"), T.gen("s")
    h1 = diagonal_embedding(T, M, [T.one, s])
    h2 = diagonal_embedding(T, M, [T.one, s + u])
    assert h1.verify() and h2.verify()
    A = h1.image_algebra()
    B = h2.image_algebra()
    iso_images = [h2(src) for src in h1.source_basis]
    # conjugate h1 into h2: u a u^-1 = h2(x) whenever a = h1(x)
    hom = AlgebraHom(h1.images, iso_images, T)
    v = conjugating_unit(MatAlgebra(T, A.space), B, hom)
    vinv = v.inverse()
    for a, b in zip(h1.images, iso_images):
        assert v * a * vinv == b
