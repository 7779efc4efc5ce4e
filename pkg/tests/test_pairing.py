import pytest

from leibniz_kit.algebra import classify, orthogonal_sum
from leibniz_kit.constructions import (
    anisotropic_plane,
    heisenberg,
    minimal_quintuple,
    reduced_quintuple_algebra,
    sl,
    two_dim_square,
)
from leibniz_kit.linalg import Subspace, matrix, to_scalar, unit_vector
from leibniz_kit.pairing import (
    NotFoundOverField,
    NotLeftCentral,
    NotRankOne,
    RankZero,
    ScalarForm,
    certified_anisotropic,
    check_associative,
    find_isotropic_vector,
    form_radical,
    hyperbolic_split,
    is_totally_isotropic,
    maximal_totally_isotropic,
    orth_complement,
    pair,
    pair_of_transverse_lagrangians,
    rad_of,
    rank,
    rank_reduction,
    rational_sqrt,
    symmetric_pairing,
    trace_form,
)


def reduced_minimal():
    return reduced_quintuple_algebra(minimal_quintuple())[0]


def test_pairing_of_two_dim_square():
    a = two_dim_square()
    assert pair(a, a.unit(0), a.unit(0)) == (0, 2)
    assert rank(a) == 1
    form = trace_form(a)
    assert form.value(a.unit(0), a.unit(0)) == 2
    assert form_radical(a) == Subspace.span([unit_vector(2, 1)], 2)


def test_lie_algebras_have_rank_zero():
    assert rank(sl(2)) == 0
    assert form_radical(heisenberg()) == Subspace.full(3)
    assert trace_form(sl(2)).is_symmetric()
    with pytest.raises(RankZero):
        rank_reduction(sl(2))


def test_associativity_holds_on_left_central_algebras():
    for algebra in (two_dim_square(), anisotropic_plane(), reduced_minimal()):
        assert classify(algebra).left_central
        assert check_associative(algebra).holds


def test_orthogonal_complements():
    a = reduced_minimal()
    radical = form_radical(a)
    assert radical.dim == 1
    assert orth_complement(a, radical) == a.full()
    assert orth_complement(a, a.full()) == radical
    assert rad_of(a, a.full()) == radical


def test_rational_sqrt():
    assert rational_sqrt(to_scalar("9/4")) == to_scalar("3/2")
    assert rational_sqrt(to_scalar(2)) is None
    assert rational_sqrt(to_scalar(-1)) is None


def test_isotropic_vectors_of_split_and_definite_forms():
    split = ScalarForm(matrix([[1, 0], [0, -1]]))
    v = find_isotropic_vector(split, Subspace.full(2))
    assert split.value(v, v) == 0 and any(v)
    definite = ScalarForm(matrix([[1, 0], [0, 2]]))
    with pytest.raises(NotFoundOverField):
        find_isotropic_vector(definite, Subspace.full(2))
    assert certified_anisotropic(definite, Subspace.full(2))


def test_hyperbolic_split_of_a_hyperbolic_plane():
    form = ScalarForm(matrix([[0, 1], [1, 0]]))
    split = hyperbolic_split(form, Subspace.full(2))
    assert split.witt_index == 1
    e, h = split.isotropic[0], split.partners[0]
    assert form.value(e, e) == 0
    assert form.value(h, h) == 0
    assert form.value(e, h) == 1
    assert split.anisotropic.dim == 0


def test_anisotropic_plane_has_no_lagrangian_pair():
    a = anisotropic_plane()
    assert maximal_totally_isotropic(a) == form_radical(a)
    with pytest.raises(NotFoundOverField):
        pair_of_transverse_lagrangians(a)


def test_transverse_lagrangians_of_reduced_minimal():
    a = reduced_minimal()
    first, second = pair_of_transverse_lagrangians(a)
    radical = form_radical(a)
    assert first.dim == second.dim == 2
    assert first & second == radical
    assert first + second == a.full()
    assert is_totally_isotropic(a, first) and is_totally_isotropic(a, second)


def test_rank_reduction_embeds_into_rank_one_quotients():
    a = orthogonal_sum(two_dim_square(), anisotropic_plane())
    assert rank(a) == 2
    reduction = rank_reduction(a)
    assert len(reduction.quotients) == 2
    assert reduction.embedding.is_injective()
    for projection in reduction.quotients:
        assert rank(projection.target) == 1


def test_rank_reduction_of_three_square_summands():
    a = orthogonal_sum(orthogonal_sum(two_dim_square(), two_dim_square()), two_dim_square())
    assert rank(a) == 3
    reduction = rank_reduction(a)
    assert len(reduction.quotients) == 3
    assert reduction.embedding.is_injective()
    assert all(rank(projection.target) == 1 for projection in reduction.quotients)


def test_higher_rank_needs_kernel_valued_form():
    a = orthogonal_sum(two_dim_square(), two_dim_square())
    assert len(symmetric_pairing(a).components) == 2
    with pytest.raises(NotRankOne):
        trace_form(a)


def test_rank_reduction_requires_left_central():
    from leibniz_kit.constructions import hemisemidirect, natural_module

    with pytest.raises(NotLeftCentral):
        rank_reduction(hemisemidirect(sl(2), natural_module(2)))
