import numpy as np
import pytest

from leibniz_kit.algebra import AlgebraHom, is_closed, leibniz_kernel, orthogonal_sum, solvable_radical
from leibniz_kit.constructions import (
    adjoint_hemisemidirect,
    adjoint_module,
    affine_line,
    heisenberg,
    matrix_lie_algebra,
    natural_module,
    root_sl2_example,
    sl,
    symmetric_square,
    trivial_module,
    two_dim_square,
)
from leibniz_kit.lie_tools import (
    ActionInvalid,
    ModuleAction,
    NotAutomorphism,
    NotLie,
    NotNilpotent,
    conjugator_candidates,
    derivations,
    equivariant_complement,
    exp_derivation,
    exp_nilpotent,
    hom_modules,
    inner_derivation,
    is_derivation,
    is_semisimple,
    killing_form,
    levi_decomposition,
    levi_factor_of_lie,
    levi_subalgebras_hemi,
    malcev_conjugator,
    module_from_adjoint_action,
    verify_conjugacy,
)
from leibniz_kit.linalg import Subspace, identity, mat_mul, matrices_equal, matrix, unit_vector, zeros


def test_cartan_criterion():
    assert is_semisimple(sl(2))
    assert is_semisimple(sl(3))
    assert not is_semisimple(affine_line())
    assert not is_semisimple(heisenberg())
    with pytest.raises(NotLie):
        killing_form(two_dim_square())


def test_sl2_killing_form_values():
    form = killing_form(sl(2))
    e, h, f = (unit_vector(3, i) for i in range(3))
    assert form.value(h, h) == 8
    assert form.value(e, f) == 4
    assert form.value(e, e) == 0


def test_action_must_respect_the_bracket():
    with pytest.raises(ActionInvalid):
        ModuleAction(sl(2), 2, (identity(2),) * 3)
    with pytest.raises(ActionInvalid):
        ModuleAction(two_dim_square(), 1, (zeros(1, 1),) * 2)


def test_intertwiner_spaces():
    s = sl(2)
    assert len(hom_modules(s, adjoint_module(s), adjoint_module(s))) == 1
    assert hom_modules(s, adjoint_module(s), natural_module(2)) == []
    assert len(hom_modules(s, trivial_module(s, 2), trivial_module(s, 1))) == 2


def test_equivariant_complement_of_trivial_summand():
    s = sl(2)
    natural = natural_module(2)
    # natural plus a trivial line on the last coordinate
    rho = tuple(_pad(m) for m in natural.rho)
    module = ModuleAction(s, 3, rho)
    line = Subspace.span([unit_vector(3, 2)], 3)
    complement = equivariant_complement(s, module, line)
    assert complement.dim == 2
    assert module.is_invariant(complement)
    assert (complement & line).dim == 0


def _pad(m):
    from leibniz_kit.linalg import matrix, rows_of

    rows = [list(row) + [0] for row in rows_of(m)]
    return matrix(rows + [[0, 0, 0]], cols=3)


def test_levi_factor_of_reductive_sum():
    total = orthogonal_sum(sl(2), heisenberg())
    factor = levi_factor_of_lie(total)
    assert factor.dim == 3
    assert is_closed(total, factor)
    assert (factor & solvable_radical(total)).dim == 0


def test_levi_decomposition_of_adjoint_hemisemidirect():
    hemi = adjoint_hemisemidirect(sl(2))
    decomposition = levi_decomposition(hemi)
    assert decomposition.radical == leibniz_kernel(hemi)
    assert decomposition.levi.dim == 3
    assert is_closed(hemi, decomposition.levi)
    assert levi_decomposition(affine_line()).levi.dim == 0


def test_levi_family_of_adjoint_hemisemidirect_is_a_line():
    family = levi_subalgebras_hemi(sl(2), adjoint_module(sl(2)))
    assert family.dim == 1
    base, other = family.member([0]), family.member([1])
    assert base != other
    conjugator = malcev_conjugator(family.algebra, base, other)
    f = conjugator.derivation
    assert is_derivation(family.algebra, f)
    assert all(x == 0 for row in mat_mul(f, f).to_list() for x in row)
    assert verify_conjugacy(family.algebra, conjugator.automorphism, base, other)


def test_derivations_of_sl2_are_inner():
    s = sl(2)
    basis = derivations(s)
    assert len(basis) == 3
    assert all(is_derivation(s, d) for d in basis)
    assert is_derivation(s, inner_derivation(s, unit_vector(3, 0)))


def test_exponential_of_nilpotent_derivation_is_an_automorphism():
    s = sl(2)
    ad_e = inner_derivation(s, unit_vector(3, 0))
    automorphism = AlgebraHom(s, s, exp_nilpotent(ad_e))
    assert automorphism.is_isomorphism()
    assert matrices_equal(exp_nilpotent(zeros(2, 2)), identity(2))
    with pytest.raises(NotNilpotent):
        exp_nilpotent(identity(2))


def test_adjoint_action_on_the_kernel():
    hemi = adjoint_hemisemidirect(sl(2))
    levi = Subspace.span([unit_vector(6, i) for i in range(3)], 6)
    module = module_from_adjoint_action(hemi, levi, leibniz_kernel(hemi))
    assert module.carrier_dim == 3
    assert len(hom_modules(module.algebra, adjoint_module(module.algebra), module)) == 1


def test_exp_derivation_checks_its_input():
    s = sl(2)
    assert exp_derivation(s, inner_derivation(s, unit_vector(3, 2))).is_isomorphism()
    with pytest.raises(ValueError):
        exp_derivation(s, identity(3))


def test_zero_map_is_not_an_automorphism():
    s = sl(2)
    with pytest.raises(NotAutomorphism):
        verify_conjugacy(s, zeros(3, 3), s.full(), s.full())


def test_conjugator_candidates_are_automorphisms():
    hemi = adjoint_hemisemidirect(sl(2))
    candidates = list(conjugator_candidates(hemi))
    assert candidates
    assert all(c.is_isomorphism() for c in candidates)


def test_no_candidate_moves_the_lifted_root_sl2_into_the_levi_factor():
    example = root_sl2_example()
    candidates = list(conjugator_candidates(example.algebra))
    assert candidates
    assert not any(verify_conjugacy(example.algebra, c, example.lifted, example.levi) for c in candidates)
    assert verify_conjugacy(example.algebra, identity(14), example.root_sl2, example.levi)


@pytest.mark.parametrize("module", [adjoint_module(sl(2)), symmetric_square(natural_module(2))])
@pytest.mark.parametrize("seed", range(8))
def test_random_levi_pairs_are_conjugate(module, seed):
    family = levi_subalgebras_hemi(module.algebra, module)
    rng = np.random.default_rng(seed)
    a, b = rng.choice(np.arange(-6, 7), size=2, replace=False)
    first, second = family.member([int(a)]), family.member([int(b)])
    assert first != second
    conjugator = malcev_conjugator(family.algebra, first, second)
    f = conjugator.derivation
    assert conjugator.prefix is None
    assert is_derivation(family.algebra, f)
    assert all(x == 0 for row in mat_mul(f, f).to_list() for x in row)
    assert verify_conjugacy(family.algebra, conjugator.automorphism, first, second)


def _affine_sl2():
    """``sl_2`` acting on the plane, as 3x3 matrices with the plane in the last column."""

    def unit(i, j):
        return matrix([[1 if (r, c) == (i, j) else 0 for c in range(3)] for r in range(3)], cols=3)

    h = matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]], cols=3)
    return matrix_lie_algebra([("e", unit(0, 1)), ("h", h), ("f", unit(1, 0)), ("v1", unit(0, 2)), ("v2", unit(1, 2))])


def test_conjugator_uses_an_inner_prefix_when_levi_factors_differ_modulo_the_kernel():
    algebra = _affine_sl2()
    assert leibniz_kernel(algebra).dim == 0
    first = Subspace.span([unit_vector(5, i) for i in range(3)], 5)
    shift = AlgebraHom(algebra, algebra, exp_nilpotent(inner_derivation(algebra, unit_vector(5, 3))))
    second = shift.image_of(first)
    assert first != second
    conjugator = malcev_conjugator(algebra, first, second)
    assert conjugator.prefix is not None
    assert conjugator.automorphism.image_of(first) == second
    assert verify_conjugacy(algebra, conjugator.automorphism, first, second)
