import dataclasses

import pytest

from leibniz_kit.algebra import classify, is_closed, leibniz_kernel
from leibniz_kit.constructions import (
    InvalidQuintuple,
    abelian,
    adjoint_hemisemidirect,
    anisotropic_plane,
    coadjoint_quintuple,
    heisenberg_quintuple,
    identified_common_ideal,
    is_symmetric_quintuple,
    minimal_quintuple,
    natural_module,
    quintuple_algebra,
    reduced_quintuple_algebra,
    restrict_action,
    root_sl2_example,
    sl,
    sl_basis,
    symmetric_square,
    validate_quintuple,
)
from leibniz_kit.linalg import Subspace, unit_vector, zeros
from leibniz_kit.pairing import form_radical, rank


def test_sl_basis_layout():
    labels = [label for label, _ in sl_basis(3)]
    assert labels == ["E12", "E13", "E23", "H1", "H2", "E21", "E31", "E32"]
    assert sl(3).dim == 8
    assert classify(sl(3)).lie


def test_symmetric_square_dimension():
    module = symmetric_square(natural_module(3))
    assert module.carrier_dim == 6
    assert module.labels[0] == "v1v1"


def test_restricted_action_is_a_module():
    line = Subspace.span([unit_vector(3, 1)], 3)
    module = restrict_action(natural_module(2), line)
    assert module.algebra.dim == 1


def test_root_sl2_example():
    example = root_sl2_example()
    assert example.algebra.dim == 14
    assert rank(example.algebra) == 6
    assert classify(example.algebra).level == 1
    assert example.lifted.dim == 3
    assert is_closed(example.algebra, example.lifted)
    assert not example.lifted <= example.levi
    assert example.root_sl2 <= example.levi


def test_adjoint_hemisemidirect():
    hemi = adjoint_hemisemidirect(sl(2))
    assert hemi.dim == 6
    assert leibniz_kernel(hemi).dim == 3
    assert classify(hemi).level == 1


def test_anisotropic_plane_is_symmetric_rank_one():
    a = anisotropic_plane()
    assert classify(a).level == 3
    assert rank(a) == 1


def test_minimal_quintuple_dimensions():
    q = minimal_quintuple()
    assert validate_quintuple(q).valid
    full = quintuple_algebra(q)
    reduced, projection = reduced_quintuple_algebra(q)
    assert full.dim == 4
    assert reduced.dim == 3
    assert projection.kernel() == identified_common_ideal(q)
    assert form_radical(full).dim == 2
    assert form_radical(reduced).dim == 1
    assert is_symmetric_quintuple(q)


def test_coadjoint_quintuples():
    q = coadjoint_quintuple(sl(2))
    assert validate_quintuple(q).valid
    assert not is_symmetric_quintuple(q)
    reduced, _ = reduced_quintuple_algebra(q)
    assert reduced.dim == 7
    assert classify(reduced).level == 2
    assert is_symmetric_quintuple(heisenberg_quintuple())
    assert validate_quintuple(coadjoint_quintuple(abelian(2))).valid


def test_degenerate_pairing_is_rejected():
    q = minimal_quintuple()
    broken = dataclasses.replace(q, pairing_map=tuple(zeros(2, 2) for _ in range(2)))
    report = validate_quintuple(broken)
    assert not report.valid
    assert "injective" in report.violation
    with pytest.raises(InvalidQuintuple) as excinfo:
        quintuple_algebra(broken)
    assert excinfo.value.report == report
