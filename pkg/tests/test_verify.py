import pytest

from leibniz_kit.algebra import classify, orthogonal_sum
from leibniz_kit.constructions import (
    adjoint_hemisemidirect,
    anisotropic_plane,
    coadjoint_quintuple,
    hemisemidirect,
    minimal_quintuple,
    natural_module,
    reduced_quintuple_algebra,
    root_sl2_example,
    sl,
    two_dim_square,
)
from leibniz_kit.corpus import builtin_corpus, entry_from_recipe
from leibniz_kit.linalg import Subspace, unit_vector
from leibniz_kit.pairing import check_associative, form_radical, is_totally_isotropic, pair
from leibniz_kit.verify import (
    CLAIM_NAMES,
    CLAIMS,
    FieldLimited,
    PreconditionFailed,
    Status,
    associativity_check,
    hierarchy_witnesses,
    isotropic_ideal_check,
    levi_conjugacy_check,
    lie_subalgebra_equivalences,
    maximal_lie_sample,
    nilpotent_lagrangian,
    no_semisimple_ideal_check,
    quintuple_radical_check,
    radical_complement_check,
    resolve_claim,
    run_claim,
    symmetric_criterion,
    symmetric_decomposition,
    symmetric_quotients,
    verify_radical_intersection,
    worst_status,
)


def reduced(name="minimal"):
    q = minimal_quintuple() if name == "minimal" else coadjoint_quintuple(sl(2))
    return reduced_quintuple_algebra(q)[0]


def test_status_ordering_and_exit_codes():
    assert worst_status([Status.VERIFIED, Status.FIELD_LIMITED]) is Status.FIELD_LIMITED
    assert worst_status([Status.SKIPPED, Status.REFUTED]) is Status.REFUTED
    assert worst_status([]) is Status.SKIPPED
    assert Status.REFUTED.exit_code == 1
    assert Status.FIELD_LIMITED.exit_code == 2
    assert Status.SKIPPED.exit_code == 0


def test_hierarchy_has_one_witness_per_level():
    entries, report = hierarchy_witnesses()
    assert report.status is Status.VERIFIED
    assert [classify(e.algebra).level for e in entries] == [4, 3, 2, 1]


def test_associativity():
    assert associativity_check(two_dim_square()).status is Status.VERIFIED
    assert associativity_check(reduced("sl2")).status is Status.VERIFIED
    hemi = hemisemidirect(sl(2), natural_module(2))
    report = associativity_check(hemi)
    assert report.status is Status.SKIPPED
    assert report.details["associative"] is False
    i, j, k = report.witnesses["triple"]
    assert report.witnesses["triple"] == check_associative(hemi).witness
    c = hemi.structure
    assert pair(hemi, c[i][j], hemi.unit(k)) != pair(hemi, hemi.unit(i), c[j][k])


def test_span_of_square_root_fails_all_three_conditions():
    a = two_dim_square()
    report = lie_subalgebra_equivalences(a, Subspace.span([unit_vector(2, 0)], 2))
    assert report.status is Status.SKIPPED
    assert report.details["lie_subalgebra"] is False
    assert report.details["totally_isotropic"] is False
    assert report.details["lie_with_radical"] is False


def test_radical_is_a_lie_subalgebra():
    a = reduced()
    report = lie_subalgebra_equivalences(a, form_radical(a))
    assert report.status is Status.VERIFIED
    assert all(report.details.values())


def test_isotropic_ideal():
    a = reduced()
    assert isotropic_ideal_check(a, form_radical(a)).status is Status.VERIFIED
    with pytest.raises(PreconditionFailed):
        isotropic_ideal_check(a, a.full())


def test_no_semisimple_ideal():
    for algebra in (reduced(), reduced("sl2"), sl(2), two_dim_square()):
        assert no_semisimple_ideal_check(algebra).status is Status.VERIFIED


def test_maximal_lie_sample_is_isotropic_and_contains_radical():
    a = reduced()
    for seed in range(5):
        sample = maximal_lie_sample(a, seed=seed)
        assert sample.dim == 2
        assert form_radical(a) <= sample
        assert is_totally_isotropic(a, sample)


def test_sampling_is_reproducible():
    a = reduced()
    assert maximal_lie_sample(a, seed=7) == maximal_lie_sample(a, seed=7)


def test_anisotropic_quotient_samples_only_the_radical():
    a = anisotropic_plane()
    assert maximal_lie_sample(a, seed=0) == form_radical(a)
    assert verify_radical_intersection(a, trials=2).status is Status.VERIFIED


def test_radical_intersection():
    report = verify_radical_intersection(reduced(), trials=20, seed=0)
    assert report.status is Status.VERIFIED
    assert report.details["trace"][-1] == 1


def test_radical_complement():
    for algebra in (reduced(), reduced("sl2"), two_dim_square()):
        assert radical_complement_check(algebra).status is Status.VERIFIED
    for algebra in (sl(2), orthogonal_sum(two_dim_square(), two_dim_square())):
        report = radical_complement_check(algebra)
        assert report.status is Status.SKIPPED
        assert report.details["reason"] == "rank is not one"


def test_nilpotent_lagrangian():
    lagrangian, report = nilpotent_lagrangian(reduced())
    assert report.status is Status.VERIFIED
    assert lagrangian.dim == 2
    lagrangian, report = nilpotent_lagrangian(reduced("sl2"))
    assert report.status is Status.VERIFIED
    assert lagrangian.dim == 4


def test_symmetric_criterion():
    for entry in builtin_corpus():
        report = symmetric_criterion(entry.algebra)
        assert report.status in (Status.VERIFIED, Status.SKIPPED), entry.id


def test_symmetric_decomposition_of_minimal_example():
    result = symmetric_decomposition(reduced())
    assert result.report.status is Status.VERIFIED
    assert result.ideal.dim == 3
    assert result.isomorphism.is_isomorphism()
    assert result.quintuple.common_dim == 1


def test_symmetric_decomposition_with_odd_codimension():
    result = symmetric_decomposition(two_dim_square())
    assert result.report.status is Status.VERIFIED
    assert result.report.details["codim"] == 1


def test_symmetric_decomposition_over_anisotropic_plane_is_field_limited():
    with pytest.raises(FieldLimited):
        symmetric_decomposition(anisotropic_plane())


def test_quintuple_claims():
    for q in (minimal_quintuple(), coadjoint_quintuple(sl(2))):
        assert quintuple_radical_check(q).status is Status.VERIFIED
        assert symmetric_quotients(q).status is Status.VERIFIED


def test_levi_conjugacy():
    report = levi_conjugacy_check(adjoint_hemisemidirect(sl(2)))
    assert report.status is Status.VERIFIED
    assert report.details["family_dim"] == 1
    assert report.details["inner_invariance"] is True


def test_levi_factor_of_root_example_is_unique():
    report = levi_conjugacy_check(root_sl2_example().algebra)
    assert report.status is Status.VERIFIED
    assert report.details["family_dim"] == 0
    assert report.details["levi_dim"] == 8


def test_run_claim_maps_limitations_to_statuses():
    plane = entry_from_recipe("anisotropic-plane")
    assert run_claim("symmetric-decomposition", plane).status is Status.FIELD_LIMITED
    hemi = entry_from_recipe("hemisemidirect-adjoint:2")
    assert run_claim("radical-intersection", hemi).status is Status.SKIPPED
    assert run_claim("quintuple-radical", entry_from_recipe("sl:2")).status is Status.SKIPPED
    report = run_claim("quintuple-radical", entry_from_recipe("reduced:coadjoint-sl2"))
    assert report.status is Status.VERIFIED
    assert report.subject == "reduced-coadjoint-sl2"


def test_run_claim_rejects_unknown_claims():
    with pytest.raises(KeyError):
        run_claim("no-such-claim", entry_from_recipe("sl:2"))


@pytest.mark.parametrize("claim", CLAIMS)
def test_every_claim_holds_on_the_minimal_example(claim):
    report = run_claim(claim, entry_from_recipe("reduced:minimal"), trials=20)
    assert report.status is Status.VERIFIED, report.details


def test_report_serializes_exact_values():
    a = reduced()
    report = isotropic_ideal_check(a, a.full().intersect(form_radical(a)))
    report.witnesses["ideal"] = form_radical(a)
    data = report.to_dict()
    assert data["status"] == "verified"
    assert data["witnesses"]["ideal"] == {"dim": 1, "basis": [["0", "1", "0"]]}
    assert "isotropic-ideal" in report.render_text()


def test_claims_use_frozen_ids_and_accept_descriptive_names():
    assert CLAIMS[0] == "lemma-4.1"
    assert "prop-4.1" in CLAIMS and "thm-6.3" in CLAIMS
    assert resolve_claim("prop-4.1") == "prop-4.1"
    assert resolve_claim("radical-intersection") == "prop-4.1"
    with pytest.raises(KeyError):
        resolve_claim("radical")
    report = run_claim("radical-intersection", entry_from_recipe("reduced:minimal"), seed=7, trials=20)
    assert report.claim == "prop-4.1"
    assert report.name == CLAIM_NAMES["prop-4.1"] == "radical-intersection"
    assert report.to_dict()["claim"] == "prop-4.1"
