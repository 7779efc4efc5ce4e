from leibniz_kit.config import Config
from leibniz_kit.corpus import entry_from_recipe
from leibniz_kit.runner import PER_ENTRY_CLAIMS, CorpusRunner
from leibniz_kit.verify import Status


def test_entry_with_matching_expectations():
    runner = CorpusRunner(Config())
    result = runner.run_entry(entry_from_recipe("two-dim-square", expected={"level": 3, "rank": 1}))
    assert result.expectation_errors == []
    assert [r.claim for r in result.reports] == list(PER_ENTRY_CLAIMS)
    assert result.status is Status.VERIFIED


def test_wrong_expectation_is_refuted():
    runner = CorpusRunner(Config(), claims=["lemma-6.1"])
    result = runner.run_entry(entry_from_recipe("heisenberg", expected={"level": 2, "rank": 0}))
    assert result.expectation_errors == ["level 4, expected 2"]
    assert result.status is Status.REFUTED


def test_failing_entry_does_not_stop_the_batch():
    runner = CorpusRunner(Config(max_dim=3), claims=["lemma-4.1"])
    entries = [entry_from_recipe("sl:3"), entry_from_recipe("affine-line")]
    summary = runner.run(entries, include_hierarchy=False)
    assert [r.entry_id for r in summary.results] == ["sl-3", "affine-line"]
    assert summary.results[0].level == -1
    assert "unhandled error" in summary.results[0].expectation_errors[0]
    assert summary.results[1].status is Status.VERIFIED
    assert summary.status is Status.REFUTED


def test_summary_renders_table_and_counts():
    runner = CorpusRunner(Config(), claims=["symmetric-criterion"])
    summary = runner.run([entry_from_recipe("reduced:minimal")])
    assert summary.global_reports[0].claim == "hierarchy"
    assert summary.counts()["verified"] == 2
    text = summary.render_text()
    assert "reduced-minimal" in text
    assert text.splitlines()[-1].startswith("overall: verified")
    assert summary.to_dict()["status"] == "verified"
