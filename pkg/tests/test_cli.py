import json

import pytest

from leibniz_kit.__main__ import main


@pytest.fixture
def run(tmp_path):
    config = tmp_path / "config.toml"

    def invoke(*args):
        return main([*args, "--config", str(config)])

    return invoke


def test_construct_then_analyze(run, tmp_path, capsys):
    out = tmp_path / "square.json"
    assert run("construct", "two-dim-square", "--out", str(out)) == 0
    stored = json.loads(out.read_text())
    assert stored["expected"] == {"level": 3, "rank": 1}
    capsys.readouterr()

    assert run("analyze", str(out), "--format", "json") == 0
    info = json.loads(capsys.readouterr().out)
    assert info["level"] == 3
    assert info["rank"] == 1
    assert info["radical"]["dim"] == 1
    assert info["kernel"]["dim"] == 1
    assert len(info["kernel"]["basis"]) == 1


def test_construct_to_stdout(run, capsys):
    assert run("construct", "heisenberg") == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 3


def test_construct_rejects_large_algebras(run):
    assert run("construct", "root-sl2", "--max-dim", "4") == 3


def test_verify_hierarchy_needs_no_file(run, capsys):
    assert run("verify", "hierarchy", "--format", "json") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "verified"


def test_verify_claim_on_entry(run, tmp_path, capsys):
    out = tmp_path / "minimal.json"
    assert run("construct", "reduced:minimal", "--out", str(out)) == 0
    assert run("verify", "thm-6.3", str(out)) == 0
    assert "verified" in capsys.readouterr().out


def test_field_limited_exit_code(run, tmp_path):
    out = tmp_path / "plane.json"
    assert run("construct", "anisotropic-plane", "--out", str(out)) == 0
    assert run("verify", "thm-6.3", str(out)) == 2


def test_malformed_input(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "field": "C", "brackets": []}')
    assert run("analyze", str(bad)) == 3
    assert run("verify", "lemma-4.6", str(tmp_path / "missing.json")) == 3
    assert run("verify", "lemma-4.6") == 3


def test_invalid_config_file(tmp_path):
    config = tmp_path / "config.toml"
    config.write_text("seed = ")
    assert main(["verify", "hierarchy", "--config", str(config)]) == 3


def test_witness_writes_entries(run, tmp_path):
    assert run("witness", "--out", str(tmp_path / "witnesses")) == 0
    assert len(list((tmp_path / "witnesses").glob("*.json"))) == 4


def test_verify_by_frozen_claim_id(run, tmp_path, capsys):
    out = tmp_path / "minimal.json"
    assert run("construct", "reduced:minimal", "--out", str(out)) == 0
    capsys.readouterr()
    assert run("verify", "prop-4.1", str(out), "--seed", "7", "--trials", "20", "--format", "json") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["claim"] == "prop-4.1"
    assert report["name"] == "radical-intersection"
    assert report["status"] == "verified"
    assert run("verify", "radical-intersection", str(out), "--seed", "7", "--trials", "20") == 0
    assert "prop-4.1" in capsys.readouterr().out


def test_usage_errors_exit_as_malformed(run, tmp_path):
    out = tmp_path / "minimal.json"
    assert run("construct", "reduced:minimal", "--out", str(out)) == 0
    assert run("verify", "no-such-claim", str(out)) == 3
    assert run("verify", "prop-4.1", str(out), "--trials", "many") == 3
    assert run("frobnicate") == 3
    assert main([]) == 3


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "leibniz-kit" in capsys.readouterr().out


def test_non_utf8_entry_is_malformed(run, tmp_path):
    garbled = tmp_path / "garbled.json"
    garbled.write_bytes(b"\xff\xfe{")
    assert run("analyze", str(garbled)) == 3
    assert run("verify", "prop-4.1", str(garbled)) == 3
