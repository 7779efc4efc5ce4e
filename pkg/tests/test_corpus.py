import json

import pytest

from leibniz_kit.algebra import classify
from leibniz_kit.corpus import (
    BUILTIN,
    QUINTUPLES,
    RECIPES,
    CorpusFormatError,
    algebra_from_dict,
    algebra_to_dict,
    build_recipe,
    builtin_corpus,
    dumps_entry,
    entry_from_recipe,
    load_corpus_dir,
    load_entry,
    loads_entry,
    quintuple_for,
    save_entry,
)
from leibniz_kit.linalg import to_scalar
from leibniz_kit.pairing import rank


def test_entry_survives_serialization():
    entry = entry_from_recipe("reduced:coadjoint-affine", "coadjoint-affine-reduced", {"level": 2})
    again = loads_entry(dumps_entry(entry))
    assert again.algebra.structure == entry.algebra.structure
    assert again.algebra.labels == entry.algebra.labels
    assert again.id == "coadjoint-affine-reduced"
    assert again.recipe == "reduced:coadjoint-affine"
    assert again.expected == {"level": 2}


def test_key_order_and_rational_strings():
    algebra = algebra_from_dict({"dim": 2, "brackets": [[0, 0, [[1, "-3/6"]]]]})
    data = algebra_to_dict(algebra)
    assert data["brackets"] == [[0, 0, [[1, "-1/2"]]]]
    assert data["basis"] == ["e0", "e1"]
    text = dumps_entry(entry_from_recipe("two-dim-square"))
    assert list(json.loads(text)) == ["id", "dim", "field", "basis", "brackets", "provenance", "expected"]
    assert text.endswith("\n")


def test_json_errors_carry_position():
    with pytest.raises(CorpusFormatError) as excinfo:
        loads_entry('{\n  "dim": 2,\n  "brackets": [}\n')
    assert excinfo.value.line == 3
    assert excinfo.value.column is not None


@pytest.mark.parametrize(
    "payload, message",
    [
        ({"dim": -1}, "non-negative"),
        ({"dim": 2, "field": "C"}, "field"),
        ({"dim": 2, "basis": ["a"]}, "basis"),
        ({"dim": 2, "basis": ["a", "a"]}, "distinct"),
        ({"dim": 2, "brackets": [[0, 5, []]]}, "outside"),
        ({"dim": 2, "brackets": [[0, 0, [[1, "x"]]]]}, "rational"),
        ({"dim": 2, "brackets": [[0, 0, []], [0, 0, []]]}, "twice"),
        ({"dim": 2, "brackets": [[True, 0, [[0, "1"]]]]}, "integers"),
        ({"dim": 2, "brackets": [[0, False, [[0, "1"]]]]}, "integers"),
        ({"dim": 2, "brackets": [[0, 0, [[True, "1"]]]]}, "outside"),
    ],
)
def test_malformed_algebras(payload, message):
    with pytest.raises(CorpusFormatError, match=message):
        algebra_from_dict(payload)


def test_max_dim_is_enforced():
    with pytest.raises(CorpusFormatError, match="maximum"):
        algebra_from_dict({"dim": 5}, max_dim=4)


def test_recipes():
    assert build_recipe("sl:3").dim == 8
    assert build_recipe("abelian").dim == 1
    assert build_recipe("quintuple:heisenberg").dim == 6
    with pytest.raises(CorpusFormatError):
        build_recipe("nonsense")
    with pytest.raises(CorpusFormatError):
        build_recipe("reduced:missing")
    with pytest.raises(CorpusFormatError):
        build_recipe("sl:x")


def test_quintuple_for_uses_recipe():
    assert quintuple_for(entry_from_recipe("reduced:minimal")) is not None
    assert quintuple_for(entry_from_recipe("sl:2")) is None


def test_builtin_expectations_hold():
    entries = builtin_corpus()
    assert len(entries) == len(BUILTIN)
    for entry in entries:
        assert classify(entry.algebra).level == entry.expected["level"], entry.id
        assert rank(entry.algebra) == entry.expected["rank"], entry.id


def test_files_round_trip(tmp_path):
    entry = entry_from_recipe("anisotropic-plane", "plane")
    save_entry(entry, tmp_path / "plane.json")
    loaded = load_entry(tmp_path / "plane.json")
    assert loaded.algebra.bracket(loaded.algebra.unit(0), loaded.algebra.unit(0))[2] == to_scalar(1)
    assert [e.id for e in load_corpus_dir(tmp_path)] == ["plane"]
    assert load_corpus_dir(tmp_path / "missing") == []


def test_non_utf8_file_is_a_format_error(tmp_path):
    path = tmp_path / "garbled.json"
    path.write_bytes(b"\xff\xfe{")
    with pytest.raises(CorpusFormatError, match="UTF-8"):
        load_entry(path)


RECIPE_ARGUMENTS = {"abelian": "2", "sl": "2", "hemisemidirect-natural": "2", "hemisemidirect-adjoint": "2"}


@pytest.mark.parametrize(
    "recipe",
    [
        f"{name}:{arg}" if arg else name
        for name in RECIPES
        for arg in (QUINTUPLES if name in ("quintuple", "reduced") else [RECIPE_ARGUMENTS.get(name)])
    ],
)
def test_hierarchy_implications_hold_for_every_recipe(recipe):
    flags = classify(entry_from_recipe(recipe).algebra)
    assert not flags.lie or flags.symmetric
    assert not flags.symmetric or flags.left_central
    assert not flags.left_central or flags.left_leibniz
