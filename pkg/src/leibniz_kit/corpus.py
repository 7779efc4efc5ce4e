"""Corpus entries, their JSON serialization and the named construction recipes."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from leibniz_kit.algebra import LeibnizAlgebra
from leibniz_kit.constructions import (
    Quintuple,
    abelian,
    adjoint_hemisemidirect,
    affine_line,
    anisotropic_plane,
    coadjoint_quintuple,
    heisenberg,
    heisenberg_quintuple,
    hemisemidirect,
    minimal_quintuple,
    natural_module,
    quintuple_algebra,
    reduced_quintuple_algebra,
    root_sl2_example,
    sl,
    two_dim_square,
)
from leibniz_kit.linalg import scalar_str, to_scalar, zero_vector

LOGGER = logging.getLogger(__name__)

FIELD = "Q"


class CorpusFormatError(ValueError):
    """Malformed corpus input; JSON syntax errors carry a line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    algebra: LeibnizAlgebra
    provenance: dict[str, Any] = field(default_factory=dict)
    expected: dict[str, Any] = field(default_factory=dict)

    @property
    def recipe(self) -> str | None:
        return self.provenance.get("recipe")


# Serialization --------------------------------------------------------------------
def algebra_to_dict(algebra: LeibnizAlgebra) -> dict[str, Any]:
    brackets = []
    for i, row in enumerate(algebra.structure):
        for j, value in enumerate(row):
            terms = [[k, scalar_str(x)] for k, x in enumerate(value) if x]
            if terms:
                brackets.append([i, j, terms])
    return {"dim": algebra.dim, "field": FIELD, "basis": list(algebra.labels), "brackets": brackets}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CorpusFormatError(message)


def _is_index(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def algebra_from_dict(data: Any, *, max_dim: int | None = None) -> LeibnizAlgebra:
    _require(isinstance(data, dict), "top level must be a JSON object")
    dim = data.get("dim")
    _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0, "dim must be a non-negative integer")
    if max_dim is not None and dim > max_dim:
        raise CorpusFormatError(f"dim {dim} exceeds the maximum dimension {max_dim}")
    _require(data.get("field", FIELD) == FIELD, f"field must be {FIELD!r}")
    basis = data.get("basis", [f"e{i}" for i in range(dim)])
    _require(
        isinstance(basis, list) and len(basis) == dim and all(isinstance(b, str) for b in basis),
        "basis must list one name per dimension",
    )
    _require(len(set(basis)) == len(basis), "basis names must be distinct")
    brackets = data.get("brackets", [])
    _require(isinstance(brackets, list), "brackets must be a list")
    table = [[list(zero_vector(dim)) for _ in range(dim)] for _ in range(dim)]
    seen: set[tuple[int, int]] = set()
    for item in brackets:
        _require(isinstance(item, list) and len(item) == 3, "each bracket must be [i, j, terms]")
        i, j, terms = item
        _require(_is_index(i) and _is_index(j), "bracket indices must be integers")
        _require(0 <= i < dim and 0 <= j < dim, f"bracket index ({i}, {j}) outside dimension {dim}")
        _require((i, j) not in seen, f"bracket ({i}, {j}) given twice")
        seen.add((i, j))
        _require(isinstance(terms, list), "bracket terms must be a list")
        for term in terms:
            _require(isinstance(term, list) and len(term) == 2, "each term must be [k, coefficient]")
            k, coeff = term
            _require(_is_index(k) and 0 <= k < dim, f"output index {k!r} outside dimension {dim}")
            _require(isinstance(coeff, (str, int)) and not isinstance(coeff, bool), "coefficients must be strings")
            try:
                table[i][j][k] = to_scalar(coeff)
            except ValueError as exc:
                raise CorpusFormatError(str(exc)) from exc
    structure = tuple(tuple(tuple(v) for v in row) for row in table)
    return LeibnizAlgebra(dim, structure, tuple(basis))


def dumps_entry(entry: CorpusEntry) -> str:
    payload: dict[str, Any] = {"id": entry.id}
    payload.update(algebra_to_dict(entry.algebra))
    payload["provenance"] = entry.provenance
    payload["expected"] = entry.expected
    return json.dumps(payload, indent=2) + "\n"


def loads_entry(text: str, *, default_id: str = "entry", max_dim: int | None = None) -> CorpusEntry:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(exc.msg, exc.lineno, exc.colno) from exc
    algebra = algebra_from_dict(data, max_dim=max_dim)
    entry_id = data.get("id", default_id)
    provenance = data.get("provenance", {})
    expected = data.get("expected", {})
    _require(isinstance(entry_id, str), "id must be a string")
    _require(isinstance(provenance, dict) and isinstance(expected, dict), "provenance and expected must be objects")
    return CorpusEntry(entry_id, algebra, provenance, expected)


def load_entry(path: Path, *, max_dim: int | None = None) -> CorpusEntry:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(f"{path} is not UTF-8 text: {exc.reason} at byte {exc.start}") from exc
    return loads_entry(text, default_id=path.stem, max_dim=max_dim)


def save_entry(entry: CorpusEntry, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_entry(entry), encoding="utf-8")
    LOGGER.info("Wrote %s", path)


# Recipes --------------------------------------------------------------------------
QUINTUPLES: dict[str, Callable[[], Quintuple]] = {
    "minimal": minimal_quintuple,
    "heisenberg": heisenberg_quintuple,
    "coadjoint-abelian2": lambda: coadjoint_quintuple(abelian(2, ("a", "b"))),
    "coadjoint-affine": lambda: coadjoint_quintuple(affine_line()),
    "coadjoint-sl2": lambda: coadjoint_quintuple(sl(2)),
}


def _size(arg: str | None, default: int) -> int:
    try:
        return int(arg) if arg else default
    except ValueError as exc:
        raise CorpusFormatError(f"recipe argument must be an integer, got {arg!r}") from exc


def _quintuple(arg: str | None) -> Quintuple:
    if arg not in QUINTUPLES:
        raise CorpusFormatError(f"unknown quintuple {arg!r}; choose from {', '.join(QUINTUPLES)}")
    return QUINTUPLES[arg]()


RECIPES: dict[str, Callable[[str | None], LeibnizAlgebra]] = {
    "abelian": lambda arg: abelian(_size(arg, 1)),
    "sl": lambda arg: sl(_size(arg, 2)),
    "two-dim-square": lambda arg: two_dim_square(),
    "affine-line": lambda arg: affine_line(),
    "heisenberg": lambda arg: heisenberg(),
    "anisotropic-plane": lambda arg: anisotropic_plane(),
    "hemisemidirect-natural": lambda arg: hemisemidirect(sl(_size(arg, 2)), natural_module(_size(arg, 2))),
    "hemisemidirect-adjoint": lambda arg: adjoint_hemisemidirect(sl(_size(arg, 2))),
    "root-sl2": lambda arg: root_sl2_example().algebra,
    "quintuple": lambda arg: quintuple_algebra(_quintuple(arg)),
    "reduced": lambda arg: reduced_quintuple_algebra(_quintuple(arg))[0],
}


def split_recipe(recipe: str) -> tuple[str, str | None]:
    name, _, arg = recipe.partition(":")
    return name, arg or None


def build_recipe(recipe: str) -> LeibnizAlgebra:
    name, arg = split_recipe(recipe)
    if name not in RECIPES:
        raise CorpusFormatError(f"unknown recipe {name!r}; choose from {', '.join(RECIPES)}")
    return RECIPES[name](arg)


def entry_from_recipe(recipe: str, entry_id: str | None = None, expected: dict[str, Any] | None = None) -> CorpusEntry:
    algebra = build_recipe(recipe)
    return CorpusEntry(entry_id or recipe.replace(":", "-"), algebra, {"recipe": recipe}, dict(expected or {}))


def quintuple_for(entry: CorpusEntry) -> Quintuple | None:
    """The quintuple an entry was built from, when its recipe records one."""
    if entry.recipe is None:
        return None
    name, arg = split_recipe(entry.recipe)
    if name in ("quintuple", "reduced") and arg in QUINTUPLES:
        return QUINTUPLES[arg]()
    return None


# (id, recipe, classification level, rank)
BUILTIN = (
    ("abelian-3", "abelian:3", 4, 0),
    ("sl2", "sl:2", 4, 0),
    ("affine-line", "affine-line", 4, 0),
    ("heisenberg", "heisenberg", 4, 0),
    ("two-dim-square", "two-dim-square", 3, 1),
    ("anisotropic-plane", "anisotropic-plane", 3, 1),
    ("sl2-natural", "hemisemidirect-natural:2", 1, 2),
    ("sl2-adjoint", "hemisemidirect-adjoint:2", 1, 3),
    ("minimal-quintuple", "quintuple:minimal", 3, 1),
    ("minimal-reduced", "reduced:minimal", 3, 1),
    ("heisenberg-reduced", "reduced:heisenberg", 3, 1),
    ("coadjoint-abelian2-reduced", "reduced:coadjoint-abelian2", 3, 1),
    ("coadjoint-affine-reduced", "reduced:coadjoint-affine", 2, 1),
    ("coadjoint-sl2-reduced", "reduced:coadjoint-sl2", 2, 1),
    ("root-sl2", "root-sl2", 1, 6),
)


def builtin_corpus() -> list[CorpusEntry]:
    return [
        entry_from_recipe(recipe, entry_id, {"level": level, "rank": rank})
        for entry_id, recipe, level, rank in BUILTIN
    ]


def load_corpus_dir(directory: Path, *, max_dim: int | None = None) -> list[CorpusEntry]:
    directory = Path(directory)
    if not directory.is_dir():
        LOGGER.warning("Corpus directory %s does not exist", directory)
        return []
    return [load_entry(path, max_dim=max_dim) for path in sorted(directory.glob("*.json"))]
