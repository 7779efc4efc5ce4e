"""Exact rational linear algebra: scalars, matrices and canonical subspaces.

Scalars are elements of sympy's ``QQ`` domain and matrices are ``DomainMatrix``
instances over ``QQ``. Vectors are plain tuples of scalars. A :class:`Subspace`
keeps its basis in reduced row-echelon form, so two equal subspaces always
compare equal field by field.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

LOGGER = logging.getLogger(__name__)

Scalar = type(QQ.one)
Vector = tuple
Matrix = DomainMatrix


class DimensionMismatch(ValueError):
    """Raised when vectors, matrices or subspaces have incompatible sizes."""


class Unsolvable(ValueError):
    """Raised when a linear system has no solution."""


class NotASubspace(ValueError):
    """Raised when a containment required by an operation does not hold."""


# Scalars ------------------------------------------------------------------
def to_scalar(value: object) -> Scalar:
    """Convert ints, fractions, canonical ``"p/q"`` strings and domain elements."""
    if isinstance(value, str):
        numerator, _, denominator = value.strip().partition("/")
        try:
            return QQ(int(numerator), int(denominator or 1))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def scalar_str(value: Scalar) -> str:
    """Canonical text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


# Vectors ------------------------------------------------------------------
def vector(values: Iterable[object]) -> Vector:
    return tuple(to_scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (QQ.zero,) * n


def unit_vector(n: int, index: int) -> Vector:
    return tuple(QQ.one if k == index else QQ.zero for k in range(n))


def is_zero(v: Sequence[Scalar]) -> bool:
    return all(x == 0 for x in v)


def add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot add vectors of length {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot subtract vectors of length {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c: object, v: Vector) -> Vector:
    c = to_scalar(c)
    return tuple(c * x for x in v)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot product of lengths {len(u)} and {len(v)}")
    total = QQ.zero
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def combine(coefficients: Sequence[object], vectors: Sequence[Vector], n: int) -> Vector:
    """Linear combination ``sum(c_i * v_i)`` in an ``n``-dimensional space."""
    out = [QQ.zero] * n
    for c, v in zip(coefficients, vectors):
        c = to_scalar(c)
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x:
                out[k] += c * x
    return tuple(out)


# Matrices -----------------------------------------------------------------
def matrix(rows: Iterable[Iterable[object]], cols: int | None = None) -> Matrix:
    data = [[to_scalar(x) for x in row] for row in rows]
    width = len(data[0]) if data else (cols or 0)
    if cols is not None and data and width != cols:
        raise DimensionMismatch(f"expected {cols} columns, got {width}")
    if any(len(row) != width for row in data):
        raise DimensionMismatch("ragged matrix rows")
    return DomainMatrix(data, (len(data), width), QQ)


def from_columns(columns: Sequence[Vector], rows: int) -> Matrix:
    if any(len(c) != rows for c in columns):
        raise DimensionMismatch(f"columns must have length {rows}")
    return matrix([[c[i] for c in columns] for i in range(rows)], cols=len(columns))


def zeros(rows: int, cols: int) -> Matrix:
    return matrix([[0] * cols for _ in range(rows)], cols=cols)


def identity(n: int) -> Matrix:
    return matrix([unit_vector(n, i) for i in range(n)], cols=n)


def rows_of(m: Matrix) -> list[Vector]:
    if m.shape[0] == 0:
        return []
    return [tuple(row) for row in m.to_list()]


def columns_of(m: Matrix) -> list[Vector]:
    rows = rows_of(m)
    return [tuple(row[j] for row in rows) for j in range(m.shape[1])]


def matrices_equal(a: Matrix, b: Matrix) -> bool:
    return a.shape == b.shape and rows_of(a) == rows_of(b)


def is_zero_matrix(m: Matrix) -> bool:
    return all(is_zero(row) for row in rows_of(m))


def mat_vec(m: Matrix, v: Sequence[Scalar]) -> Vector:
    rows, cols = m.shape
    if len(v) != cols:
        raise DimensionMismatch(f"matrix with {cols} columns applied to vector of length {len(v)}")
    return tuple(dot(row, v) for row in rows_of(m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.shape[0], b.shape[1])
    return a * b


def mat_scale(c: object, m: Matrix) -> Matrix:
    c = to_scalar(c)
    return matrix([[c * x for x in row] for row in rows_of(m)], cols=m.shape[1])


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    return matrix([add(r, s) for r, s in zip(rows_of(a), rows_of(b))], cols=a.shape[1])


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot subtract {a.shape} and {b.shape}")
    return matrix([sub(r, s) for r, s in zip(rows_of(a), rows_of(b))], cols=a.shape[1])


def linear_sum(coefficients: Sequence[object], matrices: Sequence[Matrix], shape: tuple[int, int]) -> Matrix:
    rows, cols = shape
    flat = combine(coefficients, [sum(rows_of(m), ()) for m in matrices], rows * cols)
    return matrix([flat[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)


def stack(blocks: Sequence[Matrix], cols: int) -> Matrix:
    """Vertical concatenation; tolerates empty blocks."""
    rows: list[Vector] = []
    for block in blocks:
        if block.shape[1] != cols:
            raise DimensionMismatch(f"block with {block.shape[1]} columns, expected {cols}")
        rows.extend(rows_of(block))
    return matrix(rows, cols=cols)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def rank(m: Matrix) -> int:
    if 0 in m.shape:
        return 0
    return m.rank()


def determinant(m: Matrix) -> Scalar:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch("determinant of a non-square matrix")
    if m.shape[0] == 0:
        return QQ.one
    return m.det()


def inverse(m: Matrix) -> Matrix:
    if determinant(m) == 0:
        raise Unsolvable("matrix is singular")
    if m.shape[0] == 0:
        return m
    return m.inv()


def rref_with_pivots(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    if 0 in m.shape:
        return m, ()
    reduced, pivots = m.rref()
    return reduced, tuple(pivots)


def rref(m: Matrix) -> Matrix:
    """The unique reduced row-echelon form of ``m`` (same shape, zero rows kept)."""
    return rref_with_pivots(m)[0]


@dataclass(frozen=True)
class SolutionSet:
    """All solutions of ``a x = b``: ``particular + kernel`` column by column."""

    particular: Matrix
    kernel: "Subspace"


def solve(a: Matrix, b: Matrix) -> SolutionSet:
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise DimensionMismatch(f"right-hand side has {b.shape[0]} rows, system has {rows}")
    width = b.shape[1]
    augmented = matrix(
        [ra + rb for ra, rb in zip(rows_of(a), rows_of(b))], cols=cols + width
    )
    reduced, pivots = rref_with_pivots(augmented)
    if any(p >= cols for p in pivots):
        raise Unsolvable("right-hand side is not in the image")
    particular = [[QQ.zero] * width for _ in range(cols)]
    reduced_rows = rows_of(reduced)
    for r, p in enumerate(pivots):
        particular[p] = list(reduced_rows[r][cols:])
    return SolutionSet(matrix(particular, cols=width), null_space(a))


def solve_vector(a: Matrix, b: Sequence[Scalar]) -> Vector:
    """A particular solution of ``a x = b`` for a single right-hand side."""
    solution = solve(a, matrix([[x] for x in b], cols=1))
    return tuple(row[0] for row in rows_of(solution.particular))


def null_space(a: Matrix) -> "Subspace":
    rows, cols = a.shape
    if rows == 0:
        return Subspace.full(cols)
    if cols == 0:
        return Subspace.zero(0)
    return Subspace.span(rows_of(a.nullspace()), cols)


def image(a: Matrix) -> "Subspace":
    return Subspace.span(columns_of(a), a.shape[0])


def express(basis: Sequence[Vector], v: Sequence[Scalar]) -> Vector:
    """Coordinates of ``v`` in an arbitrary linearly independent ``basis``."""
    n = len(v)
    if not basis:
        if not is_zero(v):
            raise NotASubspace("nonzero vector in the zero space")
        return ()
    try:
        return solve_vector(from_columns(list(basis), n), v)
    except Unsolvable as exc:
        raise NotASubspace("vector outside the span of the basis") from exc


# Subspaces ----------------------------------------------------------------
def _is_rref(rows: Sequence[Vector]) -> bool:
    """Nonzero rows, increasing unit pivots, zeros above and below each pivot."""
    pivots = []
    for row in rows:
        p = next((k for k, x in enumerate(row) if x != 0), None)
        if p is None or row[p] != 1 or (pivots and p <= pivots[-1]):
            return False
        pivots.append(p)
    return all(other[p] == 0 for p, row in zip(pivots, rows) for other in rows if other is not row)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``QQ^ambient_dim`` with its canonical (rref) basis rows."""

    ambient_dim: int
    rows: tuple[Vector, ...]

    def __post_init__(self) -> None:
        vecs = tuple(vector(v) for v in self.rows)
        if any(len(v) != self.ambient_dim for v in vecs):
            raise DimensionMismatch(f"vectors must have length {self.ambient_dim}")
        if not _is_rref(vecs):
            reduced = rows_of(rref(matrix(vecs, cols=self.ambient_dim))) if self.ambient_dim else ()
            vecs = tuple(row for row in reduced if not is_zero(row))
        object.__setattr__(self, "rows", vecs)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[object]], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return matrix(self.rows, cols=self.ambient_dim)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(row) if x != 0) for row in self.rows)

    def _check(self, v: Sequence[object]) -> None:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")

    def _check_ambient(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} and {other.ambient_dim}"
            )

    def reduce(self, v: Sequence[object]) -> Vector:
        """``v`` minus its component along the basis; zero exactly on members."""
        self._check(v)
        out = list(vector(v))
        for row, p in zip(self.rows, self.pivots):
            c = out[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        out[k] -= c * x
        return tuple(out)

    def contains(self, v: Sequence[object]) -> bool:
        return is_zero(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence[object]) -> Vector:
        """Coordinates of ``v`` with respect to the rref basis rows."""
        if not self.contains(v):
            raise NotASubspace("vector is not in the subspace")
        v = vector(v)
        return tuple(v[p] for p in self.pivots)

    def from_coordinates(self, coords: Sequence[object]) -> Vector:
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        return combine(coords, self.rows, self.ambient_dim)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(other.contains(row) for row in self.rows)

    __le__ = is_subspace_of

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(self.rows + other.rows, self.ambient_dim)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rref of ``[[u, u], [v, 0]]``; rows ``(0, w)`` span the meet."""
        self._check_ambient(other)
        n = self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(n)
        blocks = [row + row for row in self.rows] + [row + zero_vector(n) for row in other.rows]
        reduced = rows_of(rref(matrix(blocks, cols=2 * n)))
        meet = [row[n:] for row in reduced if is_zero(row[:n]) and not is_zero(row[n:])]
        return Subspace.span(meet, n)

    __and__ = intersect

    def complement_in(self, whole: "Subspace") -> "Subspace":
        """A complement ``c`` with ``c + self = whole`` built from rows of ``whole``."""
        self._check_ambient(whole)
        if not self <= whole:
            raise NotASubspace("subspace is not contained in the target")
        current = self
        chosen: list[Vector] = []
        for row in whole.rows:
            if not current.contains(row):
                chosen.append(row)
                current = current.sum(Subspace.span([row], self.ambient_dim))
        return Subspace.span(chosen, self.ambient_dim)

    def image(self, m: Matrix) -> "Subspace":
        """Image of the subspace under ``m`` acting on column vectors."""
        if m.shape[1] != self.ambient_dim:
            raise DimensionMismatch(f"map with {m.shape[1]} columns on ambient {self.ambient_dim}")
        return Subspace.span([mat_vec(m, row) for row in self.rows], m.shape[0])

    def preimage(self, m: Matrix) -> "Subspace":
        """``{x : m x in self}``."""
        if m.shape[0] != self.ambient_dim:
            raise DimensionMismatch(f"map with {m.shape[0]} rows into ambient {self.ambient_dim}")
        annihilator = null_space(self.basis) if self.dim else Subspace.full(self.ambient_dim)
        if annihilator.dim == 0:
            return Subspace.full(m.shape[1])
        return null_space(mat_mul(annihilator.basis, m))

    def vectors(self) -> list[Vector]:
        return list(self.rows)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u.sum(v)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def contains(u: Subspace, v: Sequence[object]) -> bool:
    return u.contains(v)


def complement_in(u: Subspace, whole: Subspace) -> Subspace:
    return u.complement_in(whole)
