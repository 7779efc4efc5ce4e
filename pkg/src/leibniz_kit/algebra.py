"""Leibniz algebras given by structure constants, and the structure built on them."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from sympy.polys.domains import QQ

from leibniz_kit.linalg import (
    DimensionMismatch,
    Matrix,
    NotASubspace,
    Subspace,
    Vector,
    add,
    columns_of,
    express,
    from_columns,
    inverse,
    is_zero,
    mat_mul,
    mat_vec,
    matrix,
    null_space,
    rows_of,
    stack,
    to_scalar,
    unit_vector,
    vector,
    zero_vector,
)

LOGGER = logging.getLogger(__name__)


class NotAnIdeal(ValueError):
    """Raised when a quotient is requested by a subspace that is not a two-sided ideal."""


class NotClosed(ValueError):
    """Raised when a subspace is not closed under the bracket."""


class NotAMorphism(ValueError):
    """Raised when a linear map does not preserve brackets."""


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class LeibnizAlgebra:
    """A finite-dimensional algebra over QQ; ``structure[i][j]`` is ``[e_i e_j]``."""

    dim: int
    structure: tuple[tuple[Vector, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(self.structure) != self.dim or any(len(row) != self.dim for row in self.structure):
            raise DimensionMismatch(f"structure tensor must be {self.dim} x {self.dim}")
        if any(len(v) != self.dim for row in self.structure for v in row):
            raise DimensionMismatch(f"bracket values must have length {self.dim}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(self.dim)))
        elif len(self.labels) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} labels, got {len(self.labels)}")

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object] | Sequence[object]],
        labels: Sequence[str] | None = None,
    ) -> "LeibnizAlgebra":
        """Build from the nonzero products; values are ``{k: coeff}`` or full vectors."""
        table = [[list(zero_vector(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i}, {j}) outside dimension {dim}")
            items = value.items() if isinstance(value, Mapping) else enumerate(value)
            for k, coeff in items:
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"output index {k} outside dimension {dim}")
                table[i][j][k] = to_scalar(coeff)
        structure = tuple(tuple(tuple(v) for v in row) for row in table)
        return cls(dim, structure, tuple(labels or ()))

    @cached_property
    def _sparse(self) -> tuple[tuple[tuple[tuple[int, object], ...], ...], ...]:
        return tuple(
            tuple(tuple((k, x) for k, x in enumerate(v) if x) for v in row) for row in self.structure
        )

    def _check(self, v: Sequence[object]) -> None:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a {self.dim}-dimensional algebra")

    def bracket(self, x: Sequence[object], y: Sequence[object]) -> Vector:
        self._check(x)
        self._check(y)
        out = [QQ.zero] * self.dim
        sparse = self._sparse
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = sparse[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                coeff = xi * yj
                for k, c in row[j]:
                    out[k] += coeff * c
        return tuple(out)

    def left_mul_basis(self, i: int, y: Sequence[object]) -> Vector:
        """``[e_i y]``."""
        out = [QQ.zero] * self.dim
        row = self._sparse[i]
        for j, yj in enumerate(y):
            if yj:
                for k, c in row[j]:
                    out[k] += yj * c
        return tuple(out)

    def right_mul_basis(self, x: Sequence[object], j: int) -> Vector:
        """``[x e_j]``."""
        out = [QQ.zero] * self.dim
        sparse = self._sparse
        for i, xi in enumerate(x):
            if xi:
                for k, c in sparse[i][j]:
                    out[k] += xi * c
        return tuple(out)

    def left_multiplication(self, x: Sequence[object]) -> Matrix:
        """Matrix of ``y -> [x y]``."""
        return from_columns([self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)], self.dim)

    def right_multiplication(self, x: Sequence[object]) -> Matrix:
        """Matrix of ``y -> [y x]``."""
        return from_columns([self.bracket(unit_vector(self.dim, j), x) for j in range(self.dim)], self.dim)

    @cached_property
    def left_matrices(self) -> tuple[Matrix, ...]:
        return tuple(
            from_columns([self.structure[i][j] for j in range(self.dim)], self.dim) for i in range(self.dim)
        )

    @cached_property
    def right_matrices(self) -> tuple[Matrix, ...]:
        return tuple(
            from_columns([self.structure[j][i] for j in range(self.dim)], self.dim) for i in range(self.dim)
        )

    def unit(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim)


def bracket(algebra: LeibnizAlgebra, x: Sequence[object], y: Sequence[object]) -> Vector:
    return algebra.bracket(x, y)


# Identities -----------------------------------------------------------------
@dataclass(frozen=True)
class LawViolation:
    """The first law that failed and the basis vectors that break it."""

    law: str
    indices: tuple[int, ...]


@dataclass(frozen=True)
class ClassificationFlags:
    left_leibniz: bool
    right_leibniz: bool
    left_central: bool
    symmetric: bool
    lie: bool
    witness: LawViolation | None = None

    @property
    def level(self) -> int:
        """4 Lie, 3 symmetric, 2 left central, 1 left Leibniz, 0 otherwise."""
        if self.lie:
            return 4
        if self.symmetric:
            return 3
        if self.left_central:
            return 2
        if self.left_leibniz:
            return 1
        return 0

    def as_dict(self) -> dict[str, bool]:
        return {
            "left_leibniz": self.left_leibniz,
            "right_leibniz": self.right_leibniz,
            "left_central": self.left_central,
            "symmetric": self.symmetric,
            "lie": self.lie,
        }


def _first_left_leibniz_failure(a: LeibnizAlgebra) -> tuple[int, int, int] | None:
    c = a.structure
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                lhs = a.left_mul_basis(i, c[j][k])
                rhs = add(a.right_mul_basis(c[i][j], k), a.left_mul_basis(j, c[i][k]))
                if lhs != rhs:
                    return (i, j, k)
    return None


def _first_right_leibniz_failure(a: LeibnizAlgebra) -> tuple[int, int, int] | None:
    c = a.structure
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                lhs = a.right_mul_basis(c[i][j], k)
                rhs = add(a.right_mul_basis(c[i][k], j), a.left_mul_basis(i, c[j][k]))
                if lhs != rhs:
                    return (i, j, k)
    return None


def _first_central_failure(a: LeibnizAlgebra) -> tuple[int, int, int] | None:
    c = a.structure
    for j in range(a.dim):
        for k in range(j, a.dim):
            square = add(c[j][k], c[k][j])
            if is_zero(square):
                continue
            for i in range(a.dim):
                if not is_zero(a.left_mul_basis(i, square)):
                    return (i, j, k)
    return None


def _first_lie_failure(a: LeibnizAlgebra) -> tuple[int, ...] | None:
    c = a.structure
    for i in range(a.dim):
        if not is_zero(c[i][i]):
            return (i, i)
        for j in range(i + 1, a.dim):
            if not is_zero(add(c[i][j], c[j][i])):
                return (i, j)
    return None


@lru_cache(maxsize=256)
def classify(algebra: LeibnizAlgebra) -> ClassificationFlags:
    """Evaluate the defining identities on basis triples."""
    left_failure = _first_left_leibniz_failure(algebra)
    right_failure = _first_right_leibniz_failure(algebra)
    left = left_failure is None
    right = right_failure is None
    central_failure = _first_central_failure(algebra) if left else None
    lie_failure = _first_lie_failure(algebra)
    central = left and central_failure is None
    lie = left and lie_failure is None
    witness = None
    if left_failure is not None:
        witness = LawViolation("left-leibniz", left_failure)
    elif central_failure is not None:
        witness = LawViolation("left-central", central_failure)
    elif right_failure is not None:
        witness = LawViolation("right-leibniz", right_failure)
    elif lie_failure is not None:
        witness = LawViolation("lie", lie_failure)
    return ClassificationFlags(
        left_leibniz=left,
        right_leibniz=right,
        left_central=central,
        symmetric=left and right,
        lie=lie,
        witness=witness,
    )


# Distinguished subspaces -------------------------------------------------------
def leibniz_kernel(algebra: LeibnizAlgebra) -> Subspace:
    """Span of all squares ``[x x]``, i.e. of ``[e_i e_j] + [e_j e_i]``."""
    c = algebra.structure
    return Subspace.span(
        (add(c[i][j], c[j][i]) for i in range(algebra.dim) for j in range(i, algebra.dim)),
        algebra.dim,
    )


def center(algebra: LeibnizAlgebra) -> Subspace:
    """Two-sided centre ``{z : [z x] = [x z] = 0}``."""
    if algebra.dim == 0:
        return algebra.zero()
    system = stack(list(algebra.left_matrices) + list(algebra.right_matrices), algebra.dim)
    return null_space(system)


def bracket_space(algebra: LeibnizAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """Span of ``[a b]`` over basis vectors ``a`` of ``u`` and ``b`` of ``v``."""
    return Subspace.span((algebra.bracket(a, b) for a in u.rows for b in v.rows), algebra.dim)


def derived(algebra: LeibnizAlgebra, u: Subspace | None = None) -> Subspace:
    u = algebra.full() if u is None else u
    return bracket_space(algebra, u, u)


def derived_series(algebra: LeibnizAlgebra, u: Subspace | None = None) -> list[Subspace]:
    """``[u, u', u'', ...]`` ending at the first term that repeats."""
    series = [algebra.full() if u is None else u]
    while series[-1].dim:
        nxt = derived(algebra, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def lower_central_series(algebra: LeibnizAlgebra, u: Subspace | None = None) -> list[Subspace]:
    """``[u, [u u], [u [u u]], ...]`` ending at the first term that repeats."""
    base = algebra.full() if u is None else u
    series = [base]
    while series[-1].dim and len(series) <= algebra.dim + 1:
        nxt = bracket_space(algebra, base, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_solvable(algebra: LeibnizAlgebra, u: Subspace | None = None) -> bool:
    return derived_series(algebra, u)[-1].dim == 0


def is_nilpotent(algebra: LeibnizAlgebra, u: Subspace | None = None) -> bool:
    return lower_central_series(algebra, u)[-1].dim == 0


def is_closed(algebra: LeibnizAlgebra, u: Subspace) -> bool:
    return all(u.contains(algebra.bracket(a, b)) for a in u.rows for b in u.rows)


def is_ideal(algebra: LeibnizAlgebra, u: Subspace, side: Side | str = Side.TWO_SIDED) -> bool:
    side = Side(side)
    for i in range(algebra.dim):
        for b in u.rows:
            if side in (Side.LEFT, Side.TWO_SIDED) and not u.contains(algebra.left_mul_basis(i, b)):
                return False
            if side in (Side.RIGHT, Side.TWO_SIDED) and not u.contains(algebra.right_mul_basis(b, i)):
                return False
    return True


def subalgebra_closure(algebra: LeibnizAlgebra, generators: Iterable[Sequence[object]]) -> Subspace:
    current = Subspace.span(generators, algebra.dim)
    while True:
        grown = current.sum(derived(algebra, current))
        if grown == current:
            return current
        current = grown


def ideal_closure(algebra: LeibnizAlgebra, generators: Iterable[Sequence[object]]) -> Subspace:
    """Smallest two-sided ideal containing the generators."""
    current = Subspace.span(generators, algebra.dim)
    whole = algebra.full()
    while True:
        grown = current.sum(bracket_space(algebra, whole, current)).sum(bracket_space(algebra, current, whole))
        if grown == current:
            return current
        current = grown


# Morphisms --------------------------------------------------------------------
@dataclass(frozen=True)
class AlgebraHom:
    """A bracket-preserving linear map; ``map`` is ``target.dim x source.dim``."""

    source: LeibnizAlgebra
    target: LeibnizAlgebra
    map: Matrix = field(compare=False)

    def __post_init__(self) -> None:
        if self.map.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"map has shape {self.map.shape}, expected {(self.target.dim, self.source.dim)}"
            )
        images = self.columns
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.apply(self.source.structure[i][j])
                rhs = self.target.bracket(images[i], images[j])
                if lhs != rhs:
                    raise NotAMorphism(f"bracket of basis vectors {i}, {j} is not preserved")

    @cached_property
    def columns(self) -> list[Vector]:
        return columns_of(self.map)

    def apply(self, v: Sequence[object]) -> Vector:
        return mat_vec(self.map, v)

    def compose(self, first: "AlgebraHom") -> "AlgebraHom":
        """``self`` after ``first``."""
        if first.target.structure != self.source.structure:
            raise DimensionMismatch("morphisms are not composable")
        return AlgebraHom(first.source, self.target, mat_mul(self.map, first.map))

    def kernel(self) -> Subspace:
        return null_space(self.map)

    def image(self) -> Subspace:
        return Subspace.span(self.columns, self.target.dim)

    def is_injective(self) -> bool:
        return self.kernel().dim == 0

    def is_surjective(self) -> bool:
        return self.image().dim == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def image_of(self, u: Subspace) -> Subspace:
        return u.image(self.map)


# Quotients, restrictions and changes of basis ---------------------------------------
def quotient(algebra: LeibnizAlgebra, ideal: Subspace) -> tuple[LeibnizAlgebra, AlgebraHom]:
    """``algebra / ideal`` on the non-pivot coordinates, with the projection."""
    if not is_ideal(algebra, ideal, Side.TWO_SIDED):
        raise NotAnIdeal("quotient requires a two-sided ideal")
    pivots = set(ideal.pivots)
    keep = [j for j in range(algebra.dim) if j not in pivots]

    def project(v: Sequence[object]) -> Vector:
        reduced = ideal.reduce(v)
        return tuple(reduced[j] for j in keep)

    structure = tuple(tuple(project(algebra.structure[a][b]) for b in keep) for a in keep)
    labels = tuple(algebra.labels[j] for j in keep)
    result = LeibnizAlgebra(len(keep), structure, labels)
    projection = from_columns([project(algebra.unit(j)) for j in range(algebra.dim)], len(keep))
    return result, AlgebraHom(algebra, result, projection)


def lift_from_quotient(ideal: Subspace, coords: Sequence[object]) -> Vector:
    """Representative of a quotient vector: coordinates placed at non-pivot positions."""
    pivots = set(ideal.pivots)
    keep = [j for j in range(ideal.ambient_dim) if j not in pivots]
    if len(coords) != len(keep):
        raise DimensionMismatch(f"quotient vector must have length {len(keep)}")
    out = list(zero_vector(ideal.ambient_dim))
    for j, x in zip(keep, coords):
        out[j] = to_scalar(x)
    return tuple(out)


def preimage(ideal: Subspace, u: Subspace) -> Subspace:
    """Preimage in the algebra of a subspace of ``algebra / ideal``."""
    return Subspace.span([lift_from_quotient(ideal, row) for row in u.rows], ideal.ambient_dim).sum(ideal)


def restrict_to_basis(
    algebra: LeibnizAlgebra, basis: Sequence[Vector], labels: Sequence[str] | None = None
) -> LeibnizAlgebra:
    """The subalgebra spanned by ``basis``, in coordinates relative to that basis."""
    basis = [vector(b) for b in basis]
    span = Subspace.span(basis, algebra.dim)
    if span.dim != len(basis):
        raise NotASubspace("basis vectors are linearly dependent")
    structure = []
    for a in basis:
        row = []
        for b in basis:
            value = algebra.bracket(a, b)
            if not span.contains(value):
                raise NotClosed("subspace is not closed under the bracket")
            row.append(express(basis, value))
        structure.append(tuple(row))
    return LeibnizAlgebra(len(basis), tuple(structure), tuple(labels or ()))


def restrict(algebra: LeibnizAlgebra, u: Subspace) -> LeibnizAlgebra:
    """The subalgebra ``u`` in coordinates relative to its rref basis."""
    structure = []
    for a in u.rows:
        row = []
        for b in u.rows:
            value = algebra.bracket(a, b)
            if not u.contains(value):
                raise NotClosed("subspace is not closed under the bracket")
            row.append(u.coordinates(value))
        structure.append(tuple(row))
    return LeibnizAlgebra(u.dim, tuple(structure))


def inclusion(algebra: LeibnizAlgebra, u: Subspace) -> AlgebraHom:
    return AlgebraHom(restrict(algebra, u), algebra, from_columns(list(u.rows), algebra.dim))


def transport(algebra: LeibnizAlgebra, change: Matrix) -> LeibnizAlgebra:
    """Rewrite the algebra in the basis given by the columns of ``change``."""
    back = inverse(change)
    new_basis = columns_of(change)
    structure = tuple(
        tuple(mat_vec(back, algebra.bracket(a, b)) for b in new_basis) for a in new_basis
    )
    return LeibnizAlgebra(algebra.dim, structure)


def orthogonal_sum(first: LeibnizAlgebra, second: LeibnizAlgebra) -> LeibnizAlgebra:
    """Direct sum with ``[first, second] = [second, first] = 0``."""
    n = first.dim + second.dim
    zero = zero_vector(n)
    structure = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < first.dim and j < first.dim:
                row.append(first.structure[i][j] + zero_vector(second.dim))
            elif i >= first.dim and j >= first.dim:
                row.append(zero_vector(first.dim) + second.structure[i - first.dim][j - first.dim])
            else:
                row.append(zero)
        structure.append(tuple(row))
    return LeibnizAlgebra(n, tuple(structure), first.labels + second.labels)


# Radicals -----------------------------------------------------------------------
def killing_gram(algebra: LeibnizAlgebra) -> Matrix:
    """Gram matrix of ``(x, y) -> tr(ad_x ad_y)`` for left multiplications."""
    ad = [rows_of(m) for m in algebra.left_matrices]
    n = algebra.dim
    gram = [[QQ.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            total = QQ.zero
            for k in range(n):
                for l in range(n):
                    if ad[i][k][l] and ad[j][l][k]:
                        total += ad[i][k][l] * ad[j][l][k]
            gram[i][j] = gram[j][i] = total
    return matrix(gram, cols=n)


def solvable_radical(algebra: LeibnizAlgebra) -> Subspace:
    """Largest solvable ideal of a left Leibniz algebra.

    The quotient by the Leibniz kernel is a Lie algebra whose radical is the
    Killing-orthogonal of its derived algebra; the answer is its preimage.
    """
    kernel = leibniz_kernel(algebra)
    lie_quotient, _ = quotient(algebra, kernel)
    if lie_quotient.dim == 0:
        return kernel
    gram = killing_gram(lie_quotient)
    commutant = derived(lie_quotient)
    if commutant.dim == 0:
        return algebra.full()
    radical = null_space(mat_mul(commutant.basis, gram))
    return preimage(kernel, radical)


def coordinate_span(dim: int, indices: Iterable[int]) -> Subspace:
    return Subspace.span([unit_vector(dim, i) for i in indices], dim)

