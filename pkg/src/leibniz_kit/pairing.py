"""The symmetric pairing ``psi(x, y) = [x y] + [y x]`` and its scalar forms."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from sympy import integer_nthroot
from sympy.polys.domains import QQ

from leibniz_kit.algebra import (
    AlgebraHom,
    LeibnizAlgebra,
    classify,
    leibniz_kernel,
    orthogonal_sum,
    quotient,
)
from leibniz_kit.linalg import (
    DimensionMismatch,
    Matrix,
    Scalar,
    Subspace,
    Vector,
    add,
    dot,
    is_zero,
    mat_add,
    mat_vec,
    matrix,
    null_space,
    rows_of,
    scale,
    stack,
    sub,
    zeros,
)

LOGGER = logging.getLogger(__name__)


class NotFoundOverField(RuntimeError):
    """Raised when no rational witness exists or none can be certified over QQ."""


class RankZero(ValueError):
    """Raised when an operation needs a nonzero Leibniz kernel."""


class NotLeftCentral(ValueError):
    """Raised when an operation needs a left central algebra."""


class NotRankOne(ValueError):
    """Raised when a scalar form is requested for an algebra of rank above one."""


def pair(algebra: LeibnizAlgebra, x: Sequence[object], y: Sequence[object]) -> Vector:
    return add(algebra.bracket(x, y), algebra.bracket(y, x))


@dataclass(frozen=True)
class ScalarForm:
    """A bilinear form on QQ^n given by its Gram matrix."""

    gram: Matrix = field(compare=False)

    @cached_property
    def _rows(self) -> list[Vector]:
        return rows_of(self.gram)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def value(self, x: Sequence[object], y: Sequence[object]) -> Scalar:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"form on dimension {self.dim}")
        return dot(x, mat_vec(self.gram, y))

    def is_symmetric(self) -> bool:
        rows = self._rows
        return all(rows[i][j] == rows[j][i] for i in range(self.dim) for j in range(i))

    def orthogonal(self, u: Subspace) -> Subspace:
        """``{x : f(u, x) = 0 for all u}``."""
        if u.dim == 0:
            return Subspace.full(self.dim)
        return null_space(matrix([mat_vec(self.gram.transpose(), row) for row in u.rows], cols=self.dim))

    def radical(self) -> Subspace:
        return null_space(self.gram) if self.dim else Subspace.zero(0)

    def restricted(self, basis: Sequence[Vector]) -> "ScalarForm":
        return ScalarForm(matrix([[self.value(a, b) for b in basis] for a in basis], cols=len(basis)))


@dataclass(frozen=True)
class KernelValuedForm:
    """``psi`` written in the rref basis of the Leibniz kernel, one Gram matrix per basis vector."""

    algebra: LeibnizAlgebra
    kernel: Subspace
    components: tuple[Matrix, ...] = field(compare=False)

    def value(self, x: Sequence[object], y: Sequence[object]) -> Vector:
        return pair(self.algebra, x, y)

    def component(self, t: int) -> ScalarForm:
        return ScalarForm(self.components[t])


def symmetric_pairing(algebra: LeibnizAlgebra) -> KernelValuedForm:
    kernel = leibniz_kernel(algebra)
    c = algebra.structure
    n = algebra.dim
    components = tuple(
        matrix([[add(c[i][j], c[j][i])[p] for j in range(n)] for i in range(n)], cols=n)
        for p in kernel.pivots
    )
    return KernelValuedForm(algebra, kernel, components)


def rank(algebra: LeibnizAlgebra) -> int:
    return leibniz_kernel(algebra).dim


def trace_form(algebra: LeibnizAlgebra) -> ScalarForm:
    """The scalar form of a rank at most one algebra (zero when the rank is zero)."""
    form = symmetric_pairing(algebra)
    if len(form.components) > 1:
        raise NotRankOne(f"algebra has rank {len(form.components)}")
    if not form.components:
        return ScalarForm(zeros(algebra.dim, algebra.dim))
    return form.component(0)


@dataclass(frozen=True)
class AssociativityResult:
    holds: bool
    witness: tuple[int, int, int] | None = None


def check_associative(algebra: LeibnizAlgebra) -> AssociativityResult:
    """Test ``psi([x y], z) = psi(x, [y z])`` on basis triples."""
    c = algebra.structure
    n = algebra.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = pair(algebra, c[i][j], algebra.unit(k))
                rhs = pair(algebra, algebra.unit(i), c[j][k])
                if lhs != rhs:
                    return AssociativityResult(False, (i, j, k))
    return AssociativityResult(True)


def _pairing_operator(algebra: LeibnizAlgebra, b: Sequence[object]) -> Matrix:
    return mat_add(algebra.left_multiplication(b), algebra.right_multiplication(b))


def form_radical(algebra: LeibnizAlgebra) -> Subspace:
    """``{x : psi(x, M) = 0}``."""
    if algebra.dim == 0:
        return algebra.zero()
    operators = [mat_add(l, r) for l, r in zip(algebra.left_matrices, algebra.right_matrices)]
    return null_space(stack(operators, algebra.dim))


def orth_complement(algebra: LeibnizAlgebra, u: Subspace) -> Subspace:
    if u.dim == 0:
        return algebra.full()
    return null_space(stack([_pairing_operator(algebra, b) for b in u.rows], algebra.dim))


def rad_of(algebra: LeibnizAlgebra, u: Subspace) -> Subspace:
    return u.intersect(orth_complement(algebra, u))


def is_totally_isotropic(algebra: LeibnizAlgebra, u: Subspace) -> bool:
    return all(is_zero(pair(algebra, a, b)) for a in u.rows for b in u.rows)


# Rank reduction ----------------------------------------------------------------------
@dataclass(frozen=True)
class RankReduction:
    """Rank one quotients ``M / N_i`` and the diagonal embedding into their orthogonal sum."""

    quotients: tuple[AlgebraHom, ...]
    embedding: AlgebraHom


def rank_reduction(algebra: LeibnizAlgebra) -> RankReduction:
    if not classify(algebra).left_central:
        raise NotLeftCentral("rank reduction needs a left central algebra")
    kernel = leibniz_kernel(algebra)
    if kernel.dim == 0:
        raise RankZero("the Leibniz kernel is zero")
    projections = []
    for i in range(kernel.dim):
        hyperplane = Subspace.span([row for t, row in enumerate(kernel.rows) if t != i], algebra.dim)
        projections.append(quotient(algebra, hyperplane)[1])
    target = projections[0].target
    for projection in projections[1:]:
        target = orthogonal_sum(target, projection.target)
    stacked = stack([p.map for p in projections], algebra.dim)
    embedding = AlgebraHom(algebra, target, stacked)
    if not embedding.is_injective():
        raise RuntimeError("diagonal embedding into the rank one quotients is not injective")
    LOGGER.debug("Reduced rank %d algebra to %d rank one quotients", kernel.dim, len(projections))
    return RankReduction(tuple(projections), embedding)


# Isotropic vectors and hyperbolic splitting -----------------------------------------------
def rational_sqrt(q: Scalar) -> Scalar | None:
    if q < 0:
        return None
    numerator, denominator = int(q.numerator), int(q.denominator)
    root, exact = integer_nthroot(numerator * denominator, 2)
    if not exact:
        return None
    return QQ(int(root), denominator)


def diagonalize(form: ScalarForm, basis: Sequence[Vector]) -> list[tuple[Vector, Scalar]]:
    """An orthogonal basis of ``span(basis)`` by congruence, with the diagonal values."""
    work = list(basis)
    out: list[tuple[Vector, Scalar]] = []
    while work:
        index = next((k for k, v in enumerate(work) if form.value(v, v) != 0), None)
        if index is None:
            pair_index = next(
                ((i, j) for i in range(len(work)) for j in range(i + 1, len(work))
                 if form.value(work[i], work[j]) != 0),
                None,
            )
            if pair_index is None:
                out.extend((v, QQ.zero) for v in work)
                break
            i, j = pair_index
            work[i] = add(work[i], work[j])
            index = i
        pivot = work.pop(index)
        d = form.value(pivot, pivot)
        work = [sub(v, scale(form.value(v, pivot) / d, pivot)) for v in work]
        out.append((pivot, d))
    return out


def find_isotropic_vector(form: ScalarForm, within: Subspace) -> Vector:
    """A nonzero ``v`` in ``within`` with ``f(v, v) = 0``, lowest basis index first."""
    for v in within.rows:
        if form.value(v, v) == 0:
            return v
    diagonal = diagonalize(form, within.rows)
    for v, d in diagonal:
        if d == 0:
            return v
    for i, (vi, di) in enumerate(diagonal):
        for vj, dj in diagonal[i + 1:]:
            s = rational_sqrt(-dj / di)
            if s is not None:
                return add(scale(s, vi), vj)
    raise NotFoundOverField("no isotropic vector found from two-term combinations")


def certified_anisotropic(form: ScalarForm, within: Subspace) -> bool:
    """True when ``f`` restricted to ``within`` provably has no isotropic vector."""
    if within.dim == 0:
        return True
    values = [d for _, d in diagonalize(form, within.rows)]
    if any(d == 0 for d in values):
        return False
    if within.dim <= 2:
        try:
            find_isotropic_vector(form, within)
        except NotFoundOverField:
            return True
        return False
    return all(d > 0 for d in values) or all(d < 0 for d in values)


@dataclass(frozen=True)
class HyperbolicSplit:
    """Hyperbolic pairs ``(e_i, f_i)`` with ``f(e_i, f_i) = 1`` and an anisotropic remainder."""

    isotropic: tuple[Vector, ...]
    partners: tuple[Vector, ...]
    anisotropic: Subspace
    certified: bool

    @property
    def witt_index(self) -> int:
        if not self.certified:
            raise NotFoundOverField("anisotropic remainder is not certified over QQ")
        return len(self.isotropic)


def hyperbolic_split(form: ScalarForm, within: Subspace) -> HyperbolicSplit:
    """Split a space on which ``form`` is nondegenerate into hyperbolic planes."""
    isotropic: list[Vector] = []
    partners: list[Vector] = []
    remaining = within
    while remaining.dim:
        try:
            e = find_isotropic_vector(form, remaining)
        except NotFoundOverField:
            break
        w = next((v for v in remaining.rows if form.value(e, v) != 0), None)
        if w is None:
            raise ValueError("form is degenerate on the given subspace")
        w = scale(QQ.one / form.value(e, w), w)
        h = sub(w, scale(form.value(w, w) / 2, e))
        isotropic.append(e)
        partners.append(h)
        plane = Subspace.span([e, h], form.dim)
        remaining = remaining.intersect(form.orthogonal(plane))
    certified = certified_anisotropic(form, remaining)
    LOGGER.debug(
        "Hyperbolic split: %d pairs, anisotropic part of dimension %d (certified=%s)",
        len(isotropic), remaining.dim, certified,
    )
    return HyperbolicSplit(tuple(isotropic), tuple(partners), remaining, certified)


def witt_index(form: ScalarForm, within: Subspace) -> int:
    return hyperbolic_split(form, within).witt_index


def _split_modulo_radical(algebra: LeibnizAlgebra) -> tuple[Subspace, HyperbolicSplit]:
    if rank(algebra) > 1:
        raise NotRankOne("totally isotropic subspaces are computed for rank at most one")
    radical = form_radical(algebra)
    complement = radical.complement_in(algebra.full())
    split = hyperbolic_split(trace_form(algebra), complement)
    if not split.certified:
        raise NotFoundOverField("could not certify the anisotropic part over QQ")
    return radical, split


def maximal_totally_isotropic(algebra: LeibnizAlgebra) -> Subspace:
    radical, split = _split_modulo_radical(algebra)
    return radical.sum(Subspace.span(split.isotropic, algebra.dim))


def pair_of_transverse_lagrangians(algebra: LeibnizAlgebra) -> tuple[Subspace, Subspace]:
    """Two Lagrangians meeting in the radical, for a split form."""
    radical, split = _split_modulo_radical(algebra)
    if split.anisotropic.dim > 1:
        raise NotFoundOverField("form is not split over QQ")
    return (
        radical.sum(Subspace.span(split.isotropic, algebra.dim)),
        radical.sum(Subspace.span(split.partners, algebra.dim)),
    )
