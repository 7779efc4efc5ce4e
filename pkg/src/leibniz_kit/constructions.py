"""Standard algebras, modules, hemisemidirect products and quintuple algebras."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from sympy.polys.domains import QQ

from leibniz_kit.algebra import (
    AlgebraHom,
    LeibnizAlgebra,
    Side,
    center,
    classify,
    coordinate_span,
    is_ideal,
    quotient,
    restrict,
)
from leibniz_kit.lie_tools import (
    ActionInvalid,
    ModuleAction,
    hom_modules,
    is_derivation,
)
from leibniz_kit.linalg import (
    Matrix,
    Subspace,
    Vector,
    add,
    columns_of,
    commutator,
    express,
    from_columns,
    linear_sum,
    mat_vec,
    matrix,
    null_space,
    rows_of,
    sub,
    unit_vector,
    zero_vector,
    zeros,
)

LOGGER = logging.getLogger(__name__)


class InvalidQuintuple(ValueError):
    """Raised when a quintuple fails validation; carries the report."""

    def __init__(self, report: "QuintupleReport") -> None:
        super().__init__(report.violation or "invalid quintuple")
        self.report = report


class ConstructionCheckFailed(RuntimeError):
    """Raised when a built example does not have its advertised properties."""


# Small algebras ------------------------------------------------------------------
def abelian(n: int, labels: Sequence[str] | None = None) -> LeibnizAlgebra:
    return LeibnizAlgebra.from_brackets(n, {}, labels)


def two_dim_square() -> LeibnizAlgebra:
    """``[e e] = f``: symmetric, not Lie."""
    return LeibnizAlgebra.from_brackets(2, {(0, 0): {1: 1}}, ("e", "f"))


def affine_line() -> LeibnizAlgebra:
    """``[x y] = y``."""
    return LeibnizAlgebra.from_brackets(2, {(0, 1): {1: 1}, (1, 0): {1: -1}}, ("x", "y"))


def heisenberg() -> LeibnizAlgebra:
    """``[p q] = z`` with the centre first."""
    return LeibnizAlgebra.from_brackets(3, {(1, 2): {0: 1}, (2, 1): {0: -1}}, ("z", "p", "q"))


def anisotropic_plane() -> LeibnizAlgebra:
    """``[a a] = [b b] = z``: the form is ``diag(2, 2)``, anisotropic over QQ."""
    return LeibnizAlgebra.from_brackets(3, {(0, 0): {2: 1}, (1, 1): {2: 1}}, ("a", "b", "z"))


def _elementary(n: int, i: int, j: int) -> Matrix:
    return matrix([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], cols=n)


def _flatten(m: Matrix) -> Vector:
    return sum(rows_of(m), ())


def sl_basis(n: int) -> list[tuple[str, Matrix]]:
    """Upper ``E_ij``, then ``H_i = E_ii - E_(i+1)(i+1)``, then lower ``E_ij``."""
    upper = [(f"E{i + 1}{j + 1}", _elementary(n, i, j)) for i in range(n) for j in range(i + 1, n)]
    cartan = []
    for i in range(n - 1):
        h = matrix(
            [[(1 if r == c == i else -1 if r == c == i + 1 else 0) for c in range(n)] for r in range(n)], cols=n
        )
        cartan.append((f"H{i + 1}", h))
    lower = [(f"E{i + 1}{j + 1}", _elementary(n, i, j)) for i in range(n) for j in range(i)]
    return upper + cartan + lower


def matrix_lie_algebra(basis: Sequence[tuple[str, Matrix]]) -> LeibnizAlgebra:
    """Structure constants of a matrix Lie algebra under the commutator."""
    flat = [_flatten(m) for _, m in basis]
    structure = tuple(
        tuple(express(flat, _flatten(commutator(a, b))) for _, b in basis) for _, a in basis
    )
    return LeibnizAlgebra(len(basis), structure, tuple(label for label, _ in basis))


def sl(n: int) -> LeibnizAlgebra:
    return matrix_lie_algebra(sl_basis(n))


# Modules ------------------------------------------------------------------------
def natural_module(n: int) -> ModuleAction:
    basis = sl_basis(n)
    return ModuleAction(sl(n), n, tuple(m for _, m in basis), tuple(f"v{i + 1}" for i in range(n)))


def adjoint_module(algebra: LeibnizAlgebra) -> ModuleAction:
    return ModuleAction(algebra, algebra.dim, algebra.left_matrices, algebra.labels)


def trivial_module(algebra: LeibnizAlgebra, n: int) -> ModuleAction:
    return ModuleAction(algebra, n, tuple(zeros(n, n) for _ in range(algebra.dim)))


def symmetric_square(module: ModuleAction) -> ModuleAction:
    """``S^2 V`` on the basis ``v_i v_j`` with ``i <= j``."""
    n = module.carrier_dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}

    def monomial(i: int, j: int) -> int:
        return index[(min(i, j), max(i, j))]

    rho = []
    for m in module.rho:
        cols = columns_of(m)
        images = []
        for i, j in pairs:
            out = [QQ.zero] * len(pairs)
            # x.(v_i v_j) = (x v_i) v_j + v_i (x v_j)
            for k, coeff in enumerate(cols[i]):
                if coeff:
                    out[monomial(k, j)] += coeff
            for k, coeff in enumerate(cols[j]):
                if coeff:
                    out[monomial(i, k)] += coeff
            images.append(tuple(out))
        rho.append(from_columns(images, len(pairs)))
    labels = tuple(f"{module.labels[i]}{module.labels[j]}" for i, j in pairs)
    return ModuleAction(module.algebra, len(pairs), tuple(rho), labels)


def restrict_action(module: ModuleAction, subalgebra: Subspace) -> ModuleAction:
    rho = tuple(module.operator(x) for x in subalgebra.rows)
    return ModuleAction(restrict(module.algebra, subalgebra), module.carrier_dim, rho, module.labels)


def hemisemidirect(algebra: LeibnizAlgebra, module: ModuleAction) -> LeibnizAlgebra:
    """``S + N`` with ``[(x, m), (y, n)] = ([x y], x.n)``; basis ``S`` then ``N``."""
    s, n = algebra.dim, module.carrier_dim
    dim = s + n
    zero = zero_vector(dim)
    actions = [columns_of(m) for m in module.rho]
    structure = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if i < s and j < s:
                row.append(algebra.structure[i][j] + zero_vector(n))
            elif i < s:
                row.append(zero_vector(s) + actions[i][j - s])
            else:
                row.append(zero)
        structure.append(tuple(row))
    product = LeibnizAlgebra(dim, tuple(structure), algebra.labels + module.labels)
    if not classify(product).left_leibniz:
        raise ActionInvalid("hemisemidirect product is not left Leibniz")
    return product


class RootSl2Example(NamedTuple):
    """``sl3 + S^2 V`` with the root ``sl2`` whose graph-lift avoids the obvious Levi factor."""

    algebra: LeibnizAlgebra
    root_sl2: Subspace
    lifted: Subspace
    levi: Subspace
    intertwiner: Matrix


def root_sl2_example() -> RootSl2Example:
    base = sl(3)
    module = symmetric_square(natural_module(3))
    product = hemisemidirect(base, module)
    labels = list(base.labels)
    sub_sl2 = coordinate_span(base.dim, [labels.index("E12"), labels.index("H1"), labels.index("E21")])
    acting = restrict(base, sub_sl2)
    restricted = restrict_action(module, sub_sl2)
    homs = hom_modules(acting, adjoint_module(acting), restricted)
    if len(homs) != 1:
        raise ConstructionCheckFailed(f"expected a one-dimensional intertwiner space, got {len(homs)}")
    if hom_modules(base, adjoint_module(base), module):
        raise ConstructionCheckFailed("sl3 should admit no intertwiner into S^2 V")
    d = homs[0]
    images = columns_of(d)
    lifted = Subspace.span([t + images[k] for k, t in enumerate(sub_sl2.rows)], product.dim)
    root = Subspace.span([t + zero_vector(module.carrier_dim) for t in sub_sl2.rows], product.dim)
    levi = coordinate_span(product.dim, range(base.dim))
    if not classify(restrict(product, lifted)).lie or lifted <= levi:
        raise ConstructionCheckFailed("graph of the intertwiner is not a Lie subalgebra outside the Levi factor")
    LOGGER.debug("Built the %d-dimensional root sl2 example", product.dim)
    return RootSl2Example(product, root, lifted, levi, d)


def adjoint_hemisemidirect(algebra: LeibnizAlgebra) -> LeibnizAlgebra:
    return hemisemidirect(algebra, adjoint_module(algebra))


# Quintuples ---------------------------------------------------------------------
@dataclass(frozen=True)
class Quintuple:
    """Lie algebras sharing an ideal ``R`` (their first ``common_dim`` basis vectors),
    an action of ``first`` on ``second`` and a pairing ``first x second -> Z``.

    ``pairing_map[i]`` is the matrix of ``y -> pairing(e_i, y)`` on ``second``.
    """

    first: LeibnizAlgebra
    second: LeibnizAlgebra
    common_dim: int
    action: ModuleAction
    pairing_map: tuple[Matrix, ...] = field(compare=False)

    @property
    def common_in_first(self) -> Subspace:
        return coordinate_span(self.first.dim, range(self.common_dim))

    @property
    def common_in_second(self) -> Subspace:
        return coordinate_span(self.second.dim, range(self.common_dim))

    def embed_common(self, v: Vector) -> Vector:
        """A vector of ``R`` in ``first`` coordinates, rewritten in ``second`` coordinates."""
        return tuple(v[: self.common_dim]) + zero_vector(self.second.dim - self.common_dim)

    def pairing(self, x: Sequence[object], y: Sequence[object]) -> Vector:
        return mat_vec(linear_sum(x, self.pairing_map, (self.second.dim, self.second.dim)), y)

    @cached_property
    def center_part(self) -> Subspace:
        """``Z = R ∩ Z(first) ∩ Z(second)`` in ``second`` coordinates."""
        r = self.common_dim
        in_first = center(self.first).intersect(self.common_in_first)
        in_second = center(self.second).intersect(self.common_in_second)
        first_coords = Subspace.span([v[:r] for v in in_first.rows], r)
        second_coords = Subspace.span([v[:r] for v in in_second.rows], r)
        both = first_coords.intersect(second_coords)
        return Subspace.span([v + zero_vector(self.second.dim - r) for v in both.rows], self.second.dim)


@dataclass(frozen=True)
class QuintupleReport:
    valid: bool
    violation: str | None = None
    witness: tuple[int, ...] | None = None


def _fail(message: str, witness: tuple[int, ...] | None = None) -> QuintupleReport:
    return QuintupleReport(False, message, witness)


def validate_quintuple(q: Quintuple) -> QuintupleReport:
    """Check the compatibility conditions and report the first one that fails."""
    first, second, r = q.first, q.second, q.common_dim
    if not classify(first).lie or not classify(second).lie:
        return _fail("both algebras must be Lie algebras")
    if r > min(first.dim, second.dim):
        return _fail("common ideal is larger than one of the algebras")
    r1, r2 = q.common_in_first, q.common_in_second
    if not is_ideal(first, r1, Side.TWO_SIDED):
        return _fail("common ideal is not an ideal of the first algebra")
    if not is_ideal(second, r2, Side.TWO_SIDED):
        return _fail("common ideal is not an ideal of the second algebra")
    for i in range(r):
        for j in range(r):
            if q.embed_common(first.structure[i][j]) != second.structure[i][j]:
                return _fail("brackets on the common ideal disagree", (i, j))
    for i in range(second.dim):
        for j in range(second.dim):
            if not r2.contains(second.structure[i][j]):
                return _fail("second algebra modulo the common ideal is not abelian", (i, j))
    if q.action.carrier_dim != second.dim or q.action.algebra.structure != first.structure:
        return _fail("action must be of the first algebra on the second")
    for i, m in enumerate(q.action.rho):
        if not is_derivation(second, m):
            return _fail("action is not by derivations", (i,))
    for i in range(r):
        for j in range(second.dim):
            if q.action.act(first.unit(i), second.unit(j)) != second.structure[i][j]:
                return _fail("action of the common ideal is not the bracket", (i, j))
    for i in range(first.dim):
        for j in range(r):
            if q.action.act(first.unit(i), second.unit(j)) != q.embed_common(first.structure[i][j]):
                return _fail("action on the common ideal is not the bracket", (i, j))
    if len(q.pairing_map) != first.dim or any(m.shape != (second.dim, second.dim) for m in q.pairing_map):
        return _fail("pairing map has the wrong shape")
    z = q.center_part
    for i in range(first.dim):
        for j in range(second.dim):
            if not z.contains(q.pairing(first.unit(i), second.unit(j))):
                return _fail("pairing does not take values in the common centre", (i, j))
    for i in range(first.dim):
        for k in range(first.dim):
            for j in range(second.dim):
                lhs = q.pairing(first.structure[i][k], second.unit(j))
                rhs = q.pairing(first.unit(i), q.action.act(first.unit(k), second.unit(j)))
                if lhs != rhs:
                    return _fail("pairing is not a module morphism", (i, k, j))
    left_kernel = Subspace.span(
        [x for x in _kernel_rows(q, left=True)], first.dim
    )
    if left_kernel != r1:
        return _fail("pairing is not injective modulo the common ideal on the first algebra")
    right_kernel = Subspace.span([y for y in _kernel_rows(q, left=False)], second.dim)
    if right_kernel != r2:
        return _fail("pairing is not injective modulo the common ideal on the second algebra")
    return QuintupleReport(True)


def _kernel_rows(q: Quintuple, *, left: bool) -> list[Vector]:
    n1, n2 = q.first.dim, q.second.dim
    if left:
        # x -> (pairing(x, f_j))_j stacked over j
        columns = [sum((q.pairing(q.first.unit(i), q.second.unit(j)) for j in range(n2)), ()) for i in range(n1)]
        return list(null_space(from_columns(columns, n2 * n2)).rows) if n2 else list(Subspace.full(n1).rows)
    columns = [sum((q.pairing(q.first.unit(i), q.second.unit(j)) for i in range(n1)), ()) for j in range(n2)]
    return list(null_space(from_columns(columns, n1 * n2)).rows) if n1 else list(Subspace.full(n2).rows)


def quintuple_algebra(q: Quintuple) -> LeibnizAlgebra:
    """``first + second`` with
    ``[(x1, y1), (x2, y2)] = ([x1 x2], x1.y2 - x2.y1 + [y1 y2] + pairing(x2, y1))``.
    """
    report = validate_quintuple(q)
    if not report.valid:
        raise InvalidQuintuple(report)
    n1, n2 = q.first.dim, q.second.dim
    dim = n1 + n2

    def product(u: Vector, v: Vector) -> Vector:
        x1, y1 = u[:n1], u[n1:]
        x2, y2 = v[:n1], v[n1:]
        top = q.first.bracket(x1, x2)
        bottom = sub(add(q.action.act(x1, y2), q.second.bracket(y1, y2)), q.action.act(x2, y1))
        return top + add(bottom, q.pairing(x2, y1))

    units = [unit_vector(dim, i) for i in range(dim)]
    structure = tuple(tuple(product(a, b) for b in units) for a in units)
    labels = tuple(f"{label}'" for label in q.first.labels) + q.second.labels
    return LeibnizAlgebra(dim, structure, labels)


def identified_common_ideal(q: Quintuple) -> Subspace:
    """``D = {(r, -r)}`` for ``r`` in the common ideal."""
    n1, n2 = q.first.dim, q.second.dim
    return Subspace.span(
        [sub(unit_vector(n1 + n2, i), unit_vector(n1 + n2, n1 + i)) for i in range(q.common_dim)], n1 + n2
    )


def reduced_quintuple_algebra(q: Quintuple) -> tuple[LeibnizAlgebra, AlgebraHom]:
    """The quintuple algebra modulo ``D``, with the projection."""
    full = quintuple_algebra(q)
    ideal = identified_common_ideal(q)
    return quotient(full, ideal)


def _pairing_matrices(first_dim: int, second_dim: int, values: dict[tuple[int, int], Vector]) -> tuple[Matrix, ...]:
    out = []
    for i in range(first_dim):
        columns = [values.get((i, j), zero_vector(second_dim)) for j in range(second_dim)]
        out.append(from_columns(columns, second_dim))
    return tuple(out)


def coadjoint_quintuple(algebra: LeibnizAlgebra) -> Quintuple:
    """``first = z + L``, ``second = z + L*`` abelian, coadjoint action, ``pairing(x, phi) = phi(x) z``."""
    n = algebra.dim
    first = LeibnizAlgebra(
        n + 1,
        tuple(
            tuple(
                zero_vector(n + 1) if i == 0 or j == 0 else (QQ.zero,) + algebra.structure[i - 1][j - 1]
                for j in range(n + 1)
            )
            for i in range(n + 1)
        ),
        ("z",) + algebra.labels,
    )
    second = abelian(n + 1, ("z",) + tuple(f"{label}*" for label in algebra.labels))
    rho = [zeros(n + 1, n + 1)]
    for i in range(n):
        # (x_i . phi_j)(x_k) = -phi_j([x_i x_k])
        entries = [[QQ.zero] * (n + 1) for _ in range(n + 1)]
        for j in range(n):
            for k in range(n):
                entries[k + 1][j + 1] = -algebra.structure[i][k][j]
        rho.append(matrix(entries, cols=n + 1))
    action = ModuleAction(first, n + 1, tuple(rho), second.labels)
    z = unit_vector(n + 1, 0)
    pairing = _pairing_matrices(n + 1, n + 1, {(i + 1, i + 1): z for i in range(n)})
    return Quintuple(first, second, 1, action, pairing)


def minimal_quintuple() -> Quintuple:
    """Two-dimensional abelian algebras glued along ``z`` with ``pairing(x, y) = z``."""
    return coadjoint_quintuple(abelian(1, ("x",)))


def heisenberg_quintuple() -> Quintuple:
    first = heisenberg()
    second = abelian(3, ("z", "u", "v"))
    action = ModuleAction(first, 3, tuple(zeros(3, 3) for _ in range(3)), second.labels)
    z = unit_vector(3, 0)
    pairing = _pairing_matrices(3, 3, {(1, 1): z, (2, 2): z})
    return Quintuple(first, second, 1, action, pairing)


def is_symmetric_quintuple(q: Quintuple) -> bool:
    """Both algebras are abelian modulo the common ideal."""
    r1, r2 = q.common_in_first, q.common_in_second
    return all(
        r1.contains(v) for row in q.first.structure for v in row
    ) and all(r2.contains(v) for row in q.second.structure for v in row)

