"""Lie-theoretic tools: modules, Killing form, Levi factors, derivations and conjugacy."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from sympy.polys.domains import QQ

from leibniz_kit.algebra import (
    AlgebraHom,
    LeibnizAlgebra,
    NotAMorphism,
    bracket_space,
    classify,
    derived_series,
    killing_gram,
    leibniz_kernel,
    lift_from_quotient,
    preimage,
    quotient,
    restrict,
    solvable_radical,
)
from leibniz_kit.linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    Unsolvable,
    Vector,
    add,
    columns_of,
    combine,
    determinant,
    express,
    from_columns,
    identity,
    inverse,
    is_zero_matrix,
    linear_sum,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    matrices_equal,
    matrix,
    null_space,
    rows_of,
    scale,
    solve_vector,
    sub,
    zero_vector,
)
from leibniz_kit.pairing import ScalarForm

LOGGER = logging.getLogger(__name__)


class NotLie(ValueError):
    """Raised when a Lie algebra is required."""


class ActionInvalid(ValueError):
    """Raised when matrices do not define a module action."""


class NoEquivariantProjection(RuntimeError):
    """Raised when an invariant subspace has no invariant complement."""


class NotLeftLeibniz(ValueError):
    """Raised when a left Leibniz algebra is required."""


class NotNilpotent(ValueError):
    """Raised when exponentiating an endomorphism that is not nilpotent."""


class HypothesisViolated(RuntimeError):
    """Raised when a conjugacy statement is applied outside its hypotheses."""


class NotAutomorphism(ValueError):
    """Raised when a map is not a bijective bracket-preserving endomorphism."""


class NoLeviComplement(RuntimeError):
    """Raised when an abelian extension of a semisimple algebra does not split."""


# Modules -----------------------------------------------------------------------
@dataclass(frozen=True)
class ModuleAction:
    """A Lie algebra homomorphism ``rho : algebra -> gl(carrier_dim)``."""

    algebra: LeibnizAlgebra
    carrier_dim: int
    rho: tuple[Matrix, ...] = field(compare=False)
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(self.rho) != self.algebra.dim:
            raise ActionInvalid(f"expected {self.algebra.dim} matrices, got {len(self.rho)}")
        if any(m.shape != (self.carrier_dim, self.carrier_dim) for m in self.rho):
            raise ActionInvalid(f"action matrices must be {self.carrier_dim} x {self.carrier_dim}")
        if not classify(self.algebra).lie:
            raise ActionInvalid("the acting algebra is not a Lie algebra")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i}" for i in range(self.carrier_dim)))
        n = self.algebra.dim
        for i in range(n):
            for j in range(i + 1, n):
                expected = mat_sub(mat_mul(self.rho[i], self.rho[j]), mat_mul(self.rho[j], self.rho[i]))
                if not matrices_equal(self.operator(self.algebra.structure[i][j]), expected):
                    raise ActionInvalid(f"action does not respect the bracket of basis vectors {i}, {j}")

    def operator(self, x: Sequence[object]) -> Matrix:
        return linear_sum(x, self.rho, (self.carrier_dim, self.carrier_dim))

    def act(self, x: Sequence[object], v: Sequence[object]) -> Vector:
        return mat_vec(self.operator(x), v)

    def is_invariant(self, w: Subspace) -> bool:
        return all(w.contains(mat_vec(m, row)) for m in self.rho for row in w.rows)


def _same_algebra(a: LeibnizAlgebra, b: LeibnizAlgebra) -> bool:
    return a.dim == b.dim and a.structure == b.structure


def killing_form(algebra: LeibnizAlgebra) -> ScalarForm:
    if not classify(algebra).lie:
        raise NotLie("the Killing form is defined here for Lie algebras")
    return ScalarForm(killing_gram(algebra))


def is_semisimple(algebra: LeibnizAlgebra) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    return determinant(killing_form(algebra).gram) != 0


def hom_modules(algebra: LeibnizAlgebra, source: ModuleAction, target: ModuleAction) -> list[Matrix]:
    """A basis of the intertwiners ``c`` with ``c rho_source(x) = rho_target(x) c``."""
    if not (_same_algebra(algebra, source.algebra) and _same_algebra(algebra, target.algebra)):
        raise DimensionMismatch("modules must be over the given algebra")
    dv, dw = source.carrier_dim, target.carrier_dim
    if dv == 0 or dw == 0:
        return []
    equations: list[list[object]] = []
    for rv, rw in zip(source.rho, target.rho):
        v_rows, w_rows = rows_of(rv), rows_of(rw)
        for a in range(dw):
            for b in range(dv):
                row = [QQ.zero] * (dw * dv)
                for k in range(dv):
                    row[a * dv + k] += v_rows[k][b]
                for k in range(dw):
                    row[k * dv + b] -= w_rows[a][k]
                equations.append(row)
    solutions = null_space(matrix(equations, cols=dw * dv)) if equations else Subspace.full(dw * dv)
    basis = [matrix([sol[a * dv:(a + 1) * dv] for a in range(dw)], cols=dv) for sol in solutions.rows]
    LOGGER.debug("Hom space of dimension %d between modules of dimensions %d and %d", len(basis), dv, dw)
    return basis


def equivariant_complement(algebra: LeibnizAlgebra, module: ModuleAction, invariant: Subspace) -> Subspace:
    """An invariant complement of ``invariant`` from an equivariant projection onto it.

    The projection is the identity on ``invariant`` and sends each vector ``c_s`` of
    a fixed complement to an unknown ``y_s`` inside ``invariant``; commuting with the
    action is linear in the ``y_s``.
    """
    if not _same_algebra(algebra, module.algebra):
        raise DimensionMismatch("module must be over the given algebra")
    if not module.is_invariant(invariant):
        raise NoEquivariantProjection("subspace is not invariant")
    whole = Subspace.full(module.carrier_dim)
    complement = invariant.complement_in(whole)
    w_basis, c_basis = list(invariant.rows), list(complement.rows)
    dw, dc = len(w_basis), len(c_basis)
    if dw == 0 or dc == 0:
        return complement
    adapted = w_basis + c_basis
    n_unknowns = dc * dw
    equations: list[list[object]] = []
    rhs: list[object] = []
    for m in module.rho:
        on_w = [invariant.coordinates(mat_vec(m, w)) for w in w_basis]
        for s, c in enumerate(c_basis):
            coords = express(adapted, mat_vec(m, c))
            a, b = coords[:dw], coords[dw:]
            for r2 in range(dw):
                row = [QQ.zero] * n_unknowns
                for s2 in range(dc):
                    row[s2 * dw + r2] += b[s2]
                for r in range(dw):
                    row[s * dw + r] -= on_w[r][r2]
                equations.append(row)
                rhs.append(-a[r2])
    if equations:
        try:
            y = solve_vector(matrix(equations, cols=n_unknowns), rhs)
        except Unsolvable as exc:
            raise NoEquivariantProjection("no equivariant projection exists") from exc
    else:
        y = zero_vector(n_unknowns)
    kernel = [
        sub(c, combine(y[s * dw:(s + 1) * dw], w_basis, module.carrier_dim)) for s, c in enumerate(c_basis)
    ]
    result = Subspace.span(kernel, module.carrier_dim)
    if not module.is_invariant(result):
        raise NoEquivariantProjection("computed complement is not invariant")
    return result


# Levi decomposition -------------------------------------------------------------
@dataclass(frozen=True)
class LeviDecomposition:
    radical: Subspace
    levi: Subspace

    def __post_init__(self) -> None:
        if self.radical.dim + self.levi.dim != self.radical.ambient_dim:
            raise ValueError("radical and Levi factor dimensions do not add up")
        if self.radical.intersect(self.levi).dim:
            raise ValueError("radical and Levi factor intersect")


def _split_abelian_extension(algebra: LeibnizAlgebra, total: Subspace, abelian: Subspace) -> Subspace:
    """A complement of the abelian ideal ``abelian`` in ``total`` closed under the bracket.

    Writes ``[s_i s_j] = sum_k c_ij^k s_k + a_ij`` and solves
    ``a_ij + [s_i p_j] - [s_j p_i] = sum_k c_ij^k p_k`` for ``p_i`` in ``abelian``.
    """
    top = list(abelian.complement_in(total).rows)
    a_rows = list(abelian.rows)
    m, d, n = len(top), len(a_rows), algebra.dim
    if m == 0 or d == 0:
        return Subspace.span(top, n)
    adapted = top + a_rows
    constants = {}
    for i in range(m):
        for j in range(i + 1, m):
            coords = express(adapted, algebra.bracket(top[i], top[j]))
            constants[i, j] = (coords[:m], combine(coords[m:], a_rows, n))
    left = [[algebra.bracket(s, a) for a in a_rows] for s in top]
    equations: list[list[object]] = []
    rhs: list[object] = []
    for (i, j), (c, a_ij) in constants.items():
        for out in range(n):
            row = [QQ.zero] * (m * d)
            for r in range(d):
                row[j * d + r] += left[i][r][out]
                row[i * d + r] -= left[j][r][out]
                for k in range(m):
                    if c[k]:
                        row[k * d + r] -= c[k] * a_rows[r][out]
            equations.append(row)
            rhs.append(-a_ij[out])
    try:
        y = solve_vector(matrix(equations, cols=m * d), rhs)
    except Unsolvable as exc:
        raise NoLeviComplement("abelian extension does not split") from exc
    lifted = [add(s, combine(y[i * d:(i + 1) * d], a_rows, n)) for i, s in enumerate(top)]
    return Subspace.span(lifted, n)


def levi_factor_of_lie(algebra: LeibnizAlgebra) -> Subspace:
    """A Levi factor of a Lie algebra by induction on the radical."""
    radical = solvable_radical(algebra)
    if radical.dim == 0:
        return algebra.full()
    if radical.dim == algebra.dim:
        return algebra.zero()
    series = derived_series(algebra, radical)
    abelian = next(term for term in reversed(series) if term.dim)
    reduced, _ = quotient(algebra, abelian)
    factor = levi_factor_of_lie(reduced)
    total = preimage(abelian, factor)
    return _split_abelian_extension(algebra, total, abelian)


def levi_decomposition(algebra: LeibnizAlgebra) -> LeviDecomposition:
    """``M = B + S`` with ``B`` the solvable radical and ``S`` a semisimple Lie subalgebra."""
    if not classify(algebra).left_leibniz:
        raise NotLeftLeibniz("Levi decomposition needs a left Leibniz algebra")
    kernel = leibniz_kernel(algebra)
    radical = solvable_radical(algebra)
    lie_quotient, _ = quotient(algebra, kernel)
    factor = levi_factor_of_lie(lie_quotient)
    if factor.dim == 0:
        return LeviDecomposition(radical, algebra.zero())
    total = preimage(kernel, factor)
    if kernel.dim == 0:
        return LeviDecomposition(radical, total)
    # T/N acts on T by left multiplication; the kernel N is an invariant subspace.
    acting = restrict(lie_quotient, factor)
    lifts = [lift_from_quotient(kernel, row) for row in factor.rows]
    rho = tuple(
        from_columns([total.coordinates(algebra.bracket(t, b)) for b in total.rows], total.dim) for t in lifts
    )
    module = ModuleAction(acting, total.dim, rho)
    kernel_in_total = Subspace.span([total.coordinates(v) for v in kernel.rows], total.dim)
    complement = equivariant_complement(acting, module, kernel_in_total)
    levi = Subspace.span([total.from_coordinates(v) for v in complement.rows], algebra.dim)
    LOGGER.info("Levi decomposition: radical of dimension %d, Levi factor of dimension %d", radical.dim, levi.dim)
    return LeviDecomposition(radical, levi)


@dataclass(frozen=True)
class LeviFamily:
    """Levi subalgebras ``{(x, c(x))}`` of a hemisemidirect product, ``c`` in an intertwiner space."""

    algebra: LeibnizAlgebra
    module: ModuleAction
    parameters: tuple[Matrix, ...] = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.parameters)

    def member(self, coefficients: Sequence[object] | None = None) -> Subspace:
        s = self.module.algebra.dim
        n = self.module.carrier_dim
        coefficients = coefficients if coefficients is not None else [0] * self.dim
        if len(coefficients) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coefficients")
        if self.dim:
            c = linear_sum(coefficients, self.parameters, (n, s))
            images = columns_of(c)
        else:
            images = [zero_vector(n)] * s
        rows = [tuple(QQ.one if k == i else QQ.zero for k in range(s)) + images[i] for i in range(s)]
        return Subspace.span(rows, s + n)


def levi_subalgebras_hemi(semisimple: LeibnizAlgebra, module: ModuleAction) -> LeviFamily:
    from leibniz_kit.constructions import adjoint_module, hemisemidirect

    algebra = hemisemidirect(semisimple, module)
    parameters = hom_modules(semisimple, adjoint_module(semisimple), module)
    return LeviFamily(algebra, module, tuple(parameters))


# Derivations and automorphisms -----------------------------------------------------
def is_derivation(algebra: LeibnizAlgebra, f: Matrix) -> bool:
    """``f([x y]) = [f x, y] + [x, f y]`` on basis pairs."""
    if f.shape != (algebra.dim, algebra.dim):
        raise DimensionMismatch("derivation must be a square matrix of the algebra's size")
    images = columns_of(f)
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = mat_vec(f, algebra.structure[i][j])
            rhs = add(algebra.bracket(images[i], algebra.unit(j)), algebra.bracket(algebra.unit(i), images[j]))
            if lhs != rhs:
                return False
    return True


def derivations(algebra: LeibnizAlgebra) -> list[Matrix]:
    """A basis of ``Der(M)``; the unknown is ``f`` in row-major order."""
    n = algebra.dim
    if n == 0:
        return []
    c = algebra.structure
    equations = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [QQ.zero] * (n * n)
                for l in range(n):
                    if c[i][j][l]:
                        row[k * n + l] += c[i][j][l]
                    # [f e_i, e_j]_k = sum_l f[l][i] c[l][j][k]
                    if c[l][j][k]:
                        row[l * n + i] -= c[l][j][k]
                    if c[i][l][k]:
                        row[l * n + j] -= c[i][l][k]
                equations.append(row)
    solutions = null_space(matrix(equations, cols=n * n))
    return [matrix([sol[a * n:(a + 1) * n] for a in range(n)], cols=n) for sol in solutions.rows]


def exp_nilpotent(f: Matrix) -> Matrix:
    n = f.shape[0]
    power = identity(n)
    for _ in range(n):
        power = mat_mul(power, f)
    if not is_zero_matrix(power):
        raise NotNilpotent("endomorphism is not nilpotent")
    result = identity(n)
    term = identity(n)
    for k in range(1, n + 1):
        term = mat_scale(QQ(1, k), mat_mul(term, f))
        if is_zero_matrix(term):
            break
        result = mat_add(result, term)
    return result


def exp_derivation(algebra: LeibnizAlgebra, f: Matrix) -> AlgebraHom:
    if not is_derivation(algebra, f):
        raise ValueError("matrix is not a derivation")
    return AlgebraHom(algebra, algebra, exp_nilpotent(f))


def inner_derivation(algebra: LeibnizAlgebra, x: Sequence[object]) -> Matrix:
    return algebra.left_multiplication(x)


def verify_conjugacy(algebra: LeibnizAlgebra, alpha: AlgebraHom | Matrix, first: Subspace, second: Subspace) -> bool:
    """Whether the automorphism ``alpha`` carries ``first`` into ``second``."""
    if not isinstance(alpha, AlgebraHom):
        try:
            alpha = AlgebraHom(algebra, algebra, alpha)
        except (NotAMorphism, DimensionMismatch) as exc:
            raise NotAutomorphism(str(exc)) from exc
    if not alpha.is_isomorphism():
        raise NotAutomorphism("map is not bijective")
    return alpha.image_of(first) <= second


def conjugator_candidates(algebra: LeibnizAlgebra, scales: Sequence[int] = (1, -1, 2, -2)) -> Iterator[AlgebraHom]:
    """``exp(ad x)`` for small multiples of basis vectors ``x`` of ``[M, B]`` with nilpotent ``ad x``."""
    radical = solvable_radical(algebra)
    for x in bracket_space(algebra, algebra.full(), radical).rows:
        for s in scales:
            try:
                yield AlgebraHom(algebra, algebra, exp_nilpotent(inner_derivation(algebra, scale(s, x))))
            except (NotNilpotent, NotAMorphism):
                break


@dataclass(frozen=True)
class Conjugator:
    """``exp(derivation)`` after an optional ``prefix`` automorphism."""

    algebra: LeibnizAlgebra
    derivation: Matrix = field(compare=False)
    prefix: AlgebraHom | None = field(default=None, compare=False)

    @cached_property
    def automorphism(self) -> AlgebraHom:
        hom = exp_derivation(self.algebra, self.derivation)
        return hom.compose(self.prefix) if self.prefix is not None else hom


def _is_levi_subalgebra(radical: Subspace, levi: Subspace) -> bool:
    return levi.dim + radical.dim == levi.ambient_dim and radical.intersect(levi).dim == 0


def malcev_conjugator(algebra: LeibnizAlgebra, first: Subspace, second: Subspace) -> Conjugator:
    """An automorphism ``exp(f)`` carrying the Levi subalgebra ``first`` onto ``second``.

    Needs ``[B, N] = 0``. When ``first + N = second + N``, each ``s`` in ``first``
    decomposes as ``s' + n`` with ``s'`` in ``second``; ``f`` sends ``s`` to ``-n``
    and vanishes on ``B``, so ``f^2 = 0``.
    """
    kernel = leibniz_kernel(algebra)
    radical = solvable_radical(algebra)
    if bracket_space(algebra, radical, kernel).dim:
        raise HypothesisViolated("the radical does not annihilate the Leibniz kernel")
    for levi in (first, second):
        if not _is_levi_subalgebra(radical, levi):
            raise HypothesisViolated("argument is not a Levi subalgebra")
    prefix = None
    source = first
    if first.sum(kernel) != second.sum(kernel):
        target = second.sum(kernel)
        prefix = next((a for a in conjugator_candidates(algebra) if a.image_of(first).sum(kernel) == target), None)
        if prefix is None:
            raise HypothesisViolated("Levi subalgebras differ modulo the kernel and no inner conjugator was found")
        source = prefix.image_of(first)
    split = list(second.rows) + list(kernel.rows)
    images = []
    for s in source.rows:
        coords = express(split, s)
        images.append(scale(-1, combine(coords[second.dim:], kernel.rows, algebra.dim)))
    n = algebra.dim
    basis = list(source.rows) + list(radical.rows)
    values = images + [zero_vector(n)] * radical.dim
    f = mat_mul(from_columns(values, n), inverse(from_columns(basis, n)))
    if not is_derivation(algebra, f):
        raise HypothesisViolated("the correction map is not a derivation")
    if not is_zero_matrix(mat_mul(f, f)):
        raise HypothesisViolated("the correction map does not square to zero")
    conjugator = Conjugator(algebra, f, prefix)
    if conjugator.automorphism.image_of(first) != second:
        raise HypothesisViolated("exp of the correction does not map one Levi subalgebra onto the other")
    return conjugator


def annihilates_kernel(algebra: LeibnizAlgebra, levi: Subspace) -> bool:
    """``[S, N] = 0``."""
    return bracket_space(algebra, levi, leibniz_kernel(algebra)).dim == 0


def module_from_adjoint_action(algebra: LeibnizAlgebra, acting: Subspace, carrier: Subspace) -> ModuleAction:
    """``acting`` as a Lie algebra acting on the ideal ``carrier`` by left multiplication."""
    rho = tuple(
        from_columns([carrier.coordinates(algebra.bracket(x, v)) for v in carrier.rows], carrier.dim)
        for x in acting.rows
    )
    return ModuleAction(restrict(algebra, acting), carrier.dim, rho)
