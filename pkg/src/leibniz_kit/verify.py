"""Verification drivers for the structural claims about left central Leibniz algebras."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable

import numpy as np

from leibniz_kit.algebra import (
    AlgebraHom,
    LeibnizAlgebra,
    NotAMorphism,
    Side,
    bracket_space,
    center,
    classify,
    derived,
    derived_series,
    ideal_closure,
    is_closed,
    is_ideal,
    is_nilpotent,
    is_solvable,
    leibniz_kernel,
    lift_from_quotient,
    lower_central_series,
    preimage,
    quotient,
    restrict,
    restrict_to_basis,
    solvable_radical,
    subalgebra_closure,
)
from leibniz_kit.constructions import (
    Quintuple,
    adjoint_module,
    identified_common_ideal,
    is_symmetric_quintuple,
    quintuple_algebra,
    reduced_quintuple_algebra,
    validate_quintuple,
)
from leibniz_kit.corpus import CorpusEntry, entry_from_recipe, quintuple_for
from leibniz_kit.lie_tools import (
    HypothesisViolated,
    ModuleAction,
    NotNilpotent,
    exp_nilpotent,
    hom_modules,
    inner_derivation,
    is_derivation,
    levi_decomposition,
    malcev_conjugator,
    module_from_adjoint_action,
    verify_conjugacy,
)
from leibniz_kit.linalg import (
    Scalar,
    Subspace,
    Vector,
    columns_of,
    combine,
    express,
    from_columns,
    is_zero,
    is_zero_matrix,
    mat_mul,
    matrix,
    null_space,
    scalar_str,
    scale,
    stack,
    sub,
    unit_vector,
)
from leibniz_kit.pairing import (
    NotFoundOverField,
    NotLeftCentral,
    NotRankOne,
    RankZero,
    ScalarForm,
    check_associative,
    form_radical,
    hyperbolic_split,
    is_totally_isotropic,
    maximal_totally_isotropic,
    orth_complement,
    pair,
    pair_of_transverse_lagrangians,
    rad_of,
    rank,
    trace_form,
)

LOGGER = logging.getLogger(__name__)


class PreconditionFailed(ValueError):
    """Raised when a driver is applied outside its hypotheses."""


class FieldLimited(RuntimeError):
    """Raised when a claim cannot be decided over QQ."""


class NoIsotropicIdealFound(RuntimeError):
    """Raised when no candidate totally isotropic ideal was found."""


class NotSymmetric(ValueError):
    """Raised when a symmetric Leibniz algebra is required."""


class InconclusiveAfterTrials(RuntimeError):
    """Raised when sampling did not settle a claim within the allotted trials."""


class Status(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    FIELD_LIMITED = "field-limited"
    SKIPPED = "skipped"

    @property
    def exit_code(self) -> int:
        return {Status.VERIFIED: 0, Status.SKIPPED: 0, Status.REFUTED: 1, Status.FIELD_LIMITED: 2}[self]


CLAIM_NAMES: dict[str, str] = {
    "lemma-4.1": "psi-associativity",
    "lemma-4.2": "lie-subalgebra",
    "lemma-4.3": "isotropic-ideal",
    "lemma-4.5": "no-semisimple-ideal",
    "prop-4.1": "radical-intersection",
    "lemma-4.6": "radical-complement",
    "lemma-4.7": "quintuple-radical",
    "thm-5.1": "nilpotent-lagrangian",
    "lemma-6.1": "symmetric-criterion",
    "lemma-6.2": "symmetric-quotients",
    "thm-6.3": "symmetric-decomposition",
    "thm-3.5": "levi-conjugacy",
    "hierarchy": "hierarchy",
}
# keys are the stable command-line ids
CLAIMS = tuple(CLAIM_NAMES)
CLAIM_ALIASES = {name: claim_id for claim_id, name in CLAIM_NAMES.items()}


def resolve_claim(name: str) -> str:
    """The frozen claim id for ``name``, which may be a frozen id or its descriptive alias."""
    if name in CLAIM_NAMES:
        return name
    if name in CLAIM_ALIASES:
        return CLAIM_ALIASES[name]
    raise KeyError(f"unknown claim {name!r}; choose from {', '.join(CLAIMS)}")


def jsonable(value: Any) -> Any:
    """Exact values as JSON: rationals as canonical strings, subspaces as basis rows."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Subspace):
        return {"dim": value.dim, "basis": [jsonable(row) for row in value.rows]}
    if isinstance(value, Scalar):
        return scalar_str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass
class VerificationReport:
    claim: str
    status: Status
    subject: str = ""
    witnesses: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def name(self) -> str:
        return CLAIM_NAMES.get(self.claim, self.claim)

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "name": self.name,
            "status": self.status.value,
            "subject": self.subject,
            "witnesses": jsonable(self.witnesses),
            "details": jsonable(self.details),
            "elapsed": round(self.elapsed, 4),
        }

    def render_text(self) -> str:
        lines = [f"{self.claim:<10} {self.name:<24} {self.status.value:<14} {self.subject} ({self.elapsed:.2f}s)"]
        for key, value in {**self.details, **self.witnesses}.items():
            lines.append(f"    {key}: {jsonable(value)}")
        return "\n".join(lines)


def _report(claim: str, status: Status, start: float, **kwargs: Any) -> VerificationReport:
    claim = CLAIM_ALIASES.get(claim, claim)
    return VerificationReport(claim, status, elapsed=time.perf_counter() - start, **kwargs)


def worst_status(statuses: Iterable[Status]) -> Status:
    statuses = list(statuses)
    for status in (Status.REFUTED, Status.FIELD_LIMITED, Status.VERIFIED):
        if status in statuses:
            return status
    return Status.SKIPPED


def _require_left_central(algebra: LeibnizAlgebra) -> None:
    if not classify(algebra).left_central:
        raise PreconditionFailed("the algebra is not left central")


def _require_rank_at_most_one(algebra: LeibnizAlgebra) -> None:
    if rank(algebra) > 1:
        raise PreconditionFailed("the algebra has rank above one")


def radical_cover(algebra: LeibnizAlgebra) -> Subspace:
    """``B`` with ``B / R`` the solvable radical of ``M / R``."""
    radical = form_radical(algebra)
    lie_quotient, _ = quotient(algebra, radical)
    return preimage(radical, solvable_radical(lie_quotient))


def _quotient_form(algebra: LeibnizAlgebra, radical: Subspace, form: ScalarForm, dim: int) -> ScalarForm:
    lifts = [lift_from_quotient(radical, unit_vector(dim, i)) for i in range(dim)]
    return ScalarForm(matrix([[form.value(a, b) for b in lifts] for a in lifts], cols=dim))


# Pairing identities ------------------------------------------------------------------
def associativity_check(algebra: LeibnizAlgebra) -> VerificationReport:
    start = time.perf_counter()
    result = check_associative(algebra)
    central = classify(algebra).left_central
    witnesses = {"triple": result.witness} if result.witness else {}
    if not central:
        return _report(
            "psi-associativity", Status.SKIPPED, start,
            details={"reason": "not left central", "associative": result.holds}, witnesses=witnesses,
        )
    status = Status.VERIFIED if result.holds else Status.REFUTED
    return _report("psi-associativity", status, start, witnesses=witnesses)


def lie_subalgebra_equivalences(algebra: LeibnizAlgebra, candidate: Subspace) -> VerificationReport:
    """Lie subalgebra, totally isotropic, and ``candidate + R`` a Lie subalgebra: all or none."""
    start = time.perf_counter()
    _require_left_central(algebra)
    closed = is_closed(algebra, candidate)
    is_lie = closed and classify(restrict(algebra, candidate)).lie
    isotropic = is_totally_isotropic(algebra, candidate)
    widened = candidate.sum(form_radical(algebra))
    widened_lie = is_closed(algebra, widened) and classify(restrict(algebra, widened)).lie
    conditions = {"lie_subalgebra": is_lie, "totally_isotropic": isotropic, "lie_with_radical": widened_lie}
    if not closed:
        return _report(
            "lie-subalgebra", Status.SKIPPED, start, details={"reason": "not closed under the bracket", **conditions}
        )
    status = Status.VERIFIED if is_lie == isotropic == widened_lie else Status.REFUTED
    witnesses = {} if status is Status.VERIFIED else {"subalgebra": candidate}
    return _report("lie-subalgebra", status, start, details=conditions, witnesses=witnesses)


def isotropic_ideal_check(algebra: LeibnizAlgebra, ideal: Subspace) -> VerificationReport:
    """A totally isotropic ideal is a Lie subalgebra whose derived algebra lies in ``R``."""
    start = time.perf_counter()
    _require_left_central(algebra)
    if not is_ideal(algebra, ideal, Side.TWO_SIDED) or not is_totally_isotropic(algebra, ideal):
        raise PreconditionFailed("subspace is not a totally isotropic two-sided ideal")
    is_lie = classify(restrict(algebra, ideal)).lie
    inside = derived(algebra, ideal) <= form_radical(algebra)
    details = {"lie": is_lie, "derived_in_radical": inside, "dim": ideal.dim}
    if is_lie and inside:
        return _report("isotropic-ideal", Status.VERIFIED, start, details=details)
    return _report("isotropic-ideal", Status.REFUTED, start, details=details, witnesses={"ideal": ideal})


# Semisimple ideals -----------------------------------------------------------------
def _descend(algebra: LeibnizAlgebra, ideal: Subspace) -> Subspace:
    whole = algebra.full()
    while ideal.dim > 1:
        options = [ideal_closure(algebra, [v]) for v in ideal.rows]
        options.append(bracket_space(algebra, whole, ideal))
        smaller = next((j for j in options if 0 < j.dim < ideal.dim), None)
        if smaller is None:
            return ideal
        ideal = smaller
    return ideal


def minimal_ideals(algebra: LeibnizAlgebra) -> list[Subspace]:
    """Ideals reached by descending from the ideals generated by basis vectors."""
    found: list[Subspace] = []
    for i in range(algebra.dim):
        start = ideal_closure(algebra, [algebra.unit(i)])
        if start.dim == 0:
            continue
        candidate = _descend(algebra, start)
        if candidate not in found:
            found.append(candidate)
    return found


def no_semisimple_ideal_check(algebra: LeibnizAlgebra) -> VerificationReport:
    """``M / R`` has no nonzero semisimple ideal, decided exactly.

    The largest semisimple ideal of a Lie algebra is the terminal derived term of
    the centralizer of its solvable radical.
    """
    start = time.perf_counter()
    _require_left_central(algebra)
    radical = form_radical(algebra)
    lie_quotient, _ = quotient(algebra, radical)
    if lie_quotient.dim == 0:
        return _report("no-semisimple-ideal", Status.VERIFIED, start, details={"quotient_dim": 0})
    solvable = solvable_radical(lie_quotient)
    if solvable.dim:
        operators = [lie_quotient.right_multiplication(r) for r in solvable.rows]
        centralizer = null_space(stack(operators, lie_quotient.dim))
    else:
        centralizer = lie_quotient.full()
    semisimple = derived_series(lie_quotient, centralizer)[-1]
    ideals = minimal_ideals(lie_quotient)
    nonabelian = [i for i in ideals if derived(lie_quotient, i).dim]
    details = {
        "quotient_dim": lie_quotient.dim,
        "minimal_ideal_dims": [i.dim for i in ideals],
        "certified_minimal": [i.dim == 1 for i in ideals],
    }
    if semisimple.dim == 0 and not nonabelian:
        return _report("no-semisimple-ideal", Status.VERIFIED, start, details=details)
    witnesses: dict[str, Any] = {}
    if semisimple.dim:
        witnesses["semisimple_ideal"] = semisimple
    if nonabelian:
        witnesses["nonabelian_minimal_ideal"] = nonabelian[0]
    return _report("no-semisimple-ideal", Status.REFUTED, start, details=details, witnesses=witnesses)


# Maximal Lie subalgebras -------------------------------------------------------------
def _extend_isotropic(
    algebra: LeibnizAlgebra, form: ScalarForm, current: Subspace, rng: np.random.Generator, attempts: int
) -> Subspace | None:
    candidates = current.complement_in(orth_complement(algebra, current))
    if candidates.dim == 0:
        return None
    local = hyperbolic_split(form, candidates)
    points = list(local.isotropic) + list(local.partners)
    if not points:
        return None
    n = algebra.dim
    for attempt in range(attempts):
        coefficients = [int(c) for c in rng.integers(-3, 4, size=candidates.dim)]
        w = combine(coefficients, candidates.rows, n)
        if is_zero(w):
            continue
        norm = form.value(w, w)
        if norm == 0:
            v = w
        else:
            # f(e, e) = 0, so norm * e - 2 f(e, w) w is isotropic
            e = points[int(rng.integers(len(points)))]
            v = sub(scale(norm, e), scale(2 * form.value(e, w), w))
        if is_zero(v) or current.contains(v):
            continue
        closure = subalgebra_closure(algebra, list(current.rows) + [v])
        if is_totally_isotropic(algebra, closure):
            LOGGER.debug("Extended isotropic subalgebra to dimension %d after %d attempts", closure.dim, attempt + 1)
            return closure
    return None


def maximal_lie_sample(algebra: LeibnizAlgebra, seed: int = 0, attempts: int = 64) -> Subspace:
    """A maximal Lie subalgebra grown greedily from ``R`` by seeded random isotropic vectors."""
    _require_left_central(algebra)
    _require_rank_at_most_one(algebra)
    radical = form_radical(algebra)
    form = trace_form(algebra)
    split = hyperbolic_split(form, radical.complement_in(algebra.full()))
    if not split.certified:
        raise FieldLimited("the anisotropic part of the form is not certified over QQ")
    target = radical.dim + len(split.isotropic)
    rng = np.random.default_rng(seed)
    current = radical
    while current.dim < target:
        grown = _extend_isotropic(algebra, form, current, rng, attempts)
        if grown is None:
            LOGGER.warning("No isotropic extension found at dimension %d (target %d)", current.dim, target)
            break
        current = grown
    if not classify(restrict(algebra, current)).lie:
        raise RuntimeError("sampled subalgebra is not a Lie subalgebra")
    return current


def _descend_to_radical(
    algebra: LeibnizAlgebra, radical: Subspace, trials: int, seed: int, attempts: int
) -> tuple[Subspace, list[int], list[Subspace]]:
    intersection = algebra.full()
    trace: list[int] = []
    samples: list[Subspace] = []
    for t in range(trials):
        sample = maximal_lie_sample(algebra, seed + t, attempts)
        samples.append(sample)
        if not radical <= sample:
            return intersection, trace, samples
        intersection = intersection.intersect(sample)
        trace.append(intersection.dim)
    if intersection != radical:
        raise InconclusiveAfterTrials(f"intersection has dimension {intersection.dim} after {trials} samples")
    return intersection, trace, samples


def verify_radical_intersection(
    algebra: LeibnizAlgebra, trials: int = 20, seed: int = 0, attempts: int = 64
) -> VerificationReport:
    """Every sampled maximal Lie subalgebra contains ``R`` and the samples intersect in ``R``."""
    start = time.perf_counter()
    _require_left_central(algebra)
    if rank(algebra) > 1:
        return _report("radical-intersection", Status.SKIPPED, start, details={"reason": "rank above one"})
    radical = form_radical(algebra)
    try:
        intersection, trace, samples = _descend_to_radical(algebra, radical, trials, seed, attempts)
    except FieldLimited as exc:
        LOGGER.warning("Radical intersection is field limited: %s", exc)
        return _report("radical-intersection", Status.FIELD_LIMITED, start, details={"reason": str(exc)})
    except InconclusiveAfterTrials as exc:
        LOGGER.warning("%s", exc)
        return _report(
            "radical-intersection", Status.SKIPPED, start, details={"reason": str(exc), "inconclusive": True}
        )
    details = {"trace": trace, "seed": seed, "trials": trials, "radical_dim": radical.dim}
    bad = next((s for s in samples if not radical <= s), None)
    if bad is not None:
        return _report(
            "radical-intersection", Status.REFUTED, start, details=details,
            witnesses={"sample": bad, "seed": seed + samples.index(bad)},
        )
    return _report("radical-intersection", Status.VERIFIED, start, details=details)


def radical_complement_check(algebra: LeibnizAlgebra) -> VerificationReport:
    """``B^perp`` lies in ``B``."""
    start = time.perf_counter()
    _require_left_central(algebra)
    if rank(algebra) != 1:
        return _report("radical-complement", Status.SKIPPED, start, details={"reason": "rank is not one"})
    cover = radical_cover(algebra)
    perp = orth_complement(algebra, cover)
    details = {"cover_dim": cover.dim, "perp_dim": perp.dim}
    if perp <= cover:
        return _report("radical-complement", Status.VERIFIED, start, details=details)
    witness = next(v for v in perp.rows if not cover.contains(v))
    return _report("radical-complement", Status.REFUTED, start, details=details, witnesses={"vector": witness})


# Nilpotent maximal isotropic subalgebras ------------------------------------------------
def _isotropic_ideal(algebra: LeibnizAlgebra, radical: Subspace, form: ScalarForm, seed_vector: Vector | None) -> Subspace:
    lie_quotient, projection = quotient(algebra, radical)
    qform = _quotient_form(algebra, radical, form, lie_quotient.dim)
    if is_solvable(lie_quotient):
        candidates = derived_series(lie_quotient) + lower_central_series(lie_quotient) + [center(lie_quotient)]
        for ideal in candidates:
            isotropic = ideal.intersect(qform.orthogonal(ideal))
            if isotropic.dim:
                return preimage(radical, isotropic)
        if derived(lie_quotient).dim == 0 and seed_vector is not None:
            line = Subspace.span([projection.apply(seed_vector)], lie_quotient.dim)
            return preimage(radical, line)
        raise NoIsotropicIdealFound("no candidate ideal of the solvable quotient is isotropic")
    perp = qform.orthogonal(solvable_radical(lie_quotient))
    if perp.dim and all(qform.value(a, b) == 0 for a in perp.rows for b in perp.rows):
        return preimage(radical, perp)
    raise NoIsotropicIdealFound("the orthogonal of the solvable radical is not a nonzero isotropic ideal")


def _lagrangian_within(algebra: LeibnizAlgebra, depth: int, trace: list[str]) -> Subspace:
    radical = form_radical(algebra)
    if radical.dim == algebra.dim:
        trace.append(f"depth {depth}: form vanishes on dimension {algebra.dim}")
        return radical
    form = trace_form(algebra)
    split = hyperbolic_split(form, radical.complement_in(algebra.full()))
    if not split.isotropic:
        if split.certified:
            trace.append(f"depth {depth}: quotient of dimension {algebra.dim - radical.dim} is anisotropic")
            return radical
        raise FieldLimited("could not decide isotropy of the quotient over QQ")
    ideal = _isotropic_ideal(algebra, radical, form, split.isotropic[0])
    perp = orth_complement(algebra, ideal)
    trace.append(f"depth {depth}: isotropic ideal of dimension {ideal.dim}, orthogonal of dimension {perp.dim}")
    LOGGER.debug("Recursing into dimension %d at depth %d", perp.dim, depth + 1)
    inner = _lagrangian_within(restrict(algebra, perp), depth + 1, trace)
    return Subspace.span([perp.from_coordinates(v) for v in inner.rows], algebra.dim)


def nilpotent_lagrangian(algebra: LeibnizAlgebra) -> tuple[Subspace | None, VerificationReport]:
    """A maximal isotropic Lie subalgebra ``L`` with ``L / R`` nilpotent and ``L`` inside ``B``."""
    start = time.perf_counter()
    _require_left_central(algebra)
    _require_rank_at_most_one(algebra)
    trace: list[str] = []
    try:
        lagrangian = _lagrangian_within(algebra, 0, trace)
        radical = form_radical(algebra)
        split = hyperbolic_split(trace_form(algebra), radical.complement_in(algebra.full()))
        if not split.certified:
            raise FieldLimited("could not certify the Witt index over QQ")
    except (FieldLimited, NoIsotropicIdealFound) as exc:
        LOGGER.warning("Nilpotent Lagrangian construction stopped: %s", exc)
        return None, _report(
            "nilpotent-lagrangian", Status.FIELD_LIMITED, start, details={"reason": str(exc), "trace": trace}
        )
    witt_dim = radical.dim + len(split.isotropic)
    maximal = lagrangian.dim == witt_dim and is_totally_isotropic(algebra, lagrangian)
    sub_algebra = restrict(algebra, lagrangian)
    radical_inside = Subspace.span([lagrangian.coordinates(v) for v in radical.rows], lagrangian.dim)
    nilpotent = is_nilpotent(quotient(sub_algebra, radical_inside)[0])
    contained = lagrangian <= radical_cover(algebra)
    details = {
        "dim": lagrangian.dim,
        "witt_dim": witt_dim,
        "maximal_isotropic": maximal,
        "nilpotent_modulo_radical": nilpotent,
        "inside_cover": contained,
        "trace": trace,
    }
    status = Status.VERIFIED if maximal and nilpotent and contained else Status.REFUTED
    witnesses = {} if status is Status.VERIFIED else {"subalgebra": lagrangian}
    return lagrangian, _report("nilpotent-lagrangian", status, start, details=details, witnesses=witnesses)


# Symmetric algebras -----------------------------------------------------------------
def symmetric_criterion(algebra: LeibnizAlgebra) -> VerificationReport:
    """Symmetric exactly when the derived algebra lies in ``R``."""
    start = time.perf_counter()
    flags = classify(algebra)
    if not flags.left_leibniz:
        return _report("symmetric-criterion", Status.SKIPPED, start, details={"reason": "not left Leibniz"})
    inside = derived(algebra) <= form_radical(algebra)
    details = {"symmetric": flags.symmetric, "derived_in_radical": inside}
    if flags.symmetric == inside:
        return _report("symmetric-criterion", Status.VERIFIED, start, details=details)
    return _report("symmetric-criterion", Status.REFUTED, start, details=details, witnesses={"flags": flags.as_dict()})


@dataclass
class SymmetricDecomposition:
    quintuple: Quintuple | None
    ideal: Subspace
    isomorphism: AlgebraHom | None
    report: VerificationReport


def _adapted_basis(radical: Subspace, lagrangian: Subspace) -> list[Vector]:
    return list(radical.rows) + list(radical.complement_in(lagrangian).rows)


def symmetric_decomposition(algebra: LeibnizAlgebra) -> SymmetricDecomposition:
    """Recover a quintuple from two transverse Lagrangians and map its reduced algebra onto ``L1 + L2``."""
    start = time.perf_counter()
    if not classify(algebra).symmetric:
        raise NotSymmetric("the algebra is not symmetric")
    if rank(algebra) != 1:
        raise PreconditionFailed("the algebra must have rank one")
    try:
        first_lagrangian, second_lagrangian = pair_of_transverse_lagrangians(algebra)
    except NotFoundOverField as exc:
        raise FieldLimited(str(exc)) from exc
    n = algebra.dim
    radical = form_radical(algebra)
    ideal = first_lagrangian.sum(second_lagrangian)
    basis1 = _adapted_basis(radical, first_lagrangian)
    basis2 = _adapted_basis(radical, second_lagrangian)
    first = restrict_to_basis(algebra, basis1)
    second = restrict_to_basis(algebra, basis2)
    rho = tuple(from_columns([express(basis2, algebra.bracket(x, y)) for y in basis2], len(basis2)) for x in basis1)
    pairing_map = tuple(
        from_columns([express(basis2, pair(algebra, x, y)) for y in basis2], len(basis2)) for x in basis1
    )
    quintuple = Quintuple(first, second, radical.dim, ModuleAction(first, second.dim, rho), pairing_map)
    details: dict[str, Any] = {
        "first_dim": first_lagrangian.dim,
        "second_dim": second_lagrangian.dim,
        "ideal_dim": ideal.dim,
        "codim": n - ideal.dim,
    }
    validation = validate_quintuple(quintuple)
    if not validation.valid:
        report = _report(
            "symmetric-decomposition", Status.REFUTED, start,
            details={**details, "violation": validation.violation}, witnesses={"pair": validation.witness},
        )
        return SymmetricDecomposition(quintuple, ideal, None, report)
    full = quintuple_algebra(quintuple)
    reduced, _ = reduced_quintuple_algebra(quintuple)
    identified = identified_common_ideal(quintuple)
    target = restrict(algebra, ideal)
    try:
        summation = AlgebraHom(full, algebra, from_columns(basis1 + basis2, n))
        images = [
            ideal.coordinates(summation.apply(lift_from_quotient(identified, reduced.unit(k)))) for k in range(reduced.dim)
        ]
        isomorphism = AlgebraHom(reduced, target, from_columns(images, ideal.dim))
    except NotAMorphism as exc:
        report = _report("symmetric-decomposition", Status.REFUTED, start, details={**details, "reason": str(exc)})
        return SymmetricDecomposition(quintuple, ideal, None, report)
    checks = {
        "ideal": is_ideal(algebra, ideal, Side.TWO_SIDED),
        "codim_parity": n - ideal.dim == (n - radical.dim) % 2,
        "kernel_is_identified_radical": summation.kernel() == identified,
        "isomorphism": isomorphism.is_isomorphism(),
    }
    status = Status.VERIFIED if all(checks.values()) else Status.REFUTED
    report = _report("symmetric-decomposition", status, start, details={**details, **checks})
    LOGGER.info("Symmetric decomposition: ideal of codimension %d", n - ideal.dim)
    return SymmetricDecomposition(quintuple, ideal, isomorphism, report)


# Quintuple claims --------------------------------------------------------------------
def quintuple_radical_check(q: Quintuple) -> VerificationReport:
    """The quintuple algebra is left central with radical ``R + R``; its reduction keeps ``R``."""
    start = time.perf_counter()
    full = quintuple_algebra(q)
    n1, n2, r = q.first.dim, q.second.dim, q.common_dim
    n = n1 + n2
    expected_radical = Subspace.span(
        [unit_vector(n, i) for i in range(r)] + [unit_vector(n, n1 + i) for i in range(r)], n
    )
    formula = all(
        pair(full, u, v)
        == (0,) * n1 + tuple(
            a + b for a, b in zip(q.pairing(v[:n1], u[n1:]), q.pairing(u[:n1], v[n1:]))
        )
        for u in (full.unit(i) for i in range(n))
        for v in (full.unit(j) for j in range(n))
    )
    identified = identified_common_ideal(q)
    reduced, _ = reduced_quintuple_algebra(q)
    checks = {
        "left_central": classify(full).left_central,
        "radical": form_radical(full) == expected_radical,
        "second_is_ideal": is_ideal(full, Subspace.span([unit_vector(n, n1 + j) for j in range(n2)], n)),
        "pairing_formula": formula,
        "identified_is_ideal": is_ideal(full, identified),
        "reduced_radical_dim": form_radical(reduced).dim == r,
    }
    details = {**checks, "reduced_rank": rank(reduced), "reduced_dim": reduced.dim}
    status = Status.VERIFIED if all(checks.values()) else Status.REFUTED
    return _report("quintuple-radical", status, start, details=details)


def symmetric_quotients(q: Quintuple) -> VerificationReport:
    """The reduced algebra is symmetric exactly when both quotients by ``R`` are abelian."""
    start = time.perf_counter()
    reduced, _ = reduced_quintuple_algebra(q)
    symmetric = classify(reduced).symmetric
    abelian_quotients = is_symmetric_quintuple(q)
    details = {"symmetric": symmetric, "abelian_quotients": abelian_quotients}
    status = Status.VERIFIED if symmetric == abelian_quotients else Status.REFUTED
    return _report("symmetric-quotients", status, start, details=details)


# Levi subalgebras ------------------------------------------------------------------
def levi_conjugacy_check(algebra: LeibnizAlgebra) -> VerificationReport:
    """Levi subalgebras ``graph(c)`` over a fixed one are conjugate by ``exp`` of a square-zero derivation."""
    start = time.perf_counter()
    if not classify(algebra).left_leibniz:
        return _report("levi-conjugacy", Status.SKIPPED, start, details={"reason": "not left Leibniz"})
    kernel = leibniz_kernel(algebra)
    radical = solvable_radical(algebra)
    if bracket_space(algebra, radical, kernel).dim:
        return _report("levi-conjugacy", Status.SKIPPED, start, details={"reason": "radical does not annihilate kernel"})
    levi = levi_decomposition(algebra).levi
    if levi.dim == 0 or kernel.dim == 0:
        return _report("levi-conjugacy", Status.VERIFIED, start, details={"family_dim": 0, "levi_dim": levi.dim})
    module = module_from_adjoint_action(algebra, levi, kernel)
    acting = module.algebra
    parameters = hom_modules(acting, adjoint_module(acting), module)
    members = [levi]
    for c in parameters:
        images = columns_of(c)
        members.append(
            Subspace.span(
                [tuple(a + b for a, b in zip(s, kernel.from_coordinates(images[i]))) for i, s in enumerate(levi.rows)],
                algebra.dim,
            )
        )
    details: dict[str, Any] = {"family_dim": len(parameters), "levi_dim": levi.dim}
    ok = True
    for member in members[1:]:
        try:
            conjugator = malcev_conjugator(algebra, levi, member)
        except HypothesisViolated as exc:
            return _report(
                "levi-conjugacy", Status.REFUTED, start, details={**details, "reason": str(exc)},
                witnesses={"levi": levi, "other": member},
            )
        f = conjugator.derivation
        ok = ok and is_derivation(algebra, f) and is_zero_matrix(mat_mul(f, f))
        ok = ok and verify_conjugacy(algebra, conjugator.automorphism, levi, member)
    if radical == kernel:
        invariant = True
        for i in range(algebra.dim):
            try:
                automorphism = exp_nilpotent(inner_derivation(algebra, algebra.unit(i)))
            except NotNilpotent:
                continue
            invariant = invariant and all(m.image(automorphism) == m for m in members)
        details["inner_invariance"] = invariant
        ok = ok and invariant
    status = Status.VERIFIED if ok else Status.REFUTED
    return _report("levi-conjugacy", status, start, details=details)


# Hierarchy ------------------------------------------------------------------------
HIERARCHY = (
    ("hierarchy-lie", "sl:2", 4),
    ("hierarchy-symmetric", "two-dim-square", 3),
    ("hierarchy-left-central", "reduced:coadjoint-affine", 2),
    ("hierarchy-left-leibniz", "hemisemidirect-natural:2", 1),
)


def hierarchy_witnesses() -> tuple[list[CorpusEntry], VerificationReport]:
    """One algebra at each level: Lie, symmetric, left central, left Leibniz."""
    start = time.perf_counter()
    entries = [entry_from_recipe(recipe, entry_id, {"level": level}) for entry_id, recipe, level in HIERARCHY]
    levels = [classify(e.algebra).level for e in entries]
    details = {e.id: level for e, level in zip(entries, levels)}
    status = Status.VERIFIED if levels == [4, 3, 2, 1] else Status.REFUTED
    return entries, _report("hierarchy", status, start, details=details)


# Dispatch -------------------------------------------------------------------------
def _combine(claim: str, reports: list[VerificationReport], start: float) -> VerificationReport:
    if not reports:
        return _report(claim, Status.SKIPPED, start, details={"reason": "no applicable subspaces"})
    status = worst_status(r.status for r in reports)
    failing = next((r for r in reports if r.status is status), reports[0])
    return _report(
        claim, status, start,
        details={"checked": len(reports), "statuses": [r.status.value for r in reports]},
        witnesses=failing.witnesses,
    )


def _lie_subalgebra_candidates(algebra: LeibnizAlgebra) -> list[Subspace]:
    candidates = [form_radical(algebra)]
    candidates += [subalgebra_closure(algebra, [algebra.unit(i)]) for i in range(algebra.dim)]
    if rank(algebra) <= 1:
        try:
            candidates.append(maximal_totally_isotropic(algebra))
        except (NotFoundOverField, NotRankOne):
            pass
    return candidates


def _claim_lie_subalgebra(entry: CorpusEntry, **_: Any) -> VerificationReport:
    start = time.perf_counter()
    reports = [lie_subalgebra_equivalences(entry.algebra, u) for u in _lie_subalgebra_candidates(entry.algebra)]
    return _combine("lie-subalgebra", reports, start)


def _claim_isotropic_ideal(entry: CorpusEntry, **_: Any) -> VerificationReport:
    start = time.perf_counter()
    algebra = entry.algebra
    _require_left_central(algebra)
    candidates = [form_radical(algebra), leibniz_kernel(algebra)]
    candidates += [rad_of(algebra, term) for term in derived_series(algebra)]
    candidates.append(rad_of(algebra, center(algebra)))
    if rank(algebra) <= 1:
        try:
            candidates.append(maximal_totally_isotropic(algebra))
        except (NotFoundOverField, NotRankOne):
            pass
    reports = [
        isotropic_ideal_check(algebra, u)
        for u in candidates
        if is_ideal(algebra, u, Side.TWO_SIDED) and is_totally_isotropic(algebra, u)
    ]
    return _combine("isotropic-ideal", reports, start)


def _with_quintuple(check: Callable[[Quintuple], VerificationReport], claim: str) -> Callable[..., VerificationReport]:
    def run(entry: CorpusEntry, **_: Any) -> VerificationReport:
        q = quintuple_for(entry)
        if q is None:
            return _report(claim, Status.SKIPPED, time.perf_counter(), details={"reason": "entry has no quintuple"})
        return check(q)

    return run


CLAIM_HANDLERS: dict[str, Callable[..., VerificationReport]] = {
    "psi-associativity": lambda entry, **_: associativity_check(entry.algebra),
    "lie-subalgebra": _claim_lie_subalgebra,
    "isotropic-ideal": _claim_isotropic_ideal,
    "no-semisimple-ideal": lambda entry, **_: no_semisimple_ideal_check(entry.algebra),
    "radical-intersection": lambda entry, seed, trials, attempts: verify_radical_intersection(
        entry.algebra, trials=trials, seed=seed, attempts=attempts
    ),
    "radical-complement": lambda entry, **_: radical_complement_check(entry.algebra),
    "quintuple-radical": _with_quintuple(quintuple_radical_check, "quintuple-radical"),
    "nilpotent-lagrangian": lambda entry, **_: nilpotent_lagrangian(entry.algebra)[1],
    "symmetric-criterion": lambda entry, **_: symmetric_criterion(entry.algebra),
    "symmetric-quotients": _with_quintuple(symmetric_quotients, "symmetric-quotients"),
    "symmetric-decomposition": lambda entry, **_: symmetric_decomposition(entry.algebra).report,
    "levi-conjugacy": lambda entry, **_: levi_conjugacy_check(entry.algebra),
    "hierarchy": lambda entry, **_: hierarchy_witnesses()[1],
}


def run_claim(
    claim: str, entry: CorpusEntry, *, seed: int = 0, trials: int = 20, attempts: int = 64
) -> VerificationReport:
    """Run one claim on one entry; unmet hypotheses become skipped reports."""
    claim = resolve_claim(claim)
    start = time.perf_counter()
    try:
        report = CLAIM_HANDLERS[CLAIM_NAMES[claim]](entry, seed=seed, trials=trials, attempts=attempts)
    except (FieldLimited, NotFoundOverField) as exc:
        LOGGER.warning("%s on %s is field limited: %s", claim, entry.id, exc)
        report = _report(claim, Status.FIELD_LIMITED, start, details={"reason": str(exc)})
    except (PreconditionFailed, NotSymmetric, NotLeftCentral, NotRankOne, RankZero) as exc:
        LOGGER.debug("%s skipped on %s: %s", claim, entry.id, exc)
        report = _report(claim, Status.SKIPPED, start, details={"reason": str(exc)})
    report.subject = entry.id
    return report
