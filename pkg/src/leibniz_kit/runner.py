"""Batch verification of corpus entries."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from leibniz_kit.algebra import classify
from leibniz_kit.config import Config
from leibniz_kit.corpus import CorpusEntry
from leibniz_kit.pairing import rank
from leibniz_kit.verify import CLAIMS, Status, VerificationReport, hierarchy_witnesses, run_claim, worst_status

LOGGER = logging.getLogger(__name__)

PER_ENTRY_CLAIMS = tuple(claim for claim in CLAIMS if claim != "hierarchy")


@dataclass
class EntryResult:
    entry_id: str
    level: int
    rank: int
    expectation_errors: List[str] = field(default_factory=list)
    reports: List[VerificationReport] = field(default_factory=list)

    @property
    def status(self) -> Status:
        if self.expectation_errors:
            return Status.REFUTED
        return worst_status(r.status for r in self.reports)

    def to_dict(self) -> Dict[str, object]:
        return {
            "id": self.entry_id,
            "level": self.level,
            "rank": self.rank,
            "status": self.status.value,
            "expectation_errors": list(self.expectation_errors),
            "reports": [r.to_dict() for r in self.reports],
        }


@dataclass
class RunSummary:
    results: List[EntryResult] = field(default_factory=list)
    global_reports: List[VerificationReport] = field(default_factory=list)

    @property
    def status(self) -> Status:
        statuses = [r.status for r in self.results] + [r.status for r in self.global_reports]
        return worst_status(statuses)

    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in Status}
        for result in self.results:
            for report in result.reports:
                counts[report.status.value] += 1
        for report in self.global_reports:
            counts[report.status.value] += 1
        return counts

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": self.status.value,
            "counts": self.counts(),
            "entries": [r.to_dict() for r in self.results],
            "global": [r.to_dict() for r in self.global_reports],
        }

    def render_text(self) -> str:
        lines = [f"{'entry':<28} {'level':>5} {'rank':>4}  " + " ".join(f"{c[:10]:<10}" for c in PER_ENTRY_CLAIMS)]
        for result in self.results:
            cells = {r.claim: r.status.value for r in result.reports}
            row = " ".join(f"{cells.get(c, '-')[:10]:<10}" for c in PER_ENTRY_CLAIMS)
            lines.append(f"{result.entry_id:<28} {result.level:>5} {result.rank:>4}  {row}")
            for error in result.expectation_errors:
                lines.append(f"    expectation: {error}")
        for report in self.global_reports:
            lines.append(report.render_text())
        counts = ", ".join(f"{name} {count}" for name, count in self.counts().items())
        lines.append(f"overall: {self.status.value} ({counts})")
        return "\n".join(lines)


class CorpusRunner:
    """Runs every claim on every entry and compares recorded expectations."""

    def __init__(self, config: Config, claims: Optional[Iterable[str]] = None) -> None:
        self.config = config
        self.claims = tuple(claims) if claims is not None else PER_ENTRY_CLAIMS

    def run(self, entries: Iterable[CorpusEntry], include_hierarchy: bool = True) -> RunSummary:
        summary = RunSummary()
        for entry in entries:
            try:
                summary.results.append(self.run_entry(entry))
            except Exception as exc:  # noqa: BLE001
                LOGGER.exception("Unhandled error while verifying %s: %s", entry.id, exc)
                summary.results.append(
                    EntryResult(entry.id, -1, -1, expectation_errors=[f"unhandled error: {exc}"])
                )
        if include_hierarchy:
            _, report = hierarchy_witnesses()
            report.subject = "built-in witnesses"
            summary.global_reports.append(report)
        LOGGER.info("Corpus run finished: %s", summary.counts())
        return summary

    def run_entry(self, entry: CorpusEntry) -> EntryResult:
        if entry.algebra.dim > self.config.max_dim:
            raise ValueError(f"dimension {entry.algebra.dim} exceeds max_dim {self.config.max_dim}")
        flags = classify(entry.algebra)
        observed_rank = rank(entry.algebra)
        result = EntryResult(entry.id, flags.level, observed_rank)
        result.expectation_errors.extend(self._compare(entry, flags.level, observed_rank))
        for claim in self.claims:
            LOGGER.debug("Running %s on %s", claim, entry.id)
            report = run_claim(
                claim,
                entry,
                seed=self.config.seed,
                trials=self.config.trials,
                attempts=self.config.sample_attempts,
            )
            if report.status is Status.REFUTED:
                LOGGER.error("%s refuted on %s: %s", claim, entry.id, report.witnesses)
            result.reports.append(report)
        return result

    @staticmethod
    def _compare(entry: CorpusEntry, level: int, observed_rank: int) -> List[str]:
        errors = []
        expected_level = entry.expected.get("level")
        if expected_level is not None and expected_level != level:
            errors.append(f"level {level}, expected {expected_level}")
        expected_rank = entry.expected.get("rank")
        if expected_rank is not None and expected_rank != observed_rank:
            errors.append(f"rank {observed_rank}, expected {expected_rank}")
        return errors

