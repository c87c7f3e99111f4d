"""Property-check reports and their canonical serialized form.

Every randomized check in this package aggregates per-trial *margins*: a
raw margin is the signed distance to the claimed inequality (>= 0 means
the claim holds outright), and each margin carries the tolerance it is
judged against.  A trial violates its claim when margin < -tol; a
violation within 10x of the tolerance is classified ``inconclusive``
(float noise near the boundary), anything worse is a ``fail``.

Serialized reports deliberately omit the wall-clock field so that two
runs with the same configuration produce byte-identical files.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = [
    "PropertyReport",
    "MarginLedger",
    "report_to_dict",
    "report_to_json",
    "reports_to_json",
]

FAIL_FACTOR = 10.0


@dataclass
class PropertyReport:
    """Outcome of one property check.

    :param property_id: identifier such as "P4" or "rcp-check".
    :param trials_run: number of trials executed.
    :param failures: (input-digest, raw margin) pairs for every trial whose
        margin fell below its tolerance.
    :param worst_margin: most negative normalized margin seen (raw/tol);
        +inf when no margins were recorded at all.
    :param status: "pass", "inconclusive", or "fail".
    :param elapsed: wall-clock seconds (excluded from serialization).
    """

    property_id: str
    trials_run: int
    failures: list[tuple[str, float]]
    worst_margin: float
    status: str
    elapsed: float = 0.0


@dataclass
class MarginLedger:
    """Accumulates (margin, tolerance) observations for one property run."""

    entries: int = 0
    worst_normalized: float = float("inf")
    failures: list[tuple[str, float]] = field(default_factory=list)

    def add(self, digest: str, margin_raw: float, tol: float) -> None:
        """Record one observation; tol must be positive."""
        normalized = margin_raw / tol
        self.entries += 1
        if normalized < self.worst_normalized:
            self.worst_normalized = normalized
        if normalized < -1.0:
            self.failures.append((digest, float(margin_raw)))

    @property
    def status(self) -> str:
        if self.worst_normalized < -FAIL_FACTOR:
            return "fail"
        if self.worst_normalized < -1.0:
            return "inconclusive"
        return "pass"

    def report(self, property_id: str, trials_run: int,
               elapsed: float = 0.0) -> PropertyReport:
        return PropertyReport(
            property_id=property_id,
            trials_run=trials_run,
            failures=list(self.failures),
            worst_margin=self.worst_normalized,
            status=self.status,
            elapsed=elapsed,
        )


def report_to_dict(report: PropertyReport) -> dict:
    """Serializable view of a report, without the wall-clock field."""
    return {
        "property_id": report.property_id,
        "trials_run": report.trials_run,
        "failures": [[digest, margin] for digest, margin in report.failures],
        "worst_margin": report.worst_margin,
        "status": report.status,
    }


def report_to_json(report: PropertyReport) -> str:
    """Canonical JSON for one report (sorted keys, no whitespace)."""
    return json.dumps(report_to_dict(report), sort_keys=True,
                      separators=(",", ":"))


def reports_to_json(reports) -> str:
    """Canonical JSON array for a sequence of reports."""
    return json.dumps([report_to_dict(r) for r in reports], sort_keys=True,
                      separators=(",", ":"))
