"""Discretized central region: columns with no common strictly-smaller
column, and the completeness evidence test built on their fraction.

Column a is central when no other column beats it simultaneously in every
row; the fraction of central columns estimates the measure of the region
where the sensors admit no common descent direction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import DataMatrix


@dataclass(frozen=True)
class CentralReport:
    """members: 1-based column indices with empty strict-below
    intersection; fraction = len(members)/n."""

    members: frozenset[int]
    n: int

    @property
    def fraction(self) -> float:
        return len(self.members) / self.n

    def to_json_obj(self) -> dict:
        return {"members": sorted(self.members), "fraction": self.fraction}


@dataclass(frozen=True)
class CompletenessResult:
    verdict: str  # 'complete-evidence' or 'no-evidence'
    fraction: float
    threshold: float
    report: CentralReport

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.verdict,
            "fraction": self.fraction,
            "threshold": self.threshold,
            "members": sorted(self.report.members),
        }


def discretized_central_region(M: DataMatrix) -> CentralReport:
    """Columns a whose strict-below sets intersect emptily across rows:
    no column b with M[i,b] < M[i,a] for every i.

    Row-by-row boolean intersection with early exit once the candidate
    set empties; the column holding any row's minimum is always a member.
    """
    values = M.values
    m, n = values.shape
    members = []
    for a in range(n):
        alive = values[0] < values[0, a]
        if alive.any():
            for i in range(1, m):
                alive &= values[i] < values[i, a]
                if not alive.any():
                    break
        if not alive.any():
            members.append(a + 1)
    return CentralReport(frozenset(members), n)


def completeness_test(M: DataMatrix, threshold: float = 0.05) -> CompletenessResult:
    """Evidence of completeness when the central fraction clears the
    threshold.  No calibrated test exists for finite n; the raw fraction
    is always reported and the threshold is the caller's responsibility.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    report = discretized_central_region(M)
    fraction = report.fraction
    verdict = "complete-evidence" if fraction > threshold else "no-evidence"
    return CompletenessResult(verdict, fraction, threshold, report)
