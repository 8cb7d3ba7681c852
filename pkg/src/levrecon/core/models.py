#!/usr/bin/env python3
"""
Data models for experiment results.

ExperimentCell is one row of a Monte Carlo table; it is what the result store persists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

# CSV の列順
CSV_COLUMNS = (
    "kind",
    "n",
    "t",
    "e",
    "N",
    "samples",
    "estimate",
    "stderr",
    "bound_thm13",
    "bound_thm14",
    "seed",
)


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


@dataclass(frozen=True)
class ExperimentCell:
    """Success count of one (n, t, e, N) cell."""

    kind: str
    n: int
    t: int
    e: int | None
    N: int
    samples: int
    successes: int
    seed: int
    bound_thm13: float | None = None
    bound_thm14: float | None = None

    @property
    def estimate(self) -> float:
        return self.successes / self.samples

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.samples)

    @classmethod
    def parse_row(cls, row: tuple) -> ExperimentCell:
        """Create ExperimentCell from DB row."""
        return cls(
            kind=row[0],
            n=row[1],
            t=row[2],
            e=row[3],
            N=row[4],
            samples=row[5],
            successes=row[6],
            seed=row[7],
            bound_thm13=row[8],
            bound_thm14=row[9],
        )

    def to_row(self) -> dict[str, str]:
        """CSV row with fixed six-digit formatting."""
        return {
            "kind": self.kind,
            "n": str(self.n),
            "t": str(self.t),
            "e": "" if self.e is None else str(self.e),
            "N": str(self.N),
            "samples": str(self.samples),
            "estimate": _fmt(self.estimate),
            "stderr": _fmt(self.stderr),
            "bound_thm13": _fmt(self.bound_thm13),
            "bound_thm14": _fmt(self.bound_thm14),
            "seed": str(self.seed),
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "n": self.n,
            "t": self.t,
            "e": self.e,
            "N": self.N,
            "samples": self.samples,
            "successes": self.successes,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "bound_thm13": self.bound_thm13,
            "bound_thm14": self.bound_thm14,
            "seed": self.seed,
        }
