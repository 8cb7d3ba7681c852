#!/usr/bin/env python3
"""
Seeded Monte Carlo experiments for the majority decoder.

Trials run in blocks of BLOCK_SIZE. Block b of cell c draws from
Philox(SeedSequence(master_seed, spawn_key=(c, b))), so the estimates depend on the
master seed only and not on how many workers share the blocks.

The transmitted word is the all-zero word: channel and vote commute with translation.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import json
import logging
import math
import sqlite3
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from levrecon.core import result_store
from levrecon.core.channels import ChannelModel, sample_error_patterns
from levrecon.core.majority import BirthdayMethod, majority_success_lb
from levrecon.core.models import CSV_COLUMNS, ExperimentCell

BLOCK_SIZE = 1000
DEFAULT_SAMPLES = 100_000

# 公表値との乖離を警告する標準誤差の倍数
WARN_SIGMA = 3.0

TABLE1_GRID: dict[str, Any] = {"n": 28, "t": 5, "e": [], "N": [11, 21, 31, 41, 101]}
TABLE2_GRID: dict[str, Any] = {"n": 24, "t": 7, "e": [2, 3, 4], "N": [11, 21, 31, 41]}

# 公表されている推定値 (e, N) -> 確率
PUBLISHED: dict[str, dict[tuple[int | None, int], float]] = {
    "Table1": {
        (None, 11): 0.8615,
        (None, 21): 0.9929,
        (None, 31): 0.9997,
        (None, 41): 1.000,
        (None, 101): 1.000,
    },
    "Table2": {
        (2, 11): 0.068,
        (2, 21): 0.369,
        (2, 31): 0.701,
        (2, 41): 0.887,
        (3, 11): 0.260,
        (3, 21): 0.790,
        (3, 31): 0.971,
        (3, 41): 0.997,
        (4, 11): 0.587,
        (4, 21): 0.972,
        (4, 31): 0.999,
        (4, 41): 0.999,
    },
}


class ExperimentKind(enum.Enum):
    TABLE1 = "Table1"
    TABLE2 = "Table2"
    CUSTOM = "Custom"


class Metric(enum.Enum):
    EQUAL = "equal"
    VERIFIABLE = "verifiable"


@dataclass(frozen=True)
class ExperimentConfig:
    kind: ExperimentKind
    n: int
    t: int
    e: tuple[int, ...] = ()
    N: tuple[int, ...] = ()
    samples: int = DEFAULT_SAMPLES
    master_seed: int = 0
    worker_count: int = 1
    metric: Metric = Metric.EQUAL

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples}")
        if self.worker_count < 1:
            raise ValueError(f"worker count must be positive, got {self.worker_count}")
        if not 0 <= self.t <= self.n:
            raise ValueError(f"need 0 <= t <= n, got t={self.t}, n={self.n}")
        if any(N < 1 for N in self.N):
            raise ValueError(f"channel counts must be positive: {self.N}")
        if any(e < 0 for e in self.e):
            raise ValueError(f"e must be non-negative: {self.e}")
        if self.metric is Metric.VERIFIABLE and self.N and not self.e:
            raise ValueError("the verifiable metric needs at least one e")
        if self.master_seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.master_seed}")

    @classmethod
    def table1(
        cls, samples: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1, **grid: Any
    ) -> ExperimentConfig:
        merged = {**TABLE1_GRID, **grid}
        return cls(
            ExperimentKind.TABLE1,
            merged["n"],
            merged["t"],
            (),
            tuple(merged["N"]),
            samples,
            seed,
            workers,
            Metric.EQUAL,
        )

    @classmethod
    def table2(
        cls, samples: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1, **grid: Any
    ) -> ExperimentConfig:
        merged = {**TABLE2_GRID, **grid}
        return cls(
            ExperimentKind.TABLE2,
            merged["n"],
            merged["t"],
            tuple(merged["e"]),
            tuple(merged["N"]),
            samples,
            seed,
            workers,
            Metric.VERIFIABLE,
        )

    @classmethod
    def parse(cls, data: dict[str, Any]) -> ExperimentConfig:
        return cls(
            kind=ExperimentKind(data["kind"]),
            n=int(data["n"]),
            t=int(data["t"]),
            e=tuple(int(e) for e in data.get("e", [])),
            N=tuple(int(N) for N in data.get("N", [])),
            samples=int(data.get("samples", DEFAULT_SAMPLES)),
            master_seed=int(data.get("seed", 0)),
            worker_count=int(data.get("workers", 1)),
            metric=Metric(data.get("metric", Metric.EQUAL.value)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "t": self.t,
            "e": list(self.e),
            "N": list(self.N),
            "samples": self.samples,
            "seed": self.master_seed,
            "workers": self.worker_count,
            "metric": self.metric.value,
        }

    @property
    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON, without the worker count."""
        data = self.to_dict()
        del data["workers"]
        return hashlib.sha256(json.dumps(data, sort_keys=True, separators=(",", ":")).encode()).hexdigest()

    def cells(self) -> list[tuple[int | None, int]]:
        if self.metric is Metric.EQUAL:
            return [(None, N) for N in self.N]
        return [(e, N) for e in self.e for N in self.N]


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    cells: tuple[ExperimentCell, ...] = field(default=())

    @property
    def config_hash(self) -> str:
        return self.config.config_hash

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "config_hash": self.config_hash,
            "cells": [c.to_dict() for c in self.cells],
        }


def block_rng(master_seed: int, cell_index: int, block: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(cell_index, block))
    return np.random.Generator(np.random.Philox(seq))


def certified_within(ones: np.ndarray, N: int, t: int, k: int) -> np.ndarray:  # noqa: N803
    """
    Whether the certificate inequality holds at radius k, per trial.

    `ones` holds the per-coordinate error counts (the vote counts against x = 0).
    """
    n = ones.shape[-1]
    m = np.minimum(ones, N - ones)
    top = -np.sort(-m, axis=-1)[..., : min(k + 1, n)]
    return m.sum(axis=-1) + (N - 2 * top).sum(axis=-1) > t * N


def _count_block(
    n: int, t: int, N: int, size: int, rng: np.random.Generator, metric: Metric, e: int | None  # noqa: N803
) -> int:
    flips = sample_error_patterns(n, t, (size, N), rng, ChannelModel.UNIFORM_BALL)
    ones = flips.sum(axis=1, dtype=np.int64)
    if metric is Metric.EQUAL:
        return int((2 * ones < N).all(axis=-1).sum())
    if e is None or e < 1:
        return 0
    return int(certified_within(ones, N, t, e).sum())


def count_successes(
    n: int,
    t: int,
    N: int,  # noqa: N803
    samples: int,
    seed: int,
    metric: Metric = Metric.EQUAL,
    e: int | None = None,
    cell_index: int = 0,
    workers: int = 1,
) -> int:
    blocks = math.ceil(samples / BLOCK_SIZE)

    def task(block: int) -> int:
        size = min(BLOCK_SIZE, samples - block * BLOCK_SIZE)
        return _count_block(n, t, N, size, block_rng(seed, cell_index, block), metric, e)

    if workers == 1:
        return sum(task(b) for b in range(blocks))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(task, range(blocks)))


def mc_majority_equal(
    n: int, t: int, N: int, samples: int, seed: int, workers: int = 1  # noqa: N803
) -> float:
    """Fraction of trials in which the vote returns x exactly."""
    return count_successes(n, t, N, samples, seed, Metric.EQUAL, workers=workers) / samples


def mc_verifiable(
    n: int, t: int, e: int, N: int, samples: int, seed: int, workers: int = 1  # noqa: N803
) -> float:
    """Fraction of trials in which verify_radius returns some k <= e."""
    return count_successes(n, t, N, samples, seed, Metric.VERIFIABLE, e, workers=workers) / samples


def published_deviation(config: ExperimentConfig, cell: ExperimentCell) -> float | None:
    """Distance to the published estimate in standard errors, None off the published grids."""
    grid = TABLE1_GRID if config.kind is ExperimentKind.TABLE1 else TABLE2_GRID
    if config.kind is ExperimentKind.CUSTOM or (config.n, config.t) != (grid["n"], grid["t"]):
        return None
    ref = PUBLISHED[config.kind.value].get((cell.e, cell.N))
    if ref is None:
        return None
    sigma = math.sqrt(ref * (1 - ref) / cell.samples) or cell.stderr or 1 / cell.samples
    return abs(cell.estimate - ref) / sigma


def run(config: ExperimentConfig, use_store: bool = False) -> ExperimentResult:
    """グリッドの各セルについてモンテカルロ実験を行う.

    Args:
        config: 実験設定
        use_store: True なら結果ストアに保存済みのセルを再利用し、新しいセルを保存する。
            ストアが使えないときは警告を出してストアなしで続行する。

    Returns:
        グリッド順に並んだセルを持つ ExperimentResult
    """
    digest = config.config_hash
    if use_store:
        try:
            result_store.init_db()
        except (sqlite3.Error, OSError) as e:
            logging.warning("Result store unavailable, running without it: %s", e)
            use_store = False
        else:
            logging.info("%d cells already stored for %s", result_store.count_cells(digest), digest[:12])

    cells = []
    grid = config.cells()
    for index, (e, N) in enumerate(grid):  # noqa: N806
        if use_store and (cached := result_store.get_cell(digest, index)) is not None:
            logging.info("Cell %d/%d (e=%s, N=%d) loaded from the result store", index + 1, len(grid), e, N)
            cells.append(cached)
            continue

        logging.info("Cell %d/%d (e=%s, N=%d): %d samples", index + 1, len(grid), e, N, config.samples)
        successes = count_successes(
            config.n,
            config.t,
            N,
            config.samples,
            config.master_seed,
            config.metric,
            e,
            index,
            config.worker_count,
        )
        bound13 = bound14 = None
        if config.metric is Metric.EQUAL:
            bound13 = majority_success_lb(config.n, config.t, N, BirthdayMethod.RECURSIVE)
            bound14 = majority_success_lb(config.n, config.t, N, BirthdayMethod.SIMPLE)
        cell = ExperimentCell(
            config.kind.value,
            config.n,
            config.t,
            e,
            N,
            config.samples,
            successes,
            config.master_seed,
            bound13,
            bound14,
        )

        deviation = published_deviation(config, cell)
        if deviation is not None and deviation > WARN_SIGMA:
            logging.warning(
                "Cell (e=%s, N=%d) lies %.1f standard errors from the published value", e, N, deviation
            )
        logging.info("Cell %d/%d done: %.4f ± %.4f", index + 1, len(grid), cell.estimate, cell.stderr)

        if use_store:
            result_store.set_cell(digest, index, cell)
        cells.append(cell)

    return ExperimentResult(config, tuple(cells))


def to_csv(result: ExperimentResult) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for cell in result.cells:
        writer.writerow(cell.to_row())
    return buffer.getvalue()


def to_json(result: ExperimentResult) -> str:
    return json.dumps(result.to_dict(), indent=2) + "\n"


def write_csv(result: ExperimentResult, path: Path) -> None:
    path.write_text(to_csv(result), encoding="utf-8")


def write_json(result: ExperimentResult, path: Path) -> None:
    path.write_text(to_json(result), encoding="utf-8")
