#!/usr/bin/env python3
"""
Configuration dataclasses for levrecon.

Typed view of config.yaml. Every section is optional; missing keys fall back to the
Table 1 / Table 2 settings.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from levrecon.core.harness import DEFAULT_SAMPLES, TABLE1_GRID, TABLE2_GRID

SEED_ENV = "LEVRECON_SEED"


@dataclass
class TableConfig:
    """Parameter grid of one table."""

    n: int
    t: int
    e: list[int] = field(default_factory=list)
    N: list[int] = field(default_factory=list)

    @classmethod
    def parse(cls, data: dict, default: dict) -> TableConfig:
        merged = {**default, **data}
        return cls(n=merged["n"], t=merged["t"], e=list(merged["e"]), N=list(merged["N"]))

    def to_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "e": self.e, "N": self.N}


@dataclass
class ExperimentDefaults:
    samples: int = DEFAULT_SAMPLES
    seed: int | None = None
    workers: int = 1
    table1: TableConfig = field(default_factory=lambda: TableConfig.parse({}, TABLE1_GRID))
    table2: TableConfig = field(default_factory=lambda: TableConfig.parse({}, TABLE2_GRID))

    @classmethod
    def parse(cls, data: dict) -> ExperimentDefaults:
        return cls(
            samples=data.get("samples", DEFAULT_SAMPLES),
            seed=data.get("seed"),
            workers=data.get("workers", 1),
            table1=TableConfig.parse(data.get("table1", {}), TABLE1_GRID),
            table2=TableConfig.parse(data.get("table2", {}), TABLE2_GRID),
        )

    def to_dict(self) -> dict:
        result: dict[str, Any] = {
            "samples": self.samples,
            "workers": self.workers,
            "table1": self.table1.to_dict(),
            "table2": self.table2.to_dict(),
        }
        if self.seed is not None:
            result["seed"] = self.seed
        return result


@dataclass
class DataConfig:
    """Result store directory; None disables the store."""

    cache: str | None = None

    @classmethod
    def parse(cls, data: dict) -> DataConfig:
        return cls(cache=data.get("cache"))

    def get_cache_dir(self, base_dir: Path) -> Path | None:
        if self.cache is None:
            return None
        path = Path(self.cache)
        if not path.is_absolute():
            path = base_dir / path
        return path


@dataclass
class Config:
    """Main configuration class representing config.yaml."""

    experiment: ExperimentDefaults = field(default_factory=ExperimentDefaults)
    data: DataConfig = field(default_factory=DataConfig)

    @classmethod
    def parse(cls, data: dict | None) -> Config:
        data = data or {}
        return cls(
            experiment=ExperimentDefaults.parse(data.get("experiment", {})),
            data=DataConfig.parse(data.get("data", {})),
        )

    @classmethod
    def load(cls, config_path: Path, schema_path: Path) -> Config:
        """Load config from YAML file with schema validation."""
        import my_lib.config

        return cls.parse(my_lib.config.load(config_path, schema_path))

    def resolve_seed(self, explicit: str | int | None = None) -> int:
        """--seed, then LEVRECON_SEED, then experiment.seed, then 0."""
        for candidate in (explicit, os.environ.get(SEED_ENV), self.experiment.seed):
            if candidate is None or candidate == "":
                continue
            seed = int(candidate)
            if seed < 0:
                raise ValueError(f"seed must be non-negative, got {seed}")
            return seed
        return 0

    def to_dict(self) -> dict:
        result: dict[str, Any] = {"experiment": self.experiment.to_dict()}
        if self.data.cache is not None:
            result["data"] = {"cache": self.data.cache}
        return result
