#!/usr/bin/env python3
"""
Result store location.

The CLI points it at <data.cache>/result.db; tests redirect it to a temporary directory:

    from levrecon.core.db_config import set_result_db_path

    set_result_db_path(temp_path / "result.db")
"""

from dataclasses import dataclass, field
from pathlib import Path

from levrecon.core.db import RESULT_DB


@dataclass
class _StorePaths:
    result: Path = field(default_factory=lambda: RESULT_DB)


_paths = _StorePaths()


def get_result_db_path() -> Path:
    return _paths.result


def set_result_db_path(path: Path) -> None:
    _paths.result = path


def reset_all_paths() -> None:
    """Back to the default location (test cleanup)."""
    global _paths
    _paths = _StorePaths()
