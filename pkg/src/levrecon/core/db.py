#!/usr/bin/env python3
"""
Locations of the schema and result store, and SQLite access through my_lib.sqlite_util.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import TYPE_CHECKING

import my_lib.sqlite_util

if TYPE_CHECKING:
    import sqlite3

BASE_DIR = Path(__file__).resolve().parent.parent.parent.parent
SCHEMA_DIR = BASE_DIR / "schema"
CONFIG_SCHEMA_PATH = SCHEMA_DIR / "config.schema"

# 実験結果キャッシュの既定の保存先（設定ファイルの data.cache で上書き）
RESULT_DB = BASE_DIR / "data" / "result.db"


@contextmanager
def get_connection(db_path: Path, timeout: float = 10.0) -> Iterator[sqlite3.Connection]:
    """Open db_path, creating its directory first."""
    db_path.parent.mkdir(parents=True, exist_ok=True)
    with my_lib.sqlite_util.connect(db_path, timeout=timeout) as conn:
        yield conn


def init_schema(db_path: Path, schema_sql: str) -> None:
    with get_connection(db_path) as conn:
        my_lib.sqlite_util.exec_schema(conn, schema_sql)
        conn.commit()
