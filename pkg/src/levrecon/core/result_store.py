#!/usr/bin/env python3
"""
SQLite store for finished experiment cells.

Cells are keyed by (config hash, cell index). Store failures are logged and the experiment
carries on without the cache.
"""

import logging
import sqlite3
import threading
from datetime import datetime

import levrecon.core.db
import levrecon.core.db_config
from levrecon.core.models import ExperimentCell

_db_lock = threading.Lock()

RESULT_SCHEMA = """
CREATE TABLE IF NOT EXISTS cell (
    config_hash TEXT NOT NULL,
    cell_index INTEGER NOT NULL,
    kind TEXT NOT NULL,
    n INTEGER NOT NULL,
    t INTEGER NOT NULL,
    e INTEGER,
    channels INTEGER NOT NULL,
    samples INTEGER NOT NULL,
    successes INTEGER NOT NULL,
    seed INTEGER NOT NULL,
    bound_thm13 REAL,
    bound_thm14 REAL,
    updated_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
    PRIMARY KEY (config_hash, cell_index)
)
"""


def init_db() -> None:
    levrecon.core.db.init_schema(levrecon.core.db_config.get_result_db_path(), RESULT_SCHEMA)


def get_cell(config_hash: str, index: int) -> ExperimentCell | None:
    try:
        with _db_lock, levrecon.core.db.get_connection(levrecon.core.db_config.get_result_db_path()) as conn:
            cursor = conn.cursor()
            cursor.execute(
                """
                SELECT kind, n, t, e, channels, samples, successes, seed, bound_thm13, bound_thm14
                FROM cell WHERE config_hash = ? AND cell_index = ?
                """,
                (config_hash, index),
            )
            row = cursor.fetchone()
            if row:
                return ExperimentCell.parse_row(row)
    except (sqlite3.Error, OSError) as e:
        logging.warning("Failed to get cell %s/%d: %s", config_hash[:12], index, e)

    return None


def set_cell(config_hash: str, index: int, cell: ExperimentCell) -> None:
    try:
        with _db_lock, levrecon.core.db.get_connection(levrecon.core.db_config.get_result_db_path()) as conn:
            cursor = conn.cursor()
            cursor.execute(
                """
                INSERT OR REPLACE INTO cell
                (config_hash, cell_index, kind, n, t, e, channels, samples, successes, seed,
                 bound_thm13, bound_thm14, updated_at)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    config_hash,
                    index,
                    cell.kind,
                    cell.n,
                    cell.t,
                    cell.e,
                    cell.N,
                    cell.samples,
                    cell.successes,
                    cell.seed,
                    cell.bound_thm13,
                    cell.bound_thm14,
                    datetime.now().isoformat(),
                ),
            )
            conn.commit()
    except (sqlite3.Error, OSError) as e:
        logging.warning("Failed to set cell %s/%d: %s", config_hash[:12], index, e)


def count_cells(config_hash: str) -> int:
    try:
        with _db_lock, levrecon.core.db.get_connection(levrecon.core.db_config.get_result_db_path()) as conn:
            row = conn.execute("SELECT COUNT(*) FROM cell WHERE config_hash = ?", (config_hash,)).fetchone()
            return int(row[0]) if row else 0
    except (sqlite3.Error, OSError) as e:
        logging.warning("Failed to count cells for %s: %s", config_hash[:12], e)
        return 0
