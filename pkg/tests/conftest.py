#!/usr/bin/env python3
"""
共通テストフィクスチャ

テスト全体で使用する共通のフィクスチャとヘルパーを定義します。
"""

import tempfile
import unittest.mock
from pathlib import Path

import numpy as np
import pytest


# === 環境モック ===
@pytest.fixture(scope="session", autouse=True)
def env_mock():
    """テスト環境用の環境変数モック"""
    with unittest.mock.patch.dict(
        "os.environ",
        {
            "TEST": "true",
            "NO_COLORED_LOGS": "true",
        },
    ) as fixture:
        yield fixture


@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    """LEVRECON_SEED が外部から混入しないようにする"""
    monkeypatch.delenv("LEVRECON_SEED", raising=False)


# === 符号フィクスチャ ===
@pytest.fixture
def hamming7():
    """Hamming(7,4) 符号（e = 1）"""
    from levrecon.core.codes import hamming_code

    return hamming_code(3).to_code()


@pytest.fixture
def rng():
    """固定シードの乱数生成器"""
    return np.random.default_rng(12345)


# === データベースフィクスチャ ===
@pytest.fixture
def temp_data_dir():
    """一時データディレクトリを返す"""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


# === データベースパス管理 ===
@pytest.fixture(autouse=True)
def reset_db_paths():
    """各テスト後に db_config のパスをリセット"""
    from levrecon.core import db_config

    yield
    db_config.reset_all_paths()
