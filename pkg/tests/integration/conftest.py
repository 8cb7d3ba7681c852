#!/usr/bin/env python3
"""
統合テスト用フィクスチャ

ユニットテストとは異なり、結果ストアや設定ファイルは実物を使います。
各テストは一時ディレクトリで完結します。
"""

import pytest
import yaml


@pytest.fixture
def small_config(temp_data_dir):
    """結果ストアを有効にした小さな設定ファイル"""
    config = {
        "experiment": {
            "samples": 2000,
            "seed": 17,
            "workers": 2,
            "table1": {"N": [11, 21]},
            "table2": {"e": [3], "N": [21]},
        },
        "data": {"cache": str(temp_data_dir / "cache")},
    }
    (temp_data_dir / "cache").mkdir()
    path = temp_data_dir / "config.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return path
