#!/usr/bin/env python3
# ruff: noqa: S101
"""
harness.py のユニットテスト
"""

import logging
import unittest.mock

import numpy as np
import pytest


class TestExperimentConfig:
    """ExperimentConfig のテスト"""

    def test_table_defaults(self):
        """表の既定パラメータ"""
        from levrecon.core.harness import ExperimentConfig, Metric

        table1 = ExperimentConfig.table1()
        table2 = ExperimentConfig.table2()

        assert (table1.n, table1.t, table1.N) == (28, 5, (11, 21, 31, 41, 101))
        assert table1.metric is Metric.EQUAL
        assert (table2.n, table2.t, table2.e) == (24, 7, (2, 3, 4))
        assert len(table2.cells()) == 12

    def test_hash_ignores_workers(self):
        """ワーカー数は設定ハッシュに影響しない"""
        from levrecon.core.harness import ExperimentConfig

        one = ExperimentConfig.table1(seed=3, workers=1)
        many = ExperimentConfig.table1(seed=3, workers=8)

        assert one.config_hash == many.config_hash
        assert ExperimentConfig.table1(seed=3).config_hash != ExperimentConfig.table1(seed=4).config_hash

    def test_parse(self):
        """辞書表現から復元できる"""
        from levrecon.core.harness import ExperimentConfig

        config = ExperimentConfig.table2(samples=500, seed=7)

        assert ExperimentConfig.parse(config.to_dict()) == config

    def test_validation(self):
        """不正なパラメータはエラー"""
        from levrecon.core.harness import ExperimentConfig, ExperimentKind, Metric

        with pytest.raises(ValueError):
            ExperimentConfig.table1(samples=0)
        with pytest.raises(ValueError):
            ExperimentConfig(ExperimentKind.CUSTOM, 10, 11)
        with pytest.raises(ValueError, match="needs at least one e"):
            ExperimentConfig(ExperimentKind.CUSTOM, 10, 2, (), (3,), metric=Metric.VERIFIABLE)
        with pytest.raises(ValueError):
            ExperimentConfig.table1(seed=-1)


class TestCertificate:
    """certified_within のテスト"""

    def test_matches_verify_radius(self, rng):
        """verify_radius が k 以下を返すときに限り成立する"""
        from levrecon.core.harness import certified_within
        from levrecon.core.majority import MajorityResult, TernaryWord, verify_radius

        N, t = 5, 2  # noqa: N806
        ones = rng.integers(0, N + 1, size=(200, 6))
        for k in (1, 2, 3):
            certified = certified_within(ones, N, t, k)
            for row, flag in zip(ones, certified, strict=True):
                result = MajorityResult(TernaryWord("0" * 6), tuple(int(N - c) for c in row), N)
                radius = verify_radius(result, t)
                assert bool(flag) == (radius is not None and radius <= k)


class TestMonteCarlo:
    """モンテカルロ推定のテスト"""

    def test_no_errors(self):
        """t = 0 では常に成功"""
        from levrecon.core.harness import mc_majority_equal

        assert mc_majority_equal(28, 0, 11, 1500, 1) == 1.0

    def test_verifiable_single_channel(self):
        """t <= e, N = 1 では常に検証できる"""
        from levrecon.core.harness import mc_verifiable

        assert mc_verifiable(10, 1, 1, 1, 500, 2) == 1.0

    def test_verifiable_e0(self):
        """e = 0 では k <= e が成り立たない"""
        from levrecon.core.harness import Metric, count_successes

        assert count_successes(10, 2, 3, 200, 0, Metric.VERIFIABLE, 0) == 0

    def test_independent_of_workers(self):
        """ワーカー数によらず同じ成功数"""
        from levrecon.core.harness import count_successes

        single = count_successes(28, 5, 11, 3500, 7, workers=1)
        parallel = count_successes(28, 5, 11, 3500, 7, workers=4)

        assert single == parallel

    def test_block_rng(self):
        """同じ (seed, cell, block) は同じ乱数列"""
        from levrecon.core.harness import block_rng

        first = block_rng(5, 1, 2).random(4)
        again = block_rng(5, 1, 2).random(4)
        other = block_rng(5, 1, 3).random(4)

        assert first.tolist() == again.tolist()
        assert first.tolist() != other.tolist()


class TestRun:
    """run と出力のテスト"""

    def test_table1_small(self):
        """Table 1 の縮小版"""
        from levrecon.core.harness import ExperimentConfig, run, to_csv

        config = ExperimentConfig.table1(samples=1000, seed=11, N=[11, 21])
        result = run(config)
        lines = to_csv(result).splitlines()

        assert len(result.cells) == 2
        assert result.cells[0].bound_thm13 == pytest.approx(0.8199, abs=1e-3)
        assert result.cells[0].bound_thm14 == pytest.approx(0.5806, abs=1e-3)
        assert lines[0] == "kind,n,t,e,N,samples,estimate,stderr,bound_thm13,bound_thm14,seed"
        assert lines[1].startswith("Table1,28,5,,11,1000,")

    def test_csv_reproducible(self):
        """同じ設定なら CSV はバイト単位で一致する"""
        from levrecon.core.harness import ExperimentConfig, run, to_csv

        config = ExperimentConfig.table2(samples=1000, seed=5, e=[3], N=[11])
        parallel = ExperimentConfig.table2(samples=1000, seed=5, workers=3, e=[3], N=[11])

        assert to_csv(run(config)) == to_csv(run(config)) == to_csv(run(parallel))

    def test_empty_grid(self):
        """N が空なら行の無い結果"""
        from levrecon.core.harness import ExperimentConfig, run, to_csv

        result = run(ExperimentConfig.table1(samples=100, N=[]))

        assert result.cells == ()
        assert to_csv(result).count("\n") == 1

    def test_result_store(self, temp_data_dir, caplog):
        """結果ストアに保存したセルは再計算しない"""
        from levrecon.core import db_config, result_store
        from levrecon.core.harness import ExperimentConfig, run

        db_config.set_result_db_path(temp_data_dir / "result.db")
        config = ExperimentConfig.table1(samples=1000, seed=2, N=[11, 21])
        first = run(config, use_store=True)

        assert result_store.count_cells(config.config_hash) == 2

        caplog.set_level(logging.INFO)
        with unittest.mock.patch("levrecon.core.harness.count_successes", side_effect=AssertionError):
            second = run(config, use_store=True)

        assert second.cells == first.cells
        assert "2 cells already stored" in caplog.text

    def test_result_store_parent_is_file(self, temp_data_dir, caplog):
        """保存先の親がファイルでも実験は最後まで進む"""
        from levrecon.core import db_config
        from levrecon.core.harness import ExperimentConfig, run

        (temp_data_dir / "blocker").write_text("not a directory")
        db_config.set_result_db_path(temp_data_dir / "blocker" / "result.db")
        config = ExperimentConfig.table1(samples=200, seed=3, N=[11, 21])

        result = run(config, use_store=True)

        assert len(result.cells) == 2
        assert all(cell.samples == 200 for cell in result.cells)
        assert "Result store unavailable" in caplog.text

    def test_result_store_path_is_directory(self, temp_data_dir, caplog):
        """保存先がディレクトリでも実験は最後まで進む"""
        from levrecon.core import db_config
        from levrecon.core.harness import ExperimentConfig, run

        (temp_data_dir / "result.db").mkdir()
        db_config.set_result_db_path(temp_data_dir / "result.db")
        config = ExperimentConfig.table1(samples=200, seed=3, N=[11])

        result = run(config, use_store=True)

        assert len(result.cells) == 1
        assert result.cells == run(config).cells
        assert "Result store unavailable" in caplog.text

    def test_result_store_failure_after_init(self, temp_data_dir):
        """初期化後にストアが壊れても読み書きは警告だけで済む"""
        from levrecon.core import db_config, result_store
        from levrecon.core.harness import ExperimentConfig

        db_config.set_result_db_path(temp_data_dir / "result.db")
        result_store.init_db()
        db_config.set_result_db_path(temp_data_dir / "gone" / "result.db")
        config = ExperimentConfig.table1(samples=100, N=[11])

        with unittest.mock.patch("pathlib.Path.mkdir", side_effect=PermissionError("read-only")):
            assert result_store.get_cell(config.config_hash, 0) is None
            assert result_store.count_cells(config.config_hash) == 0
            result_store.set_cell(config.config_hash, 0, unittest.mock.MagicMock())

    def test_published_deviation(self):
        """公表値からの乖離を標準誤差の倍数で返す"""
        from levrecon.core.harness import ExperimentConfig, published_deviation
        from levrecon.core.models import ExperimentCell

        config = ExperimentConfig.table1(samples=10000)
        cell = ExperimentCell("Table1", 28, 5, None, 11, 10000, 8615, 0)
        custom = ExperimentConfig.table1(samples=10000, n=30)

        assert published_deviation(config, cell) == pytest.approx(0.0)
        assert published_deviation(custom, cell) is None

    def test_json(self):
        """JSON には設定とハッシュが含まれる"""
        import json

        from levrecon.core.harness import ExperimentConfig, run, to_json

        config = ExperimentConfig.table1(samples=100, N=[11])
        data = json.loads(to_json(run(config)))

        assert data["config_hash"] == config.config_hash
        assert data["cells"][0]["N"] == 11
