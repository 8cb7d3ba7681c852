#!/usr/bin/env python3
# ruff: noqa: S101
"""
hamming_core.py のユニットテスト
"""

import numpy as np
import pytest


class TestWord:
    """Word のテスト"""

    def test_from_str(self):
        """0/1 文字列から語を生成できる"""
        from levrecon.core.hamming_core import Word

        w = Word.from_str("1010")

        assert w.length == 4
        assert w.bits == 0b1010
        assert w.weight == 2
        assert str(w) == "1010"

    def test_coordinate_one_is_leftmost(self):
        """座標 1 は文字列の左端"""
        from levrecon.core.hamming_core import Word

        w = Word.from_str("1000")

        assert w.bit(1) == 1
        assert w.bit(4) == 0
        assert w.support().to_list() == [1]

    def test_invalid_string(self):
        """0/1 以外の文字はエラー"""
        from levrecon.core.hamming_core import Word

        with pytest.raises(ValueError, match="not a 0/1 word"):
            Word.from_str("10a1")

    def test_xor_length_mismatch(self):
        """長さの異なる語の加算はエラー"""
        from levrecon.core.hamming_core import Word

        with pytest.raises(ValueError, match="length mismatch"):
            Word.from_str("101") ^ Word.from_str("10")

    def test_flip(self):
        """指定座標の反転"""
        from levrecon.core.hamming_core import Word

        assert str(Word.zero(5).flip([1, 5])) == "10001"
        assert str(Word.unit(5, 3)) == "00100"

    def test_order_is_lexicographic(self):
        """整数順と辞書式順が一致する"""
        from levrecon.core.hamming_core import Word

        words = [Word.from_str(s) for s in ("110", "001", "100", "011")]

        assert [str(w) for w in sorted(words)] == ["001", "011", "100", "110"]


class TestCoordSet:
    """CoordSet のテスト"""

    def test_sorted_and_mask(self):
        """座標は昇順に保持され、マスクに変換できる"""
        from levrecon.core.hamming_core import CoordSet

        s = CoordSet(5, (4, 2))

        assert s.indices == (2, 4)
        assert s.mask == 0b01010

    def test_project_and_embed(self):
        """射影と埋め込み"""
        from levrecon.core.hamming_core import CoordSet, Word

        s = CoordSet.of(5, [2, 4])

        assert s.project(Word.from_str("01010").bits) == 0b11
        assert s.project(Word.from_str("01000").bits) == 0b10
        assert s.embed(0b10) == Word.from_str("01000").bits

    def test_duplicate_coordinates(self):
        """重複した座標はエラー"""
        from levrecon.core.hamming_core import CoordSet

        with pytest.raises(ValueError, match="duplicate"):
            CoordSet(4, (1, 1))

    def test_out_of_range(self):
        """範囲外の座標はエラー"""
        from levrecon.core.hamming_core import CoordSet

        with pytest.raises(ValueError):
            CoordSet(3, (0,))


class TestCounting:
    """binomial と ball_volume のテスト"""

    def test_binomial_convention(self):
        """範囲外の binomial は 0"""
        from levrecon.core.hamming_core import binomial

        assert binomial(5, 2) == 10
        assert binomial(3, 5) == 0
        assert binomial(3, -1) == 0
        assert binomial(-2, 0) == 0

    def test_ball_volume(self):
        """球の体積"""
        from levrecon.core.hamming_core import ball_volume

        assert ball_volume(7, 1) == 8
        assert ball_volume(28, 4) == 24158
        assert ball_volume(5, 5) == 32

    def test_ball_volume_errors(self):
        """t < 0 や t > n はエラー"""
        from levrecon.core.hamming_core import ball_volume

        with pytest.raises(ValueError):
            ball_volume(4, 5)
        with pytest.raises(ValueError):
            ball_volume(4, -1)

    def test_distance(self):
        """ハミング距離"""
        from levrecon.core.hamming_core import Word, distance, weight

        x, y = Word.from_str("1100"), Word.from_str("1010")

        assert distance(x, y) == 2
        assert weight(x) == 2


class TestEnumerateBall:
    """enumerate_ball のテスト"""

    def test_size_and_radius(self):
        """列挙数は V(n,t) で、全て半径内"""
        from levrecon.core.hamming_core import Word, ball_volume, distance, enumerate_ball

        c = Word.from_str("101100")
        words = list(enumerate_ball(c, 2))

        assert len(words) == ball_volume(6, 2)
        assert len(set(words)) == len(words)
        assert all(distance(c, y) <= 2 for y in words)
        assert words[0] == c

    def test_weight_then_lex(self):
        """誤りパターンは重み順、同じ重みでは位置の辞書式順"""
        from levrecon.core.hamming_core import Word, enumerate_ball

        words = [str(y) for y in enumerate_ball(Word.zero(3), 1)]

        assert words == ["000", "100", "010", "001"]


class TestSampling:
    """一様サンプリングのテスト"""

    def test_weight_probabilities_sum(self):
        """重み分布の総和は 1"""
        from levrecon.core.hamming_core import weight_probabilities

        assert sum(weight_probabilities(28, 5)) == pytest.approx(1.0)

    def test_sample_within_ball(self, rng):
        """サンプルは球の中にある"""
        from levrecon.core.hamming_core import Word, distance, sample_ball_uniform

        c = Word.from_str("110011001100")
        for _ in range(200):
            assert distance(c, sample_ball_uniform(c, 3, rng)) <= 3

    def test_sample_covers_ball(self):
        """小さな球では全ての語が出現する"""
        from levrecon.core.hamming_core import Word, ball_volume, sample_ball_uniform

        generator = np.random.default_rng(1)
        c = Word.zero(4)
        seen = {sample_ball_uniform(c, 1, generator) for _ in range(500)}

        assert len(seen) == ball_volume(4, 1)


class TestBitMatrix:
    """bit_matrix のテスト"""

    def test_rows(self):
        """各行が語の 0/1 列になる"""
        from levrecon.core.hamming_core import Word, bit_matrix

        matrix = bit_matrix([Word.from_str("100"), Word.from_str("011")])

        assert matrix.tolist() == [[1, 0, 0], [0, 1, 1]]

    def test_long_words(self):
        """62 を超える長さでも動作する"""
        from levrecon.core.hamming_core import Word, bit_matrix

        w = Word.unit(70, 70)
        matrix = bit_matrix([w])

        assert matrix.shape == (1, 70)
        assert matrix[0, 69] == 1
        assert matrix.sum() == 1
