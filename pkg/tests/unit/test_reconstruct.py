#!/usr/bin/env python3
# ruff: noqa: S101
"""
reconstruct.py のユニットテスト
"""

import numpy as np
import pytest


def _words(*texts):
    from levrecon.core.hamming_core import Word

    return [Word.from_str(s) for s in texts]


class TestIntersectList:
    """intersect_list のテスト"""

    def test_contains_source(self, hamming7, rng):
        """送信した符号語は必ずリストに含まれる"""
        from levrecon.core.channels import ChannelModel, transmit
        from levrecon.core.reconstruct import DecoderKind, intersect_list

        x = hamming7.codewords[9]
        for _ in range(10):
            batch = transmit(x, 2, 6, ChannelModel.UNIFORM_BALL, rng)
            result = intersect_list(hamming7, batch, 2)

            assert x in result
            assert result.decoder is DecoderKind.NAIVE

    def test_empty_outputs(self, hamming7):
        """出力が無ければエラー"""
        from levrecon.core.reconstruct import intersect_list

        with pytest.raises(ValueError, match="no outputs"):
            intersect_list(hamming7, [], 2)


class TestShatteredSet:
    """colex_subsets と find_shattered_set のテスト"""

    def test_colex_order(self):
        """余辞書式順"""
        from levrecon.core.reconstruct import colex_subsets

        assert list(colex_subsets(4, 2)) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
        assert list(colex_subsets(3, 0)) == [()]

    def test_find_shattered_set(self):
        """全パターンを実現する最小の座標集合"""
        from levrecon.core.reconstruct import find_shattered_set

        assert find_shattered_set(_words("000", "010", "100", "110"), 2).to_list() == [1, 2]
        assert find_shattered_set(_words("000", "001", "010", "011"), 2).to_list() == [2, 3]

    def test_not_shattered(self):
        """パターンが足りなければ None"""
        from levrecon.core.reconstruct import find_shattered_set

        assert find_shattered_set(_words("000", "111", "011"), 2) is None

    def test_empty_set_always_shattered(self):
        """k = 0 は常に空集合"""
        from levrecon.core.reconstruct import find_shattered_set

        assert find_shattered_set(_words("101"), 0).to_list() == []


class TestShatterDecode:
    """shatter_decode のテスト"""

    def test_threshold_batch(self, hamming7, rng):
        """V(n, ℓ-1)+1 個の出力から x を含む 2^ℓ·M 以下のリストを得る"""
        from levrecon.core.channels import ChannelModel, RandomSubsetAdversary, transmit
        from levrecon.core.hamming_core import ball_volume
        from levrecon.core.reconstruct import DecoderKind, shatter_decode

        x = hamming7.codewords[4]
        N = ball_volume(7, 1) + 1  # noqa: N806
        for adversary in (None, RandomSubsetAdversary()):
            batch = transmit(x, 3, N, ChannelModel.ADVERSARIAL_SET, rng, adversary)
            result = shatter_decode(hamming7, batch, 3, 0)

            assert x in result
            assert len(result) <= 4
            assert result.decoder is DecoderKind.SHATTER
            assert len(result.certificate.shattered) == 2
            assert len(result.certificate.centers) == 4

    def test_below_threshold(self, hamming7, rng):
        """しきい値未満はエラー"""
        from levrecon.core.channels import ChannelModel, transmit
        from levrecon.core.reconstruct import shatter_decode

        batch = transmit(hamming7.codewords[0], 3, 5, ChannelModel.ADVERSARIAL_SET, rng)
        with pytest.raises(ValueError, match="threshold"):
            shatter_decode(hamming7, batch, 3, 0)

    def test_invalid_a(self, hamming7, rng):
        """a は 0..ℓ-1"""
        from levrecon.core.channels import ChannelModel, transmit
        from levrecon.core.reconstruct import shatter_decode

        batch = transmit(hamming7.codewords[0], 3, 20, ChannelModel.ADVERSARIAL_SET, rng)
        with pytest.raises(ValueError):
            shatter_decode(hamming7, batch, 3, 2)

    def test_t_not_above_e(self, hamming7):
        """t <= e ではリスト復号の対象外"""
        from levrecon.core.reconstruct import shatter_decode

        with pytest.raises(ValueError, match="uniquely"):
            shatter_decode(hamming7, [hamming7.codewords[0]], 1, 0)


class TestCoveringDecode:
    """covering_decode のテスト"""

    def test_repetition_covering(self, rng):
        """長さ 3 の繰り返し符号を使うとリストは高々 2 語"""
        from levrecon.core.channels import ChannelModel, RandomSubsetAdversary, transmit
        from levrecon.core.codes import covering_dimension, greedy_code
        from levrecon.core.reconstruct import DecoderKind, covering_decode, covering_threshold

        C = greedy_code(12, 3)
        D = covering_dimension(3, 1).witness
        x = C.codewords[17]
        N = covering_threshold(12, 1, 1, D)  # noqa: N806

        assert N == 77

        batch = transmit(x, 2, N, ChannelModel.ADVERSARIAL_SET, rng, RandomSubsetAdversary())
        result = covering_decode(C, batch, 2, 1, D)

        assert x in result
        assert len(result) <= 2
        assert result.decoder is DecoderKind.COVERING
        assert result.certificate.coset_leader is not None

    def test_hamming_covering_beats_shattering(self):
        """Hamming(7,4) の被覆では 16 語、分解では 32 語が上限"""
        from levrecon.core.codes import greedy_code, hamming_code
        from levrecon.core.hamming_core import enumerate_ball
        from levrecon.core.reconstruct import covering_decode, shatter_decode

        C = greedy_code(10, 3)
        x = C.codewords[-1]
        Y = list(enumerate_ball(x, 6))  # noqa: N806

        covering = covering_decode(C, Y, 6, 1, hamming_code(3))
        shattering = shatter_decode(C, Y, 6, 0)

        assert x in covering
        assert x in shattering
        assert len(covering) <= 16
        assert len(shattering) <= 32

    def test_radius_above_e(self, hamming7):
        """R > e はエラー"""
        from levrecon.core.codes import covering_dimension
        from levrecon.core.reconstruct import covering_decode

        D = covering_dimension(5, 2).witness
        with pytest.raises(ValueError, match="R <= e"):
            covering_decode(hamming7, [hamming7.codewords[0]], 3, 2, D)

    def test_length_mismatch(self, hamming7):
        """D の長さは ℓ + 2R"""
        from levrecon.core.codes import hamming_code
        from levrecon.core.reconstruct import covering_decode

        with pytest.raises(ValueError, match="differs"):
            covering_decode(hamming7, [hamming7.codewords[0]], 3, 1, hamming_code(3))


class TestRandomizedTrials:
    """乱数で選んだ送信語と出力集合に対する復号の保証"""

    TRIALS = 5000

    def test_shatter_decode(self, hamming7):
        """x を含み、リストは 2^(ℓ-a)·M 以下で、共通部分のリストを含む"""
        from levrecon.core.channels import ChannelModel, RandomSubsetAdversary, transmit
        from levrecon.core.codes import max_ball_count
        from levrecon.core.hamming_core import ball_volume
        from levrecon.core.reconstruct import intersect_list, shatter_decode

        rng = np.random.default_rng(2024)
        adversary = RandomSubsetAdversary()
        t, e = 3, hamming7.capability_e
        excess = t - e
        full = ball_volume(7, t)
        for a in range(excess):
            size_bound = (1 << (excess - a)) * max_ball_count(hamming7, e + a)
            threshold = ball_volume(7, excess - a - 1) + 1
            for _ in range(self.TRIALS):
                x = hamming7.codewords[int(rng.integers(len(hamming7)))]
                N = int(rng.integers(threshold, full + 1))  # noqa: N806
                batch = transmit(x, t, N, ChannelModel.ADVERSARIAL_SET, rng, adversary)
                result = shatter_decode(hamming7, batch, t, a)

                assert x in result
                assert len(result) <= size_bound
                assert intersect_list(hamming7, batch, t).candidates <= result.candidates

    @pytest.mark.parametrize(("t", "R"), [(2, 1), (3, 1)])
    def test_covering_decode(self, hamming7, t, R):  # noqa: N803
        """x を含み、リストは 2^dim(D) 以下で、共通部分のリストを含む"""
        from levrecon.core.channels import ChannelModel, RandomSubsetAdversary, transmit
        from levrecon.core.codes import covering_dimension
        from levrecon.core.hamming_core import ball_volume
        from levrecon.core.reconstruct import covering_decode, covering_threshold, intersect_list

        rng = np.random.default_rng(2025 + t)
        adversary = RandomSubsetAdversary()
        excess = t - hamming7.capability_e
        D = covering_dimension(excess + 2 * R, R).witness  # noqa: N806
        threshold = covering_threshold(7, excess, R, D)
        full = ball_volume(7, t)

        assert threshold <= full

        for _ in range(self.TRIALS):
            x = hamming7.codewords[int(rng.integers(len(hamming7)))]
            N = int(rng.integers(threshold, full + 1))  # noqa: N806
            batch = transmit(x, t, N, ChannelModel.ADVERSARIAL_SET, rng, adversary)
            result = covering_decode(hamming7, batch, t, R, D)

            assert x in result
            assert len(result) <= 1 << D.dimension
            assert intersect_list(hamming7, batch, t).candidates <= result.candidates

    def test_full_ball_length_12(self):
        """n=12, e=1, ℓ=2, a=1 で出力が球全体のとき"""
        from levrecon.core.codes import greedy_code, max_ball_count
        from levrecon.core.hamming_core import enumerate_ball
        from levrecon.core.reconstruct import shatter_decode

        C = greedy_code(12, 3, 1)  # noqa: N806
        x = C.codewords[len(C) // 2]
        Y = list(enumerate_ball(x, 3))  # noqa: N806
        result = shatter_decode(C, Y, 3, 1)

        assert C.capability_e == 1
        assert x in result
        assert len(result) <= 2 * max_ball_count(C, 2)


class TestRefinement:
    """復号リストは T(Y) を含む"""

    def test_intersection_is_contained(self):
        """共通部分のリストは両復号器の出力に含まれる"""
        from levrecon.core.codes import greedy_code, hamming_code
        from levrecon.core.hamming_core import enumerate_ball
        from levrecon.core.reconstruct import covering_decode, intersect_list, shatter_decode

        C = greedy_code(10, 3)  # noqa: N806
        x = C.codewords[-1]
        Y = list(enumerate_ball(x, 6))  # noqa: N806
        exact = intersect_list(C, Y, 6)

        assert x in exact
        for a in range(5):
            assert exact.candidates <= shatter_decode(C, Y, 6, a).candidates
        assert exact.candidates <= covering_decode(C, Y, 6, 1, hamming_code(3)).candidates


class TestBallUnion:
    """ball_union_decode のテスト"""

    def test_centres(self, hamming7):
        """各中心の一意復号の和集合"""
        from levrecon.core.reconstruct import DecoderKind, ball_union_decode

        a, b = hamming7.codewords[1], hamming7.codewords[2]
        result = ball_union_decode(hamming7, [a.flip([1]), b.flip([7]), a], 1)

        assert result.candidates == frozenset([a, b])
        assert result.decoder is DecoderKind.BALL_UNION


class TestCandidateList:
    """CandidateList のテスト"""

    def test_to_dict(self, hamming7, rng):
        """辞書表現から復元できる"""
        from levrecon.core.channels import ChannelModel, transmit
        from levrecon.core.reconstruct import CandidateList, shatter_decode

        batch = transmit(hamming7.codewords[3], 3, 9, ChannelModel.ADVERSARIAL_SET, rng)
        result = shatter_decode(hamming7, batch, 3, 0)
        data = result.to_dict()

        assert data["decoder"] == "Shatter"
        assert CandidateList.parse(data, 7) == result


class TestPairwiseObservation:
    """observe_pairwise_distances のテスト"""

    def test_holds(self):
        """範囲内の距離だけなら成立"""
        from levrecon.core.reconstruct import observe_pairwise_distances

        observation = observe_pairwise_distances(_words("0000000", "1110000", "0001110"), 1, 1)

        assert observation.holds
        assert observation.pairs_checked == 3

    def test_violation_is_logged(self, caplog):
        """範囲外の組は警告として記録される"""
        from levrecon.core.reconstruct import observe_pairwise_distances

        observation = observe_pairwise_distances(_words("0000000", "1111111"), 1, 0)

        assert not observation.holds
        assert observation.violations[0][2] == 7
        assert "observational" in caplog.text
