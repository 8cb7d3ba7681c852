#!/usr/bin/env python3
"""
List decoders for the reconstruction problem.

intersect_list computes T(Y) directly. shatter_decode and covering_decode find a coordinate
set S on which the outputs realise enough patterns, flip the outputs on S and decode
around the resulting centres. Both return the S they used as a certificate.
"""

from __future__ import annotations

import enum
import itertools
import json
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from levrecon.core.channels import OutputBatch
from levrecon.core.codes import Code, LinearCode, covering_radius, decode_unique, list_in_ball
from levrecon.core.hamming_core import CoordSet, Word, ball_volume, bit_matrix, distance


class DecoderKind(enum.Enum):
    NAIVE = "Naive"
    SHATTER = "Shatter"
    COVERING = "Covering"
    BALL_UNION = "BallUnion"


class ReconstructionDiagnostic(RuntimeError):
    """The threshold was met but the structure the decoder relies on was not found."""


@dataclass(frozen=True)
class Certificate:
    shattered: CoordSet | None = None
    coset_leader: Word | None = None
    centers: tuple[Word, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {}
        if self.shattered is not None:
            result["S"] = self.shattered.to_list()
        if self.coset_leader is not None:
            result["coset_leader"] = str(self.coset_leader)
        result["centers"] = [str(b) for b in self.centers]
        return result

    @classmethod
    def parse(cls, data: dict[str, Any], n: int) -> Certificate:
        leader = data.get("coset_leader")
        return cls(
            shattered=CoordSet.of(n, data["S"]) if "S" in data else None,
            coset_leader=Word.from_str(leader) if leader else None,
            centers=tuple(Word.from_str(b) for b in data.get("centers", [])),
        )


@dataclass(frozen=True)
class CandidateList:
    """Decoder output: candidate codewords with the decoder that produced them."""

    candidates: frozenset[Word]
    decoder: DecoderKind
    certificate: Certificate | None = None

    def __len__(self) -> int:
        return len(self.candidates)

    def __contains__(self, word: object) -> bool:
        return word in self.candidates

    def to_dict(self) -> dict[str, Any]:
        return {
            "decoder": self.decoder.value,
            "candidates": [str(c) for c in sorted(self.candidates)],
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def parse(cls, data: dict[str, Any], n: int) -> CandidateList:
        cert = data.get("certificate")
        return cls(
            candidates=frozenset(Word.from_str(c) for c in data["candidates"]),
            decoder=DecoderKind(data["decoder"]),
            certificate=Certificate.parse(cert, n) if cert else None,
        )


def _outputs(Y: OutputBatch | Iterable[Word]) -> list[Word]:  # noqa: N803
    """Distinct outputs in increasing order."""
    words = Y.distinct() if isinstance(Y, OutputBatch) else set(Y)
    if not words:
        raise ValueError("no outputs given")
    return sorted(words)


def intersect_list(C: Code, Y: OutputBatch | Iterable[Word], t: int) -> CandidateList:  # noqa: N803
    """T(Y): the codewords within distance t of every output.

    Args:
        C: 符号
        Y: チャネル出力（重複は無視）
        t: 1 チャネルあたりの誤りの上限

    Returns:
        全ての出力から距離 t 以内にある符号語の CandidateList
    """
    outputs = _outputs(Y)
    if C.length <= 62:
        codes = C.bits_array
        keep = np.ones(len(codes), dtype=bool)
        for y in outputs:
            keep &= np.bitwise_count(codes ^ y.bits) <= t
        found = frozenset(C.codewords[int(i)] for i in np.flatnonzero(keep))
    else:
        found = frozenset(c for c in C.codewords if all(distance(c, y) <= t for y in outputs))
    return CandidateList(found, DecoderKind.NAIVE)


def colex_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """k-subsets of [1, n] in colexicographic order."""
    if k == 0:
        yield ()
        return
    for top in range(k, n + 1):
        for rest in colex_subsets(top - 1, k - 1):
            yield (*rest, top)


class _Projections:
    """Projection of a fixed word list onto coordinate subsets."""

    def __init__(self, words: list[Word]):
        self.words = words
        self.n = words[0].length
        self.matrix = bit_matrix(words)

    def patterns(self, subset: tuple[int, ...]) -> np.ndarray:
        k = len(subset)
        place = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
        return self.matrix[:, [i - 1 for i in subset]] @ place

    def representatives(self, subset: tuple[int, ...]) -> dict[int, Word]:
        """First word (in list order) realising each pattern on the subset."""
        values, first = np.unique(self.patterns(subset), return_index=True)
        return {int(p): self.words[int(i)] for p, i in zip(values, first, strict=True)}


def find_shattered_set(Y: OutputBatch | Iterable[Word], k: int) -> CoordSet | None:  # noqa: N803
    """Colex-smallest k-set of coordinates on which Y realises all 2^k patterns."""
    outputs = _outputs(Y)
    n = outputs[0].length
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return CoordSet(n, ())
    if len(outputs) < (1 << k):
        return None
    table = _Projections(outputs)
    for subset in colex_subsets(n, k):
        if np.unique(table.patterns(subset)).size == 1 << k:
            return CoordSet(n, subset)
    return None


def ball_union_decode(C: Code, centers: Iterable[Word], e: int) -> CandidateList:
    """Union of the unique decodings of each centre within radius e."""
    centers = tuple(centers)
    found = frozenset(c for b in centers if (c := decode_unique(C, b, e)) is not None)
    return CandidateList(found, DecoderKind.BALL_UNION, Certificate(centers=centers))


def _excess(C: Code, t: int) -> tuple[int, int]:
    e = C.capability_e
    excess = t - e
    if excess < 1:
        raise ValueError(f"t={t} <= e={e}: a single channel already decodes uniquely")
    return e, excess


def shatter_decode(C: Code, Y: OutputBatch | Iterable[Word], t: int, a: int) -> CandidateList:  # noqa: N803
    """List decoder through a shattered set of size ℓ - a.

    Args:
        C: 誤り訂正能力 e の符号
        Y: チャネル出力。異なる出力が V(n, ℓ-a-1) + 1 個以上必要
        t: 1 チャネルあたりの誤りの上限（ℓ = t - e >= 1）
        a: 0..ℓ-1。大きいほど必要な出力は減り、リストは長くなる

    Returns:
        半径 e + a の球に含まれる符号語の最大数を M として、高々 2^(ℓ-a)·M 語の CandidateList。
        certificate に使った座標集合と中心を持つ

    Raises:
        ValueError: パラメータが範囲外、または出力がしきい値に足りないとき
        ReconstructionDiagnostic: しきい値を満たすのに打ち砕かれる集合が見つからないとき
    """
    e, excess = _excess(C, t)
    if not 0 <= a <= excess - 1:
        raise ValueError(f"need 0 <= a <= ℓ-1 = {excess - 1}, got a={a}")
    outputs = _outputs(Y)
    n = outputs[0].length
    k = excess - a
    threshold = ball_volume(n, k - 1) + 1
    if len(outputs) < threshold:
        raise ValueError(f"{len(outputs)} distinct outputs below the threshold V({n},{k - 1})+1={threshold}")

    shattered = find_shattered_set(outputs, k)
    if shattered is None:
        raise ReconstructionDiagnostic(f"no shattered set of size {k} among {len(outputs)} outputs")

    reps = _Projections(outputs).representatives(shattered.indices)
    s = shattered.mask
    centers = tuple(Word(n, reps[p].bits ^ s) for p in range(1 << k))
    found: set[Word] = set()
    for beta in centers:
        found |= list_in_ball(C, beta, e + a)
    cert = Certificate(shattered=shattered, centers=centers)
    return CandidateList(frozenset(found), DecoderKind.SHATTER, cert)


def covering_threshold(n: int, excess: int, R: int, D: LinearCode) -> int:  # noqa: N803
    """Number of distinct outputs that forces a coset of D to appear on some S."""
    m = excess + 2 * R
    return ball_volume(n, m - 1) - (1 << (m - D.dimension)) + 2


def covering_decode(
    C: Code, Y: OutputBatch | Iterable[Word], t: int, R: int, D: LinearCode  # noqa: N803
) -> CandidateList:
    """List decoder through a coset of an R-covering code D of length ℓ + 2R.

    Args:
        C: 誤り訂正能力 e の符号
        Y: チャネル出力。異なる出力が covering_threshold 個以上必要
        t: 1 チャネルあたりの誤りの上限（ℓ = t - e >= 1）
        R: D の被覆半径（0..e）
        D: 長さ ℓ + 2R、被覆半径 R 以下の線形符号

    Returns:
        高々 2^dim(D) 語の CandidateList。certificate に座標集合と剰余類の代表を持つ

    Raises:
        ValueError: パラメータが範囲外、または出力がしきい値に足りないとき
        ReconstructionDiagnostic: しきい値を満たすのに剰余類を含む座標集合が見つからないとき
    """
    e, excess = _excess(C, t)
    m = excess + 2 * R
    if not 0 <= R <= e:
        raise ValueError(f"need 0 <= R <= e={e}, got R={R}")
    if D.length != m:
        raise ValueError(f"covering code length {D.length} differs from ℓ+2R={m}")
    if covering_radius(D) > R:
        raise ValueError(f"the given code does not cover with radius {R}")
    outputs = _outputs(Y)
    n = outputs[0].length
    if m > n:
        raise ValueError(f"ℓ+2R={m} exceeds the length {n}")
    threshold = covering_threshold(n, excess, R, D)
    if len(outputs) < threshold:
        raise ValueError(f"{len(outputs)} distinct outputs below the covering threshold {threshold}")

    members = D.codeword_bits()
    table = _Projections(outputs)
    for subset in colex_subsets(n, m):
        reps = table.representatives(subset)
        for syndrome in range(1 << (m - D.dimension)):
            leader = D.from_syndrome(syndrome).bits
            coset = [leader ^ c for c in members]
            if all(p in reps for p in coset):
                shattered = CoordSet(n, subset)
                s = shattered.mask
                centers = tuple(Word(n, reps[p].bits ^ s) for p in coset)
                found = ball_union_decode(C, centers, e).candidates
                cert = Certificate(shattered=shattered, coset_leader=Word(m, leader), centers=centers)
                return CandidateList(found, DecoderKind.COVERING, cert)

    raise ReconstructionDiagnostic(f"no coordinate set carries a full coset among {len(outputs)} outputs")


@dataclass(frozen=True)
class PairwiseObservation:
    """Candidate pairs whose distance falls outside [2e+1, 2e+2a+2]."""

    lower: int
    upper: int
    pairs_checked: int
    violations: tuple[tuple[Word, Word, int], ...] = field(default=())

    @property
    def holds(self) -> bool:
        return not self.violations


def observe_pairwise_distances(
    candidates: CandidateList | Iterable[Word], e: int, a: int
) -> PairwiseObservation:
    words = sorted(candidates.candidates if isinstance(candidates, CandidateList) else candidates)
    lower, upper = 2 * e + 1, 2 * e + 2 * a + 2
    checked = 0
    violations = []
    for c1, c2 in itertools.combinations(words, 2):
        checked += 1
        d = distance(c1, c2)
        if not lower <= d <= upper:
            violations.append((c1, c2, d))
    if violations:
        logging.warning(
            "%d of %d candidate pairs fall outside [%d, %d] (observational)",
            len(violations),
            checked,
            lower,
            upper,
        )
    return PairwiseObservation(lower, upper, checked, tuple(violations))
