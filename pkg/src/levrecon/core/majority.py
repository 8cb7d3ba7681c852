#!/usr/bin/env python3
"""
Majority-vote decoding, the verifiability certificate and the success-probability bounds.

The vote outputs z in {0, 1, ?}^n. verify_radius turns the minority counts into a radius k
with d(x, z) <= k whenever the channels respect the budget of t errors each.
"""

from __future__ import annotations

import enum
import logging
import math
import threading
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
import scipy.stats

from levrecon.core.channels import OutputBatch
from levrecon.core.codes import Code, decode_unique, list_in_ball
from levrecon.core.hamming_core import Word, ball_volume, binomial, bit_matrix

# 𝕖 (漸近条件 n > 2t𝕖/A の判定用)
EULER_E = math.e

# 厳密な誤り和の分布を計算する範囲
EXACT_TAIL_MAX_LENGTH = 10
EXACT_TAIL_MAX_CHANNELS = 8

DEFAULT_CONFIDENCE = 3.0


class ChannelContractViolation(RuntimeError):
    """A certified radius k <= e did not lead to a codeword, so some channel exceeded t errors."""


class BirthdayMethod(enum.Enum):
    RECURSIVE = "Recursive"
    SIMPLE = "Simple"


@dataclass(frozen=True)
class TernaryWord:
    symbols: str

    def __post_init__(self) -> None:
        if not self.symbols or any(ch not in "01?" for ch in self.symbols):
            raise ValueError(f"not a 0/1/? word: {self.symbols!r}")

    def __str__(self) -> str:
        return self.symbols

    @property
    def length(self) -> int:
        return len(self.symbols)

    @property
    def unknown(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, ch in enumerate(self.symbols) if ch == "?")

    def resolve(self, fill: str = "0") -> Word:
        if fill not in ("0", "1"):
            raise ValueError(f"fill symbol must be 0 or 1, got {fill!r}")
        return Word.from_str(self.symbols.replace("?", fill))

    def mismatches(self, x: Word) -> int:
        """Reporting distance to a binary word; '?' never matches."""
        if x.length != self.length:
            raise ValueError(f"length mismatch: {x.length} != {self.length}")
        return sum(ch != s for ch, s in zip(self.symbols, str(x), strict=True))


@dataclass(frozen=True)
class MajorityResult:
    z: TernaryWord
    zero_counts: tuple[int, ...]
    N: int

    @property
    def minority_counts(self) -> tuple[int, ...]:
        return tuple(min(m, self.N - m) for m in self.zero_counts)

    @property
    def sorted_minority(self) -> tuple[int, ...]:
        """m' : the minority counts in non-increasing order."""
        return tuple(sorted(self.minority_counts, reverse=True))

    def to_dict(self) -> dict[str, Any]:
        return {
            "z": str(self.z),
            "m": list(self.minority_counts),
            "zero_counts": list(self.zero_counts),
            "N": self.N,
        }


def majority_vote(Y: OutputBatch | Iterable[Word]) -> MajorityResult:  # noqa: N803
    outputs = list(Y.outputs if isinstance(Y, OutputBatch) else Y)
    if not outputs:
        raise ValueError("no outputs given")
    N = len(outputs)  # noqa: N806
    ones = bit_matrix(outputs).sum(axis=0)
    zeros = tuple(int(N - c) for c in ones)
    z = "".join("0" if m0 > N - m0 else "1" if m0 < N - m0 else "?" for m0 in zeros)
    return MajorityResult(TernaryWord(z), zeros, N)


def verify_radius(result: MajorityResult, t: int) -> int | None:
    """
    Smallest k >= 1 with Σ_(i<=k+1) (N - m'_i) + Σ_(i>=k+2) m'_i > tN.

    Returns None when no k in [1, n] qualifies.
    """
    m = np.array(result.sorted_minority, dtype=np.int64)
    N = result.N  # noqa: N806
    n = len(m)
    gains = np.cumsum(N - 2 * m)
    base = int(m.sum())
    for k in range(1, n + 1):
        if base + int(gains[min(k + 1, n) - 1]) > t * N:
            return k
    return None


@dataclass(frozen=True)
class UniqueVerified:
    word: Word
    k: int

    def to_dict(self) -> dict[str, Any]:
        return {"outcome": "UniqueVerified", "k": self.k, "word": str(self.word)}


@dataclass(frozen=True)
class ListVerified:
    words: frozenset[Word]
    k: int

    def to_dict(self) -> dict[str, Any]:
        return {"outcome": "ListVerified", "k": self.k, "words": [str(w) for w in sorted(self.words)]}


@dataclass(frozen=True)
class Unverified:
    z: TernaryWord

    def to_dict(self) -> dict[str, Any]:
        return {"outcome": "Unverified", "z": str(self.z)}


DecodeOutcome = UniqueVerified | ListVerified | Unverified


def verified_decode(C: Code, Y: OutputBatch | Iterable[Word], t: int) -> DecodeOutcome:  # noqa: N803
    """Majority vote followed by decoding within the certified radius; ties resolve to 0.

    Args:
        C: 符号
        Y: チャネル出力
        t: 1 チャネルあたりの誤りの上限

    Returns:
        k <= e なら UniqueVerified、k > e なら ListVerified、k が求まらなければ Unverified

    Raises:
        ChannelContractViolation: 証明した半径内に符号語が無いとき
    """
    result = majority_vote(Y)
    if result.z.length != C.length:
        raise ValueError(f"output length {result.z.length} differs from code length {C.length}")
    k = verify_radius(result, t)
    if k is None:
        return Unverified(result.z)
    z = result.z.resolve("0")
    e = C.capability_e
    if k <= e:
        word = decode_unique(C, z, e)
        if word is None:
            raise ChannelContractViolation(
                f"no codeword within {e} of {z} although d(x, z) <= {k} was certified"
            )
        return UniqueVerified(word, k)
    return ListVerified(list_in_ball(C, z, k), k)


@dataclass(frozen=True)
class ErrorDistribution:
    """Law of the number of errors a UniformBall channel introduces."""

    n: int
    t: int
    exact: tuple[Fraction, ...]

    @property
    def p(self) -> tuple[float, ...]:
        return tuple(float(q) for q in self.exact)

    @property
    def mu(self) -> float:
        return float(sum(r * q for r, q in enumerate(self.exact)))

    @property
    def sigma2(self) -> float:
        mean = sum(r * q for r, q in enumerate(self.exact))
        return float(sum(r * r * q for r, q in enumerate(self.exact)) - mean * mean)

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "t": self.t, "p": list(self.p), "mu": self.mu, "sigma2": self.sigma2}


def error_distribution(n: int, t: int) -> ErrorDistribution:
    volume = ball_volume(n, t)
    return ErrorDistribution(n, t, tuple(Fraction(binomial(n, r), volume) for r in range(t + 1)))


class BoundCache:
    """Thread-safe memo table for the recursive birthday bound."""

    def __init__(self) -> None:
        self._cache: dict[tuple[int, int, int, int], float] = {}
        self._lock = threading.Lock()

    def get(self, key: tuple[int, int, int, int]) -> float | None:
        with self._lock:
            return self._cache.get(key)

    def set(self, key: tuple[int, int, int, int], value: float) -> None:
        with self._lock:
            self._cache[key] = value

    def invalidate(self) -> None:
        with self._lock:
            self._cache.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)


_recursive_cache = BoundCache()


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


def _simple_bound(n: int, q: int, s: int, t: int) -> float:
    if q < s or t == 0:
        return 0.0
    return _clamp(float(Fraction(t**s * binomial(q, s), n ** (s - 1))))


def _recursive_bound(n: int, q: int, s: int, t: int) -> float:
    if t == 0 or q < s:
        return 0.0
    key = (t, n, q, s)
    cached = _recursive_cache.get(key)
    if cached is not None:
        return cached
    miss = (n - t) / n
    total = 0.0
    for i in range(s, q + 1):
        total += binomial(i - 1, s - 1) * miss ** (i - s) * (1.0 - _recursive_bound(n - 1, i - 1, s, t - 1))
    value = _clamp(float(Fraction(t**s, n ** (s - 1))) * total)
    _recursive_cache.set(key, value)
    return value


def pr_ct_upper(n: int, q: int, s: int, t: int, method: BirthdayMethod = BirthdayMethod.RECURSIVE) -> float:
    """Upper bound on the probability that some coordinate is hit by at least s of q channels."""
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    if q < 0:
        raise ValueError(f"need q >= 0, got {q}")
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    if method is BirthdayMethod.SIMPLE:
        return _simple_bound(n, q, s, t)
    return _recursive_bound(n, q, s, t)


def majority_success_lb(
    n: int, t: int, N: int, method: BirthdayMethod = BirthdayMethod.RECURSIVE  # noqa: N803
) -> float:
    """Lower bound on Pr[z = x] for N UniformBall channels.

    Args:
        n: 語長
        t: 1 チャネルあたりの誤りの上限
        N: チャネル数
        method: 誕生日型上界の計算方法（RECURSIVE の方が厳しい）

    Returns:
        [0, 1] に丸めた下界
    """
    if N < 1:
        raise ValueError(f"need at least one channel, got N={N}")
    return _clamp(1.0 - pr_ct_upper(n, N, math.ceil(N / 2), t, method))


def confidence_mass(h_conf: float) -> float:
    """Φ(h) - Φ(-h)."""
    return float(scipy.stats.norm.cdf(h_conf) - scipy.stats.norm.cdf(-h_conf))


def exact_error_tail(n: int, t: int, N: int, threshold: int) -> Fraction:  # noqa: N803
    """Pr[S_N >= threshold] for the sum S_N of N independent error counts."""
    if n > EXACT_TAIL_MAX_LENGTH or N > EXACT_TAIL_MAX_CHANNELS:
        raise ValueError(
            f"exact tail limited to n <= {EXACT_TAIL_MAX_LENGTH}, N <= {EXACT_TAIL_MAX_CHANNELS}"
        )
    p = error_distribution(n, t).exact
    law = [Fraction(1)]
    for _ in range(N):
        nxt = [Fraction(0)] * (len(law) + t)
        for total, q in enumerate(law):
            for r, pr in enumerate(p):
                nxt[total + r] += q * pr
        law = nxt
    return sum(law[max(threshold, 0) :], Fraction(0))


def alpha_min(n: int, t: int, k: int, N: int, h_conf: float = DEFAULT_CONFIDENCE) -> int:  # noqa: N803
    if k < 1 or N < 1:
        raise ValueError(f"need k >= 1 and N >= 1, got k={k}, N={N}")
    dist = error_distribution(n, t)
    parity = N % 2
    numerator = (t - dist.mu) * N + h_conf * math.sqrt(dist.sigma2 * N) + 1 + parity * (k + 1)
    alpha = max(1, math.ceil(numerator / (2 * (k + 1))))
    if alpha >= math.ceil(N / 2):
        raise ValueError(f"α={alpha} is not smaller than ⌈N/2⌉={math.ceil(N / 2)}")
    return alpha


@dataclass(frozen=True)
class VerifiableBound:
    """Approximate (CLT) lower bound on the probability that verify_radius certifies k."""

    alpha: int
    s: int
    birthday: float
    confidence: float
    value: float
    asymptotic: bool
    error_threshold: int
    exact_tail: float | None = None

    @property
    def exact_value(self) -> float | None:
        if self.exact_tail is None:
            return None
        return max(0.0, self.exact_tail - self.birthday)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "s": self.s,
            "birthday": self.birthday,
            "confidence": self.confidence,
            "value": self.value,
            "asymptotic": self.asymptotic,
            "error_threshold": self.error_threshold,
            "exact_tail": self.exact_tail,
            "exact_value": self.exact_value,
            "approximation": "CLT",
        }


def verifiable_success_lb(
    n: int, t: int, k: int, N: int, h_conf: float = DEFAULT_CONFIDENCE  # noqa: N803
) -> VerifiableBound:
    alpha = alpha_min(n, t, k, N, h_conf)
    dist = error_distribution(n, t)
    s = math.ceil(N / 2) - alpha + 1
    birthday = pr_ct_upper(n, N, s, t, BirthdayMethod.SIMPLE)
    confidence = confidence_mass(h_conf)
    value = max(0.0, (1.0 - birthday) + confidence - 1.0)

    gap = t - dist.mu
    A = (k - gap) / (k + 1)  # noqa: N806
    asymptotic = gap < k and n > 2 * t * EULER_E / A
    threshold = t * N - (k + 1) * (2 * alpha - N % 2) + 1

    exact = None
    if n <= EXACT_TAIL_MAX_LENGTH and N <= EXACT_TAIL_MAX_CHANNELS:
        exact = float(exact_error_tail(n, t, N, threshold))
    if not asymptotic:
        logging.debug("verifiable bound outside the asymptotic regime: n=%d t=%d k=%d", n, t, k)
    return VerifiableBound(alpha, s, birthday, confidence, value, asymptotic, threshold, exact)
