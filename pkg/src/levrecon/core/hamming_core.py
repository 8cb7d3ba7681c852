#!/usr/bin/env python3
"""
Bit-level primitives for the binary Hamming space.

A Word is a fixed-length binary vector packed into a Python int. Coordinate 1 is the
leftmost symbol of the 0/1 string and the most significant bit of the packed value, so
integer order coincides with lexicographic order of the strings.

Counting helpers (binomial, ball_volume) return exact integers.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_LENGTH = 512

# enumerate_ball のマスクをキャッシュする上限（語数）
MASK_CACHE_LIMIT = 1 << 20


class SearchBudgetExceeded(ValueError):
    """An exhaustive sweep or search was asked to go beyond its configured size."""


@dataclass(frozen=True, order=True, slots=True)
class Word:
    """Fixed-length binary word."""

    length: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.length <= MAX_LENGTH:
            raise ValueError(f"word length must be in [1, {MAX_LENGTH}], got {self.length}")
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError(f"bits out of range for length {self.length}")

    @classmethod
    def zero(cls, n: int) -> Word:
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, i: int) -> Word:
        """e_i: the word with a single 1 at coordinate i."""
        return cls.from_support(n, (i,))

    @classmethod
    def from_str(cls, text: str) -> Word:
        """Parse an ASCII 0/1 string, coordinate 1 first."""
        text = text.strip()
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a 0/1 word: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_support(cls, n: int, coords: Iterable[int]) -> Word:
        return cls(n, CoordSet.of(n, coords).mask)

    def __str__(self) -> str:
        return format(self.bits, f"0{self.length}b")

    def _check(self, other: Word) -> None:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} != {other.length}")

    def __xor__(self, other: Word) -> Word:
        self._check(other)
        return Word(self.length, self.bits ^ other.bits)

    # 二元体上の加算は XOR
    __add__ = __xor__

    def bit(self, i: int) -> int:
        """Symbol at coordinate i (1-based)."""
        if not 1 <= i <= self.length:
            raise ValueError(f"coordinate {i} out of range [1, {self.length}]")
        return (self.bits >> (self.length - i)) & 1

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> CoordSet:
        n = self.length
        return CoordSet(n, tuple(i for i in range(1, n + 1) if (self.bits >> (n - i)) & 1))

    def flip(self, coords: Iterable[int]) -> Word:
        return Word(self.length, self.bits ^ CoordSet.of(self.length, coords).mask)


@dataclass(frozen=True, slots=True)
class CoordSet:
    """Subset of the coordinates [1, n], kept sorted."""

    length: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(not 1 <= i <= self.length for i in self.indices):
            raise ValueError(f"coordinates must lie in [1, {self.length}]: {self.indices}")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"duplicate coordinates: {self.indices}")
        if list(self.indices) != sorted(self.indices):
            object.__setattr__(self, "indices", tuple(sorted(self.indices)))

    @classmethod
    def of(cls, n: int, coords: Iterable[int]) -> CoordSet:
        return cls(n, tuple(sorted(coords)))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    @property
    def mask(self) -> int:
        """Packed word whose support is this set."""
        n = self.length
        return functools.reduce(lambda acc, i: acc | (1 << (n - i)), self.indices, 0)

    def project(self, bits: int) -> int:
        """Pattern of `bits` on this set, first coordinate as the most significant bit."""
        n = self.length
        pattern = 0
        for i in self.indices:
            pattern = (pattern << 1) | ((bits >> (n - i)) & 1)
        return pattern

    def embed(self, pattern: int) -> int:
        """Inverse of project: place a |S|-bit pattern on the coordinates of this set."""
        n = self.length
        k = len(self.indices)
        bits = 0
        for j, i in enumerate(self.indices):
            if (pattern >> (k - 1 - j)) & 1:
                bits |= 1 << (n - i)
        return bits

    def to_list(self) -> list[int]:
        return list(self.indices)


def weight(w: Word) -> int:
    return w.weight


def distance(x: Word, y: Word) -> int:
    """Hamming distance d(x, y) = w(x + y)."""
    return (x ^ y).weight


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, 0 whenever k < 0 or k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def ball_volume(n: int, t: int) -> int:
    """V(n, t): number of words within distance t of a fixed word."""
    if t < 0:
        raise ValueError(f"radius must be non-negative, got {t}")
    if t > n:
        raise ValueError(f"radius {t} exceeds length {n}")
    return sum(binomial(n, i) for i in range(t + 1))


def error_masks(n: int, t: int) -> tuple[int, ...]:
    """All packed words of weight <= t, weight first and then lexicographic by position."""
    if t > n:
        raise ValueError(f"radius {t} exceeds length {n}")
    if ball_volume(n, t) <= MASK_CACHE_LIMIT:
        return _error_masks_cached(n, t)
    return tuple(_iter_masks(n, t))


@functools.lru_cache(maxsize=128)
def _error_masks_cached(n: int, t: int) -> tuple[int, ...]:
    return tuple(_iter_masks(n, t))


def _iter_masks(n: int, t: int) -> Iterator[int]:
    for r in range(t + 1):
        for positions in itertools.combinations(range(1, n + 1), r):
            mask = 0
            for i in positions:
                mask |= 1 << (n - i)
            yield mask


def enumerate_ball(c: Word, t: int) -> Iterator[Word]:
    """Stream B_t(c) in weight-then-lexicographic order of the error pattern."""
    n = c.length
    if t > n:
        raise ValueError(f"radius {t} exceeds length {n}")
    for mask in error_masks(n, t):
        yield Word(n, c.bits ^ mask)


@functools.lru_cache(maxsize=256)
def weight_probabilities(n: int, t: int) -> tuple[float, ...]:
    """p_r = binom(n, r) / V(n, t) for r = 0..t, from exact integers."""
    volume = ball_volume(n, t)
    return tuple(float(Fraction(binomial(n, r), volume)) for r in range(t + 1))


def sample_ball_uniform(c: Word, t: int, rng: np.random.Generator) -> Word:
    """Draw uniformly from B_t(c): a weight r, then a uniform r-subset of coordinates."""
    n = c.length
    if t > n:
        raise ValueError(f"radius {t} exceeds length {n}")
    r = int(rng.choice(t + 1, p=weight_probabilities(n, t)))
    mask = 0
    for j in rng.choice(n, size=r, replace=False):
        mask |= 1 << (n - 1 - int(j))
    return Word(n, c.bits ^ mask)


def bit_matrix(words: Iterable[Word]) -> np.ndarray:
    """0/1 matrix with one row per word, column j holding coordinate j+1."""
    rows = list(words)
    if not rows:
        raise ValueError("no words given")
    n = rows[0].length
    if any(w.length != n for w in rows):
        raise ValueError("all words must have the same length")
    bits = np.array([w.bits for w in rows], dtype=object if n > 62 else np.int64)
    return ((bits[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.int8)
