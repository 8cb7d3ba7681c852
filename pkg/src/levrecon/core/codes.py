#!/usr/bin/env python3
"""
Error-correcting codes and linear covering codes.

Code holds an arbitrary set of words with its minimum distance and error-correcting
capability e = floor((d_min - 1) / 2). LinearCode holds generator rows and offers the
coset structure used by the covering-code decoder.

Exhaustive sweeps over F^n use numpy arrays indexed by the packed word value.
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from levrecon.core.hamming_core import SearchBudgetExceeded, Word, ball_volume, distance, error_masks

# 全空間スイープの上限
COVERING_MAX_LENGTH = 30
BALL_COUNT_MAX_LENGTH = 22
GREEDY_MAX_LENGTH = 22
COVERING_SEARCH_MAX_LENGTH = 9

# numpy で扱える語長（int64 に収まる範囲）
_NUMPY_MAX_LENGTH = 62


@dataclass(frozen=True)
class Code:
    """A non-empty set of distinct words of equal length."""

    length: int
    codewords: tuple[Word, ...]

    def __post_init__(self) -> None:
        if not self.codewords:
            raise ValueError("a code needs at least one codeword")
        if any(c.length != self.length for c in self.codewords):
            raise ValueError(f"all codewords must have length {self.length}")
        ordered = tuple(sorted(set(self.codewords)))
        if len(ordered) != len(self.codewords):
            raise ValueError("codewords must be distinct")
        object.__setattr__(self, "codewords", ordered)

    @classmethod
    def of(cls, words: Iterable[Word | str]) -> Code:
        parsed = [Word.from_str(w) if isinstance(w, str) else w for w in words]
        if not parsed:
            raise ValueError("a code needs at least one codeword")
        return cls(parsed[0].length, tuple(parsed))

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.codewords)

    def __contains__(self, word: object) -> bool:
        return word in self._members

    @functools.cached_property
    def _members(self) -> frozenset[Word]:
        return frozenset(self.codewords)

    @functools.cached_property
    def bits_array(self) -> np.ndarray:
        if self.length > _NUMPY_MAX_LENGTH:
            raise SearchBudgetExceeded(f"length {self.length} too large for array sweeps")
        return np.array([c.bits for c in self.codewords], dtype=np.int64)

    @functools.cached_property
    def min_distance(self) -> int:
        if len(self.codewords) < 2:
            raise ValueError("minimum distance is undefined for a single codeword")
        if self.length <= _NUMPY_MAX_LENGTH:
            arr = self.bits_array
            return int(
                min(np.bitwise_count(arr[i + 1 :] ^ arr[i]).min() for i in range(len(arr) - 1))
            )
        return min(distance(a, b) for a, b in itertools.combinations(self.codewords, 2))

    @functools.cached_property
    def capability_e(self) -> int:
        # 符号語が 1 つなら長さ n までの誤りを訂正できる
        if len(self.codewords) == 1:
            return self.length
        return (self.min_distance - 1) // 2


@dataclass(frozen=True)
class LinearCode:
    """Binary linear code given by linearly independent generator rows."""

    length: int
    rows: tuple[Word, ...] = field(default=())

    def __post_init__(self) -> None:
        if any(r.length != self.length for r in self.rows):
            raise ValueError(f"all generator rows must have length {self.length}")
        # 独立性の検査を兼ねる
        _ = self._basis

    @functools.cached_property
    def _basis(self) -> tuple[tuple[int, int], ...]:
        """Reduced row-echelon basis as (pivot bit, row) pairs."""
        basis: list[tuple[int, int]] = []
        for row in self.rows:
            residue = _reduce(row.bits, basis)
            if residue == 0:
                raise ValueError(f"generator rows are linearly dependent at {row}")
            pivot = 1 << (residue.bit_length() - 1)
            basis = [(p, r ^ residue) if r & pivot else (p, r) for p, r in basis]
            basis.append((pivot, residue))
        return tuple(basis)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @functools.cached_property
    def _free_positions(self) -> tuple[int, ...]:
        """Bit positions (0 = least significant) outside the pivots, most significant first."""
        pivots = {p.bit_length() - 1 for p, _ in self._basis}
        return tuple(b for b in range(self.length - 1, -1, -1) if b not in pivots)

    def coset_leader(self, word: Word) -> Word:
        """Canonical coset representative: the word reduced to zero on every pivot."""
        return Word(self.length, _reduce(word.bits, self._basis))

    def syndrome(self, word: Word) -> int:
        residue = _reduce(word.bits, self._basis)
        value = 0
        for b in self._free_positions:
            value = (value << 1) | ((residue >> b) & 1)
        return value

    def from_syndrome(self, syndrome: int) -> Word:
        m = len(self._free_positions)
        bits = 0
        for j, b in enumerate(self._free_positions):
            if (syndrome >> (m - 1 - j)) & 1:
                bits |= 1 << b
        return Word(self.length, bits)

    def parity_columns(self) -> tuple[int, ...]:
        """Syndrome of each unit word e_1..e_n, i.e. the columns of a parity-check matrix."""
        return tuple(self.syndrome(Word.unit(self.length, i)) for i in range(1, self.length + 1))

    def __contains__(self, word: object) -> bool:
        return isinstance(word, Word) and _reduce(word.bits, self._basis) == 0

    def codeword_bits(self) -> list[int]:
        span = [0]
        for row in self.rows:
            span += [v ^ row.bits for v in span]
        return span

    def codewords(self) -> Iterator[Word]:
        for bits in self.codeword_bits():
            yield Word(self.length, bits)

    def to_code(self) -> Code:
        return Code(self.length, tuple(self.codewords()))

    @functools.cached_property
    def min_distance(self) -> int:
        if not self.rows:
            raise ValueError("minimum distance is undefined for the zero code")
        return min(v.bit_count() for v in self.codeword_bits() if v)


def _reduce(bits: int, basis: Iterable[tuple[int, int]]) -> int:
    for pivot, row in basis:
        if bits & pivot:
            bits ^= row
    return bits


def min_distance(C: Code) -> int:
    return C.min_distance


def _permute_bits(values: np.ndarray, perm: np.ndarray, n: int) -> np.ndarray:
    """Move coordinate j+1 of every packed value to coordinate perm[j]+1."""
    out = np.zeros_like(values)
    for j, target in enumerate(perm.tolist()):
        out |= ((values >> (n - 1 - j)) & 1) << (n - 1 - target)
    return out


def greedy_code(n: int, d: int, seed: int = 0) -> Code:
    """
    Maximal code with minimum distance >= d built by a greedy scan.

    The scan visits the lexicographic order through a seeded coordinate permutation and
    translation, so every seed yields an isometric copy of the lexicode. seed=0 is the
    lexicode itself.
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    if n > GREEDY_MAX_LENGTH:
        raise SearchBudgetExceeded(f"greedy scan over F^{n} exceeds the length cap {GREEDY_MAX_LENGTH}")

    order = np.arange(1 << n, dtype=np.int64)
    if seed != 0:
        rng = np.random.default_rng(seed)
        order = _permute_bits(order, rng.permutation(n), n) ^ int(rng.integers(0, 1 << n))

    blocked = np.zeros(1 << n, dtype=bool)
    masks = np.array(error_masks(n, d - 1), dtype=np.int64)
    chosen: list[Word] = []
    for candidate in order.tolist():
        if blocked[candidate]:
            continue
        chosen.append(Word(n, candidate))
        blocked[candidate ^ masks] = True

    logging.debug("greedy_code(n=%d, d=%d, seed=%d): %d codewords", n, d, seed, len(chosen))
    return Code(n, tuple(chosen))


def hamming_code(r: int) -> LinearCode:
    """Binary Hamming code of length 2^r - 1 in systematic form [I | A^T]."""
    if r < 2:
        raise ValueError(f"Hamming codes need r >= 2, got {r}")
    n = (1 << r) - 1
    data_columns = [v for v in range(1, 1 << r) if v.bit_count() > 1]
    rows = tuple(Word(n, (1 << (n - 1 - i)) | col) for i, col in enumerate(data_columns))
    return LinearCode(n, rows)


def _syndrome_radius(columns: Iterable[int], m: int) -> int | None:
    """Covering radius from parity-check columns by breadth-first search over syndromes."""
    columns = [c for c in set(columns) if c]
    reached = {0}
    frontier = {0}
    radius = 0
    while len(reached) < (1 << m):
        frontier = {s ^ c for s in frontier for c in columns} - reached
        if not frontier:
            return None
        reached |= frontier
        radius += 1
    return radius


def covering_radius(D: LinearCode) -> int:
    m = D.length - D.dimension
    if m == 0:
        return 0
    radius = _syndrome_radius(D.parity_columns(), m)
    # 検査行列の列は常に全シンドロームを張る
    assert radius is not None
    return radius


def _neighbours(arr: np.ndarray, bit: int) -> np.ndarray:
    """arr[x ^ (1 << bit)] for every x, as a reshaped view."""
    return arr.reshape(-1, 2, 1 << bit)[:, ::-1, :].reshape(-1)


def is_R_covering(C: Code | LinearCode, R: int) -> bool:  # noqa: N802
    """True iff every word of F^n is within distance R of some codeword."""
    if R < 0:
        raise ValueError(f"covering radius must be non-negative, got {R}")
    if isinstance(C, LinearCode):
        return covering_radius(C) <= R

    n = C.length
    if n > COVERING_MAX_LENGTH:
        raise SearchBudgetExceeded(f"exhaustive covering check over F^{n} exceeds cap {COVERING_MAX_LENGTH}")
    if R >= n:
        return True
    if len(C) * ball_volume(n, R) < (1 << n):
        return False

    covered = np.zeros(1 << n, dtype=bool)
    covered[C.bits_array] = True
    for _ in range(R):
        grown = covered.copy()
        for bit in range(n):
            grown |= _neighbours(covered, bit)
        covered = grown
        if covered.all():
            return True
    return bool(covered.all())


@dataclass(frozen=True)
class CoveringSearchResult:
    """Outcome of the k[n,R] search."""

    n: int
    R: int
    k: int
    witness: LinearCode
    examined: int


def covering_dimension(n: int, R: int) -> CoveringSearchResult:
    """
    Smallest k such that some linear [n, k] code has covering radius <= R.

    Generator matrices are searched in systematic form [I_k | B^T]; the k columns of B are
    taken as a non-decreasing sequence since column order does not affect the radius.
    """
    if n < 1 or R < 0:
        raise ValueError(f"need n >= 1 and R >= 0, got n={n}, R={R}")
    if n > COVERING_SEARCH_MAX_LENGTH:
        raise SearchBudgetExceeded(f"k[n,R] search beyond n={COVERING_SEARCH_MAX_LENGTH}")

    volume = ball_volume(n, min(R, n))
    k_low = next(k for k in range(n + 1) if (volume << k) >= (1 << n))
    examined = 0
    for k in range(k_low, n + 1):
        m = n - k
        if m == 0:
            rows = tuple(Word.unit(n, i) for i in range(1, n + 1))
            return CoveringSearchResult(n, R, n, LinearCode(n, rows), examined + 1)
        units = [1 << (m - 1 - j) for j in range(m)]
        for columns in itertools.combinations_with_replacement(range(1 << m), k):
            examined += 1
            radius = _syndrome_radius((*columns, *units), m)
            if radius is not None and radius <= R:
                rows = tuple(Word(n, (1 << (n - 1 - i)) | col) for i, col in enumerate(columns))
                logging.debug("k[%d,%d] = %d after %d candidates", n, R, k, examined)
                return CoveringSearchResult(n, R, k, LinearCode(n, rows), examined)
        logging.debug("no [%d,%d] code with covering radius %d", n, k, R)

    raise AssertionError("the full space always covers")  # pragma: no cover


def cosets(D: LinearCode) -> Iterator[frozenset[Word]]:
    """Cosets of D in syndrome order."""
    members = D.codeword_bits()
    for s in range(1 << (D.length - D.dimension)):
        leader = D.from_syndrome(s).bits
        yield frozenset(Word(D.length, leader ^ c) for c in members)


def decode_unique(C: Code, w: Word, radius: int) -> Word | None:
    """The codeword within `radius` of w, unique because radius <= e."""
    if radius > C.capability_e:
        raise ValueError(f"radius {radius} exceeds the capability e={C.capability_e}; use list_in_ball")
    for c in C.codewords:
        if distance(c, w) <= radius:
            return c
    return None


def list_in_ball(C: Code, u: Word, radius: int) -> frozenset[Word]:
    return frozenset(c for c in C.codewords if distance(c, u) <= radius)


def max_ball_count(C: Code, radius: int) -> int:
    """M: the largest number of codewords in any ball of the given radius."""
    n = C.length
    if n > BALL_COUNT_MAX_LENGTH:
        raise SearchBudgetExceeded(f"sweep over 2^{n} centres exceeds the cap {BALL_COUNT_MAX_LENGTH}")
    radius = min(radius, n)
    counts = np.zeros(1 << n, dtype=np.int32)
    codes = C.bits_array
    for mask in error_masks(n, radius):
        counts[codes ^ mask] += 1
    return int(counts.max())


def _read_words(path: Path) -> tuple[int | None, list[Word]]:
    header_n = None
    words = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            fields = dict(item.split("=", 1) for item in line.split())
            header_n = int(fields["n"])
            continue
        words.append(Word.from_str(line))
    if header_n is not None and any(w.length != header_n for w in words):
        raise ValueError(f"{path}: word length differs from header n={header_n}")
    return header_n, words


def load_code(path: Path) -> Code:
    _, words = _read_words(path)
    if not words:
        raise ValueError(f"{path}: no codewords")
    return Code.of(words)


def load_linear_code(path: Path) -> LinearCode:
    header_n, rows = _read_words(path)
    if header_n is None and not rows:
        raise ValueError(f"{path}: neither header nor generator rows")
    n = header_n if header_n is not None else rows[0].length
    return LinearCode(n, tuple(rows))


def _header(n: int, d: int | None) -> str:
    return f"n={n}" if d is None else f"n={n} d={d}"


def save_code(C: Code, path: Path) -> None:
    d = C.min_distance if len(C) > 1 else None
    lines = [_header(C.length, d), *(str(c) for c in C.codewords)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def save_linear_code(D: LinearCode, path: Path) -> None:
    d = D.min_distance if D.rows else None
    lines = [_header(D.length, d), *(str(r) for r in D.rows)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

