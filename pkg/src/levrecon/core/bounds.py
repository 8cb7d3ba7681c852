#!/usr/bin/env python3
"""
Channel-count and list-size formulas with a brute-force oracle.

Every counting formula returns an exact integer. Index ranges with half-integer limits are
evaluated over doubled integers. binomial() returns 0 outside 0 <= k <= n, which is what
lets the sums run over generous index ranges.

The oracle counts |⋂ B_t(c_i)| for h codewords up to translation and coordinate
permutation: a configuration is the multiset of its columns, so it is enumerated as a
composition of n over the 2^(h-1) column types.
"""

from __future__ import annotations

import decimal
import enum
import functools
import itertools
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from levrecon.core.hamming_core import SearchBudgetExceeded, Word, binomial, distance

# 𝕖 の有理上界（b の天井関数評価に使用）
E_UPPER = decimal.Decimal("2.7182818285")

# b をそのまま整数として持つ桁数の上限
B_DIGIT_CAP = 100_000

# 2^b を展開する b の上限
B_EXPONENT_CAP = 1 << 20

# oracle の列型組成の探索上限
ORACLE_BUDGET = 200_000


class SumVariant(enum.Enum):
    UNPRIMED = "Unprimed"
    PRIMED = "Primed"


@dataclass(frozen=True)
class ReconstructionParams:
    """(n, e, ℓ) with t = e + ℓ and the optional parameters of the individual bounds."""

    n: int
    e: int
    ell: int
    N: int | None = None
    h: int | None = None
    a: int | None = None
    R: int | None = None
    M: int | None = None
    b: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.e < 0 or self.ell < 1:
            raise ValueError(f"need n >= 1, e >= 0, ℓ >= 1; got n={self.n}, e={self.e}, ℓ={self.ell}")
        if self.t > self.n:
            raise ValueError(f"t = e + ℓ = {self.t} exceeds n = {self.n}")
        for name in ("N", "h", "a", "R", "M", "b"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")

    @property
    def t(self) -> int:
        return self.e + self.ell

    @classmethod
    def parse(cls, data: dict[str, Any]) -> ReconstructionParams:
        optional = {k: int(data[k]) for k in ("N", "h", "a", "R", "M", "b") if data.get(k) is not None}
        return cls(n=int(data["n"]), e=int(data["e"]), ell=int(data["l"]), **optional)

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {"n": self.n, "e": self.e, "l": self.ell, "t": self.t}
        for name in ("N", "h", "a", "R", "M", "b"):
            value = getattr(self, name)
            if value is not None:
                result[name] = value
        return result


@dataclass(frozen=True)
class IndexTuple:
    indices: tuple[int, ...]
    w: int

    @property
    def total(self) -> int:
        return sum(self.indices)


def volume(n: int, t: int) -> int:
    """V(n, t) under the binomial convention: 0 for t < 0 and 2^n for t >= n."""
    return sum(binomial(n, i) for i in range(max(t, -1) + 1))


def _half_up(x: int) -> int:
    """ceil(x / 2) for an integer x."""
    return -((-x) // 2)


def levenshtein_N1(n: int, e: int, ell: int) -> int:  # noqa: N802
    """Smallest N that forces list size 1 for every e-error-correcting code."""
    if n < 2 * e + 1:
        raise ValueError(f"need n >= 2e+1 = {2 * e + 1}, got n={n}")
    if ell < 1:
        raise ValueError(f"need ℓ >= 1, got {ell}")
    t = e + ell
    total = 0
    for i in range(ell):
        inner = sum(binomial(2 * e + 1, k) for k in range(e + 1 + i - ell, t - i + 1))
        total += binomial(n - 2 * e - 1, i) * inner
    return total + 1


def enumerate_Ww(  # noqa: N802
    e: int, ell: int, h: int, w: int, primed: bool = False
) -> Iterator[IndexTuple]:
    """Members of W_w (or W'_w) in lexicographic order."""
    if h < 1:
        raise ValueError(f"need h >= 1, got {h}")
    low = max(0, _half_up(w + 1 - ell))
    limits = [(low, e + 1)] * h
    if primed:
        limits[0] = (max(0, _half_up(w - ell)), e)

    def walk(j: int, prefix: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
        if j == h:
            yield prefix
            return
        lo, hi = limits[j]
        reserve = sum(limit[0] for limit in limits[j + 1 :])
        for i in range(lo, min(hi, budget - reserve) + 1):
            yield from walk(j + 1, (*prefix, i), budget - i)

    for indices in walk(0, (), w):
        yield IndexTuple(indices, w)


@functools.cache
def _sum_terms(e: int, ell: int, h: int, variant: SumVariant) -> tuple[tuple[int, int, int], ...]:
    """(w, w - Σi, Σ Π binomials) for every w; the n-dependent binomial is applied later."""
    primed = variant is SumVariant.PRIMED
    terms: dict[tuple[int, int], int] = {}
    for w in range(ell, 2 * e + ell + 2):
        for member in enumerate_Ww(e, ell, h, w, primed):
            first, rest = member.indices[0], member.indices[1:]
            weight = binomial(e if primed else e + 1, first)
            for i in rest:
                weight *= binomial(e + 1, i)
            key = (w, w - member.total)
            terms[key] = terms.get(key, 0) + weight
    return tuple((w, k, c) for (w, k), c in sorted(terms.items()) if c)


def _base_length(n: int, e: int, h: int, variant: SumVariant) -> int:
    return n - h * (e + 1) + (1 if variant is SumVariant.PRIMED else 0)


def _check_h(ell: int, h: int) -> None:
    if ell < 2:
        raise ValueError(f"need ℓ >= 2, got {ell}")
    if not 3 <= h <= ell + 1:
        raise ValueError(f"need 3 <= h <= ℓ+1 = {ell + 1}, got h={h}")


def channel_count_Nh(  # noqa: N802
    n: int, e: int, ell: int, h: int, variant: SumVariant = SumVariant.UNPRIMED
) -> int:
    """N_h: the largest N for which some e-error-correcting code still has |T(Y)| = h."""
    _check_h(ell, h)
    base = _base_length(n, e, h, variant)
    return volume(n, ell - 1) + sum(c * binomial(base, k) for _, k, c in _sum_terms(e, ell, h, variant))


def subsum_Sa(n: int, e: int, ell: int, h: int, a: int, variant: SumVariant) -> int:  # noqa: N802
    """The part of the N_h sum with w in {ℓ+2a, ℓ+2a+1}."""
    _check_h(ell, h)
    base = _base_length(n, e, h, variant)
    window = (ell + 2 * a, ell + 2 * a + 1)
    return sum(c * binomial(base, k) for w, k, c in _sum_terms(e, ell, h, variant) if w in window)


def channel_count_for_list_l(n: int, e: int, ell: int) -> int:
    """Channels that force list size at most ℓ."""
    if ell < 3:
        raise ValueError(f"need ℓ >= 3, got {ell}")
    return volume(n, ell - 1) + (e + 1) ** (ell + 1) + 1


def asymptotic_Nh_leading(n: int, e: int, ell: int, h: int) -> int:  # noqa: N802
    """V(n, ℓ-1) plus the leading term of the N_h sum."""
    _check_h(ell, h)
    return volume(n, ell - 1) + binomial(n - h * (e + 1), ell + 1 - h) * (e + 1) ** h


def required_channels(n: int, e: int, ell: int, list_size: int) -> int:
    """Number of channels after which the list size is at most `list_size`."""
    if list_size < 1:
        raise ValueError(f"list size must be positive, got {list_size}")
    if list_size == 1:
        return levenshtein_N1(n, e, ell)
    if list_size <= ell:
        return channel_count_Nh(n, e, ell, list_size + 1) + 1
    if n >= n_threshold(e, ell, applicable_b(e, ell)) or list_size >= 1 << ell:
        return volume(n, ell - 1) + 1
    raise ValueError(f"no formula gives list size {list_size} at n={n}, e={e}, ℓ={ell}")


def fixed_distance_sum(n: int, e: int, ell: int, d: int) -> int:
    """The list-size-2 sum for codes of minimum distance d (without the trailing + 1)."""
    t = e + ell
    up, down, three = _half_up(d), d // 2, _half_up(3 * d)
    total = 0
    for i1 in range(t - up + 1):
        for i4 in range(max(0, i1 + down - t), t - up - i1 + 1):
            for i3 in range(max(0, 2 * up - t + i1), t - (i1 + i4) + 1):
                lo = max(0, i1 - i3 - i4 + three - t, i1 + i3 + i4 + up - t)
                hi = t - (i1 + i4 + up - i3)
                for i2 in range(lo, hi + 1):
                    total += (
                        binomial(n - three, i1) * binomial(up, i2) * binomial(up, i3) * binomial(down, i4)
                    )
    return total


def disjoint_support_sum(n: int, e: int, ell: int) -> int:
    total = 0
    for i1 in range(ell):
        for i4, i3 in itertools.product(range(ell - i1), repeat=2):
            lo = max(0, i1 + i3 + i4 - (ell - 1))
            hi = ell - 1 - i1 - abs(i4 - i3)
            for i2 in range(lo, hi + 1):
                total += (
                    binomial(n - 3 * e - 3, i1)
                    * binomial(e + 1, i2)
                    * binomial(e + 1, i3)
                    * binomial(e + 1, i4)
                )
    return total


def odd_distance_sum(n: int, e: int, ell: int) -> int:
    """The d = 2e+1 form with the median constraint evaluated over doubled integers."""
    total = 0
    for i1 in range(ell):
        for i4, i3 in itertools.product(range(ell - i1), repeat=2):
            lo = max(0, i1 + i3 + i4 - (ell - 1))
            hi = (2 * ell - 1 - 2 * i1 - abs(2 * (i4 - i3) + 1)) // 2
            for i2 in range(lo, hi + 1):
                total += (
                    binomial(n - 3 * e - 2, i1) * binomial(e + 1, i2) * binomial(e + 1, i3) * binomial(e, i4)
                )
    return total


class L2BoundSums(NamedTuple):
    """Three evaluations of the channel count after which the list size is at most 2."""

    even_distance: int
    disjoint_support: int
    odd_distance: int


def l2_bound_three_ways(n: int, e: int, ell: int) -> L2BoundSums:
    if ell < 2:
        raise ValueError(f"need ℓ >= 2, got {ell}")
    return L2BoundSums(
        even_distance=fixed_distance_sum(n, e, ell, 2 * e + 2),
        disjoint_support=disjoint_support_sum(n, e, ell),
        odd_distance=odd_distance_sum(n, e, ell),
    )


def n_threshold(e: int, ell: int, b: int) -> int:
    """The length above which the ℓ+1 bound and the N_h formulas are proven."""
    inner = b - 3 * e - 2 * e * e + e * b + binomial(b - 2 * e - 1, 2)
    return (ell - 1) ** 2 * (b - e + (e + 1) * inner) + ell - 2


def applicable_b(e: int, ell: int) -> int:
    return max(3 * (e + ell), 4 * e + 4)


class JohnsonRadii(NamedTuple):
    r_M: float
    r: float


def johnson_radii(n: int, e: int, M: int) -> JohnsonRadii:  # noqa: N803
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    if not 2 * (2 * e + 1) < n:
        raise ValueError(f"need 2e+1 < n/2, got e={e}, n={n}")
    ratio = 2 * (2 * e + 1) / n
    r_m = n / 2 * (1 - math.sqrt(1 - (M - 1) / M * ratio))
    r_inf = n / 2 * (1 - math.sqrt(1 - ratio))
    return JohnsonRadii(r_m, r_inf)


@dataclass(frozen=True)
class BoundRecord:
    """One list-size bound with the channel-count condition it needs."""

    name: str
    kind: str  # "upper" or "lower"
    value: int | None
    threshold: int | None
    n_condition: bool
    N_condition: bool | None = None
    note: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.n_condition and self.N_condition is not False

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "threshold": self.threshold,
            "threshold_relation": ">=" if self.kind == "upper" else "<=",
            "applicable": self.applicable,
            "n_condition": self.n_condition,
            "N_condition": self.N_condition,
        }
        if self.note:
            result["note"] = self.note
        result.update(self.extra)
        return result


def _n_meets(N: int | None, threshold: int | None, kind: str) -> bool | None:  # noqa: N803
    if N is None or threshold is None:
        return None
    return threshold <= N if kind == "upper" else N <= threshold


def _record(
    name: str,
    kind: str,
    value: int | None,
    threshold: int | None,
    n_ok: bool,
    N: int | None,  # noqa: N803
    **kw: Any,
) -> BoundRecord:
    return BoundRecord(name, kind, value, threshold, n_ok, _n_meets(N, threshold, kind), **kw)


def johnson_list_bounds(
    n: int, e: int, ell: int, M: int, N: int | None = None  # noqa: N803
) -> tuple[BoundRecord, BoundRecord]:
    """The two list bounds obtained from the Johnson radii, on integer radii."""
    radii = johnson_radii(n, e, M)
    t = e + ell

    rho = math.floor(radii.r_M)
    a = rho - e
    ok = 0 <= a <= ell - 1 and rho >= 1
    first = _record(
        "johnson_M",
        "upper",
        (1 << (t - rho)) * M if ok else None,
        volume(n, ell - a - 1) + 1 if ok else None,
        ok,
        N,
        extra={"radius": radii.r_M, "integer_radius": rho},
    )

    rho = math.ceil(radii.r) - 1
    a = rho - e
    ok = 0 <= a <= ell - 1 and rho >= 1
    second = _record(
        "johnson_n",
        "upper",
        (1 << (t - rho)) * n if ok else None,
        volume(n, ell - a - 1) + 1 if ok else None,
        ok,
        N,
        extra={"radius": radii.r, "integer_radius": rho},
    )
    return first, second


@dataclass(frozen=True)
class ListT2MBound:
    """L <= max{(t+1)M, b/(2e+2a+2)} with b = ceil((2e+2a+2)^(𝕖 (e+a+1)!))."""

    b: int | None
    b_log10: float
    value: int | None
    n_threshold: int | None
    n_threshold_log2: float


def list_t2m_bound(e: int, ell: int, a: int, M: int) -> ListT2MBound:  # noqa: N803
    if not 1 <= a <= ell - 1:
        raise ValueError(f"need 1 <= a <= ℓ-1, got a={a}, ℓ={ell}")
    base = 2 * e + 2 * a + 2
    exponent = E_UPPER * math.factorial(e + a + 1)
    b_log10 = float(exponent) * math.log10(base)
    excess = ell - a

    b = None
    if b_log10 < B_DIGIT_CAP:
        with decimal.localcontext() as ctx:
            ctx.prec = int(b_log10) + 30
            ctx.Emax = decimal.MAX_EMAX
            b = int((exponent * decimal.Decimal(base).ln()).exp().to_integral_value(decimal.ROUND_CEILING))

    t = e + ell
    value = max((t + 1) * M, b // base) if b is not None else None
    threshold = None
    if b is not None and b <= B_EXPONENT_CAP:
        threshold = (excess - 1) ** 2 * (1 << b) + excess - 2
    if b is not None:
        b_log2 = float(b)
    elif b_log10 < 300:
        b_log2 = 10**b_log10
    else:
        b_log2 = math.inf
    return ListT2MBound(b, b_log10, value, threshold, b_log2 + 2 * math.log2(max(excess - 1, 1)))


def generic_list_bounds(params: ReconstructionParams) -> list[BoundRecord]:
    """Every bound the parameters allow, each flagged with whether its conditions hold."""
    n, e, ell, t, N = params.n, params.e, params.ell, params.t, params.N
    base_threshold = volume(n, ell - 1) + 1
    records = [
        _record("central_binomial", "upper", binomial(2 * ell, ell), base_threshold, n >= 2 * ell - 1, N),
        _record("shattering", "upper", 1 << ell, base_threshold, n >= ell, N),
        _record("length_over_e1", "lower", n // (e + 1), volume(n, ell - 1), True, N),
    ]

    b = params.b if params.b is not None else applicable_b(e, ell)
    length_needed = n_threshold(e, ell, b)
    records.append(
        _record(
            "l_plus_1",
            "upper",
            ell + 1,
            base_threshold,
            n >= length_needed,
            N,
            extra={"b": b, "n_threshold": length_needed},
        )
    )
    records.append(_record("l_plus_1_lower", "lower", ell + 1, base_threshold, n >= ell + ell * e + e, N))

    if params.a is not None and params.M is not None:
        a, M = params.a, params.M
        ok = 0 <= a <= ell - 1
        records.append(
            _record(
                "shatter_ball",
                "upper",
                (1 << (ell - a)) * M if ok else None,
                volume(n, ell - a - 1) + 1,
                ok,
                N,
            )
        )
        if 1 <= a <= ell - 1:
            big = list_t2m_bound(e, ell, a, M)
            n_ok = big.n_threshold is not None and n >= big.n_threshold
            records.append(
                _record(
                    "list_t2m",
                    "upper",
                    big.value,
                    volume(n, ell - a - 1) + 1,
                    n_ok,
                    N,
                    note="length threshold beyond materialisation" if big.n_threshold is None else "",
                    extra={"b_log10": big.b_log10, "n_threshold_log2": big.n_threshold_log2},
                )
            )

    if params.R is not None and ell + 2 * params.R <= n:
        from levrecon.core.codes import COVERING_SEARCH_MAX_LENGTH, covering_dimension

        R = params.R  # noqa: N806
        m = ell + 2 * R
        if m <= COVERING_SEARCH_MAX_LENGTH:
            k = covering_dimension(m, R).k
            records.append(
                _record(
                    "covering",
                    "upper",
                    1 << k,
                    volume(n, m - 1) - (1 << (m - k)) + 2,
                    R <= e,
                    N,
                    extra={"covering_dimension": k},
                )
            )

    if params.M is not None and 2 * (2 * e + 1) < n:
        records.extend(johnson_list_bounds(n, e, ell, params.M, N))

    logging.debug("%d bounds evaluated for %s", len(records), params.to_dict())
    return records


def extremal_configuration(n: int, e: int, h: int, primed: bool = False) -> tuple[Word, ...]:
    """h codewords on consecutive disjoint blocks of size e+1 (the first of size e if primed)."""
    sizes = [e + 1] * h
    if primed:
        sizes[0] = e
    if sum(sizes) > n:
        raise ValueError(f"{h} disjoint supports of these sizes do not fit in length {n}")
    words = []
    start = 1
    for size in sizes:
        words.append(Word.from_support(n, range(start, start + size)))
        start += size
    return tuple(words)


def separating_word(n: int, e: int, ell: int, h: int) -> tuple[tuple[Word, ...], Word]:
    """
    Codewords c_1..c_(h+1) and a word within t of c_1..c_h but at distance t+2 from c_(h+1).

    The word has one 1 in each of the first h supports and ℓ+1-h further 1s outside all of them.
    """
    if not 1 <= h <= ell + 1:
        raise ValueError(f"need 1 <= h <= ℓ+1, got h={h}")
    config = extremal_configuration(n, e, h + 1)
    outside_start = (h + 1) * (e + 1) + 1
    outside = ell + 1 - h
    if outside_start - 1 + outside > n:
        raise ValueError(f"length {n} too short for the separating word")
    coords = [j * (e + 1) + 1 for j in range(h)] + list(range(outside_start, outside_start + outside))
    return config, Word.from_support(n, coords)


@dataclass(frozen=True)
class OracleResult:
    """Maximum |⋂ B_t(c_i)| over admissible configurations and how it was searched."""

    n: int
    e: int
    ell: int
    h: int
    value: int
    method: str  # "exhaustive" or "structured"
    configurations: int
    witness: tuple[Word, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "e": self.e,
            "l": self.ell,
            "h": self.h,
            "value": self.value,
            "method": self.method,
            "configurations": self.configurations,
            "witness": [str(c) for c in self.witness],
        }


def _type_flags(h: int) -> list[tuple[int, ...]]:
    """Column types: bit of c_1..c_h in a column, c_1 always 0 after translation."""
    return [(0, *((tau >> (j - 1)) & 1 for j in range(1, h))) for tau in range(1 << (h - 1))]


def _intersection_size(counts: list[int], flags: list[tuple[int, ...]], t: int) -> int:
    """|⋂ B_t(c_i)| for the configuration with counts[τ] columns of type τ."""
    h = len(flags[0])
    active = [(m, f) for m, f in zip(counts, flags, strict=True) if m]

    def walk(idx: int, dist: tuple[int, ...]) -> int:
        if idx == len(active):
            return 1
        m, f = active[idx]
        total = 0
        for j in range(m + 1):
            nxt = tuple(d + (m - j if f[i] else j) for i, d in enumerate(dist))
            if max(nxt) <= t:
                total += binomial(m, j) * walk(idx + 1, nxt)
        return total

    return walk(0, (0,) * h)


def _configuration_words(n: int, counts: list[int], flags: list[tuple[int, ...]]) -> tuple[Word, ...]:
    h = len(flags[0])
    bits = [0] * h
    coord = 1
    for m, f in zip(counts, flags, strict=True):
        for _ in range(m):
            for i in range(h):
                if f[i]:
                    bits[i] |= 1 << (n - coord)
            coord += 1
    return tuple(Word(n, b) for b in bits)


def _exhaustive(n: int, e: int, t: int, h: int, budget: int) -> tuple[int, int, tuple[Word, ...]]:
    flags = _type_flags(h)
    pairs = list(itertools.combinations(range(h), 2))
    differ = [tuple(f[i] != f[j] for i, j in pairs) for f in flags]
    best, best_counts, visited = -1, [n] + [0] * (len(flags) - 1), 0

    def walk(tau: int, counts: list[int], remaining: int, dist: tuple[int, ...]) -> None:
        nonlocal best, best_counts, visited
        if tau == len(flags):
            if any(d < 2 * e + 1 for d in dist):
                return
            visited += 1
            if visited > budget:
                raise SearchBudgetExceeded(f"more than {budget} configurations")
            full = [remaining, *counts]
            size = _intersection_size(full, flags, t)
            if size > best:
                best, best_counts = size, full
            return
        for m in range(remaining + 1):
            nxt = tuple(d + m * diff for d, diff in zip(dist, differ[tau], strict=True))
            if nxt and max(nxt) > 2 * t:
                break
            walk(tau + 1, [*counts, m], remaining - m, nxt)

    walk(1, [], n, (0,) * len(pairs))
    if best < 0:
        return 0, visited, ()
    return best, visited, _configuration_words(n, best_counts, flags)


def _composition_of(words: tuple[Word, ...]) -> list[int]:
    h = len(words)
    anchor = words[0].bits
    n = words[0].length
    counts = [0] * (1 << (h - 1))
    for coord in range(1, n + 1):
        shift = n - coord
        tau = 0
        for j in range(1, h):
            tau |= (((words[j].bits ^ anchor) >> shift) & 1) << (j - 1)
        counts[tau] += 1
    return counts


def intersection_size(words: tuple[Word, ...], t: int) -> int:
    """|⋂ B_t(c)| for explicit codewords, counted through their column composition."""
    return _intersection_size(_composition_of(words), _type_flags(len(words)), t)


def oracle_Nprime(  # noqa: N802
    n: int, e: int, ell: int, h: int, budget: int = ORACLE_BUDGET
) -> OracleResult:
    """
    Brute-force maximum of |⋂ B_t(c_i)| over h codewords pairwise at distance >= 2e+1.

    Above the configuration budget only the disjoint-support configurations with weights
    e and e+1 are compared, and the result says so.
    """
    if h < 1 or ell < 1:
        raise ValueError(f"need h >= 1 and ℓ >= 1, got h={h}, ℓ={ell}")
    t = e + ell
    if t > n:
        raise ValueError(f"t = {t} exceeds n = {n}")
    if h == 1:
        return OracleResult(n, e, ell, h, volume(n, t), "exhaustive", 1, (Word.zero(n),))

    try:
        value, visited, witness = _exhaustive(n, e, t, h, budget)
        logging.debug("oracle(%d,%d,%d,%d): %d configurations", n, e, ell, h, visited)
        return OracleResult(n, e, ell, h, value, "exhaustive", visited, witness)
    except SearchBudgetExceeded:
        logging.info("oracle(%d,%d,%d,%d): falling back to structured configurations", n, e, ell, h)

    candidates = []
    for primed in (False, True):
        try:
            config = extremal_configuration(n, e, h, primed)
        except ValueError:
            continue
        if all(distance(a, b) >= 2 * e + 1 for a, b in itertools.combinations(config, 2)):
            candidates.append((intersection_size(config, t), config))
    if not candidates:
        raise SearchBudgetExceeded(f"no structured configuration fits n={n} and the full search is too large")
    value, witness = max(candidates, key=lambda item: item[0])
    return OracleResult(n, e, ell, h, value, "structured", len(candidates), witness)
