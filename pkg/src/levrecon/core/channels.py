#!/usr/bin/env python3
"""
Channel models producing the output multiset Y.

UniformBall and ExactWeight draw N independent outputs, duplicates allowed.
AdversarialSet returns N distinct words of B_t(x) chosen by an injectable adversary.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Protocol

import numpy as np

from levrecon.core.hamming_core import (
    SearchBudgetExceeded,
    Word,
    ball_volume,
    distance,
    enumerate_ball,
    error_masks,
    sample_ball_uniform,
    weight_probabilities,
)

if TYPE_CHECKING:
    from collections.abc import Iterable

# ⋂ B_t(c_i) を列挙する際のアンカー球の上限
INTERSECTION_BUDGET = 1 << 24


class ChannelModel(enum.Enum):
    UNIFORM_BALL = "UniformBall"
    EXACT_WEIGHT = "ExactWeight"
    ADVERSARIAL_SET = "AdversarialSet"

    @classmethod
    def parse(cls, name: str) -> ChannelModel:
        for model in cls:
            if name.lower() in (model.value.lower(), model.name.lower()):
                return model
        raise ValueError(f"unknown channel model: {name}")


class Adversary(Protocol):
    """Strategy choosing `count` distinct words of B_t(source)."""

    def choose(self, source: Word, t: int, count: int, rng: np.random.Generator) -> list[Word]: ...


@dataclass(frozen=True)
class BallOrderAdversary:
    """The first words of B_t(source) in enumeration order."""

    def choose(
        self, source: Word, t: int, count: int, rng: np.random.Generator  # noqa: ARG002
    ) -> list[Word]:
        return list(itertools.islice(enumerate_ball(source, t), count))


@dataclass(frozen=True)
class RandomSubsetAdversary:
    """A uniformly random set of distinct words of B_t(source)."""

    def choose(self, source: Word, t: int, count: int, rng: np.random.Generator) -> list[Word]:
        masks = error_masks(source.length, t)
        picks = rng.choice(len(masks), size=count, replace=False)
        return [Word(source.length, source.bits ^ masks[int(i)]) for i in sorted(picks)]


@dataclass(frozen=True)
class IntersectionAdversary:
    """
    Fill Y from ⋂ B_t(c) over the source and the given codewords, then top up in ball order.

    With the codewords of an extremal configuration this reproduces the worst-case Y.
    """

    codewords: tuple[Word, ...] = field(default=())

    def choose(
        self, source: Word, t: int, count: int, rng: np.random.Generator  # noqa: ARG002
    ) -> list[Word]:
        core = sorted(adversarial_intersection((source, *self.codewords), t))
        chosen = core[:count]
        if len(chosen) < count:
            taken = set(chosen)
            for word in enumerate_ball(source, t):
                if len(chosen) == count:
                    break
                if word not in taken:
                    chosen.append(word)
        return chosen


@dataclass(frozen=True)
class OutputBatch:
    """The N channel outputs with the model that produced them."""

    outputs: tuple[Word, ...]
    model: ChannelModel
    t: int
    source: Word | None = None

    def __post_init__(self) -> None:
        if not self.outputs:
            raise ValueError("an output batch needs at least one output")
        n = self.outputs[0].length
        if any(y.length != n for y in self.outputs):
            raise ValueError("all outputs must have the same length")
        if not 0 <= self.t <= n:
            raise ValueError(f"error budget t={self.t} outside [0, {n}]")
        if self.source is not None:
            if self.source.length != n:
                raise ValueError("source length differs from the outputs")
            far = [y for y in self.outputs if distance(y, self.source) > self.t]
            if far:
                raise ValueError(f"output {far[0]} lies farther than t={self.t} from the source")
        if self.model is ChannelModel.ADVERSARIAL_SET and len(set(self.outputs)) != len(self.outputs):
            raise ValueError("adversarial outputs must be distinct")

    @property
    def n(self) -> int:
        return self.outputs[0].length

    @property
    def N(self) -> int:  # noqa: N802
        return len(self.outputs)

    def distinct(self) -> frozenset[Word]:
        return frozenset(self.outputs)

    @classmethod
    def parse(cls, data: dict[str, Any]) -> OutputBatch:
        outputs = tuple(Word.from_str(s) for s in data["outputs"])
        source = data.get("source")
        batch = cls(
            outputs=outputs,
            model=ChannelModel.parse(data["model"]),
            t=int(data["t"]),
            source=Word.from_str(source) if source else None,
        )
        if "n" in data and int(data["n"]) != batch.n:
            raise ValueError(f"declared n={data['n']} differs from output length {batch.n}")
        return batch

    @classmethod
    def from_json(cls, text: str) -> OutputBatch:
        return cls.parse(json.loads(text))

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {"n": self.n, "t": self.t, "model": self.model.value}
        if self.source is not None:
            result["source"] = str(self.source)
        result["outputs"] = [str(y) for y in self.outputs]
        return result

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def transmit(
    x: Word,
    t: int,
    N: int,  # noqa: N803
    model: ChannelModel,
    rng: np.random.Generator,
    adversary: Adversary | None = None,
) -> OutputBatch:
    """Send x through N channels with at most t substitutions each."""
    n = x.length
    if not 0 <= t <= n:
        raise ValueError(f"error budget t={t} outside [0, {n}]")
    if N < 1:
        raise ValueError(f"need at least one channel, got N={N}")

    if model is ChannelModel.UNIFORM_BALL:
        outputs = [sample_ball_uniform(x, t, rng) for _ in range(N)]
    elif model is ChannelModel.EXACT_WEIGHT:
        outputs = [x.flip(int(j) + 1 for j in rng.choice(n, size=t, replace=False)) for _ in range(N)]
    else:
        if N > ball_volume(n, t):
            raise ValueError(f"N={N} distinct outputs exceed V({n},{t})={ball_volume(n, t)}")
        outputs = (adversary or BallOrderAdversary()).choose(x, t, N, rng)
        if len(outputs) != N:
            raise ValueError(f"adversary returned {len(outputs)} outputs, expected {N}")

    return OutputBatch(outputs=tuple(outputs), model=model, t=t, source=x)


def adversarial_intersection(codewords: Iterable[Word], t: int) -> frozenset[Word]:
    """Exact ⋂ B_t(c) by enumerating the ball around the first codeword and filtering."""
    words = list(codewords)
    if not words:
        raise ValueError("need at least one codeword")
    n = words[0].length
    if any(c.length != n for c in words):
        raise ValueError("codewords must have equal length")
    if t > n:
        raise ValueError(f"radius {t} exceeds length {n}")
    if any(distance(a, b) > 2 * t for a, b in itertools.combinations(words, 2)):
        return frozenset()
    if ball_volume(n, t) > INTERSECTION_BUDGET:
        raise SearchBudgetExceeded(f"V({n},{t}) exceeds the enumeration budget")

    anchor, others = words[0], words[1:]
    if n <= 62:
        candidates = anchor.bits ^ np.array(error_masks(n, t), dtype=np.int64)
        keep = np.ones(len(candidates), dtype=bool)
        for c in others:
            keep &= np.bitwise_count(candidates ^ c.bits) <= t
        return frozenset(Word(n, int(v)) for v in candidates[keep])
    return frozenset(y for y in enumerate_ball(anchor, t) if all(distance(y, c) <= t for c in others))


def sample_error_patterns(
    n: int,
    t: int,
    shape: Sequence[int],
    rng: np.random.Generator,
    model: ChannelModel = ChannelModel.UNIFORM_BALL,
) -> np.ndarray:
    """
    Boolean flip patterns of shape (*shape, n), column j standing for coordinate j+1.

    Vectorised form of transmit from the all-zero word for the two random models.
    """
    if model is ChannelModel.ADVERSARIAL_SET:
        raise ValueError("adversarial outputs are not sampled")
    shape = tuple(shape)
    if model is ChannelModel.EXACT_WEIGHT:
        weights = np.full(shape, t)
    else:
        weights = rng.choice(t + 1, size=shape, p=weight_probabilities(n, t))
    order = rng.random((*shape, n)).argsort(axis=-1)
    flips = np.zeros((*shape, n), dtype=bool)
    np.put_along_axis(flips, order, np.arange(n) < weights[..., None], axis=-1)
    return flips
