"""Binary population primitives shared by every colony variant."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ibinabc.exceptions import InvalidInputError

BIT_DTYPE = np.uint8


class RngStream:
    """Seeded random stream backed by numpy's PCG64 bit generator.

    PCG64 output is specified bit-for-bit by numpy, so a seed reproduces the
    same draw sequence on every platform.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def random(self, size=None):
        """Uniform real(s) in [0, 1)."""
        return self._gen.random(size)

    def integer(self, a: int, b: int) -> int:
        """Uniform integer in [a, b], both ends inclusive."""
        return int(self._gen.integers(a, b, endpoint=True))

    def uniform(self, lo: float, hi: float, size=None):
        return self._gen.uniform(lo, hi, size)

    def sample_without_replacement(self, population: int, k: int) -> np.ndarray:
        return self._gen.choice(population, size=k, replace=False)


def check_bits(x, dimension: int | None = None) -> np.ndarray:
    """Validate and coerce ``x`` into a 1-D 0/1 vector."""
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise InvalidInputError(f"bit vector must be 1-D, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise InvalidInputError("bit vector entries must be 0 or 1")
    if dimension is not None and arr.size != dimension:
        raise InvalidInputError(f"expected {dimension} bits, got {arr.size}")
    return arr.astype(BIT_DTYPE, copy=True)


def fitness(cost: float) -> float:
    """Nectar value of a cost: ``1/(1+cost)`` for non-negative costs, ``1+|cost|`` otherwise."""
    if not math.isfinite(cost):
        raise InvalidInputError(f"cost must be finite, got {cost!r}")
    if cost >= 0:
        return 1.0 / (1.0 + cost)
    return 1.0 + abs(cost)


def selection_probabilities(fitnesses) -> np.ndarray:
    fit = np.asarray(fitnesses, dtype=float)
    if fit.ndim != 1 or fit.size == 0:
        raise InvalidInputError("fitness list must be a non-empty 1-D sequence")
    if not np.all(fit > 0) or not np.all(np.isfinite(fit)):
        raise InvalidInputError("fitness values must be finite and positive")
    return fit / fit.sum()


def roulette_select(probabilities, rng: RngStream, exclude: int | None = None) -> int:
    """Draw an index with probability proportional to its weight.

    When ``exclude`` is given that index gets zero weight and the rest are
    renormalized.
    """
    weights = np.array(probabilities, dtype=float)
    if weights.ndim != 1 or weights.size == 0:
        raise InvalidInputError("empty distribution")
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise InvalidInputError("weights must be finite and non-negative")
    if exclude is not None:
        if weights.size < 2:
            raise InvalidInputError("exclusion needs at least two entries")
        weights[exclude] = 0.0
    if weights.sum() <= 0:
        raise InvalidInputError("no selectable index remains")
    return spin(weights, rng)


def spin(weights: np.ndarray, rng: RngStream) -> int:
    """Unchecked roulette spin over non-negative ``weights`` with a positive sum."""
    cum = np.cumsum(weights)
    idx = int(cum.searchsorted(rng.random() * cum[-1], side="right"))
    if idx >= weights.size or weights[idx] == 0.0:
        # float round-off at the top of the wheel
        idx = int(np.flatnonzero(weights)[-1])
    return idx


def bernoulli_init(dimension: int, rng: RngStream) -> np.ndarray:
    if dimension < 1:
        raise InvalidInputError("dimension must be at least 1")
    return (rng.random(dimension) >= 0.5).astype(BIT_DTYPE)


@dataclass
class FoodSource:
    position: np.ndarray
    cost: float
    trial: int = 0
    # continuous position, only populated by the abcbin variant
    real_position: np.ndarray | None = None
    fitness: float = field(init=False)

    def __post_init__(self):
        self.fitness = fitness(self.cost)

    def replace(self, position, cost, real_position=None):
        self.position = position
        self.cost = cost
        self.fitness = fitness(cost)
        self.real_position = real_position
        self.trial = 0


@dataclass
class Colony:
    sources: list[FoodSource]
    best_position: np.ndarray
    best_cost: float
    t: int = 0
    evals: int = 0

    @property
    def size(self) -> int:
        return len(self.sources)

    def fitnesses(self) -> np.ndarray:
        return np.fromiter((s.fitness for s in self.sources), float, len(self.sources))

    def memorize(self, position, cost) -> bool:
        """Record ``position`` as the global best if it is strictly cheaper."""
        if cost < self.best_cost:
            self.best_cost = cost
            self.best_position = position.copy()
            return True
        return False
