from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ibinabc.exceptions import InvalidInputError
from ibinabc.problems import HIT_TOLERANCE


def gap(mean: float, optimum: float) -> float:
    """Percentage excess of ``mean`` over ``optimum``."""
    if not optimum > 0:
        raise InvalidInputError(f"optimum must be positive, got {optimum}")
    return (mean - optimum) / optimum * 100.0


@dataclass(frozen=True)
class Summary:
    mean: float
    std: float
    best: float
    worst: float
    gap: float | None
    hit: int | None
    runs: int


def summarize(costs, optimum: float | None = None, repetitions: int | None = None) -> Summary:
    """Aggregate final best costs of repeated runs.

    ``std`` uses the population divisor. A run counts as a hit when it lands
    within 1e-2 of the optimum.
    """
    arr = np.asarray(costs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError("need at least one cost")
    if repetitions is not None and repetitions != arr.size:
        raise InvalidInputError(f"expected {repetitions} costs, got {arr.size}")
    mean = float(arr.mean())
    # clamp so rounding in mean never breaks best <= mean <= worst
    best, worst = float(arr.min()), float(arr.max())
    mean = min(max(mean, best), worst)
    std = float(arr.std(ddof=0))
    if optimum is None:
        return Summary(mean, std, best, worst, None, None, arr.size)
    hits = int(np.count_nonzero(np.abs(arr - optimum) <= HIT_TOLERANCE))
    g = gap(mean, optimum)
    if hits == arr.size:
        # every run is on the optimum; drop float summation noise
        g, std = 0.0, 0.0
    return Summary(mean, std, best, worst, g, hits, arr.size)
