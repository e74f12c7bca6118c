"""Candidate generators for the four binary colony variants.

Every generator takes the selected source, a neighbor and an ``RngStream``
and returns a fresh candidate without touching its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ibinabc.core import BIT_DTYPE, RngStream
from ibinabc.exceptions import DomainError, InvalidInputError

THETA_MODES = ("prob", "threshold")


@dataclass(frozen=True)
class ScheduleContext:
    t: int
    t_max: int
    dimension: int
    q_start: float = 0.3
    q_end: float = 0.1
    alpha: int = 2

    def __post_init__(self):
        if self.t_max < 1 or not 0 <= self.t <= self.t_max:
            raise InvalidInputError(f"need 0 <= t <= t_max and t_max >= 1, got t={self.t}, t_max={self.t_max}")
        if not 0 < self.q_end <= self.q_start < 1:
            raise InvalidInputError(f"need 0 < q_end <= q_start < 1, got ({self.q_start}, {self.q_end})")
        if self.alpha < 0 or self.dimension < 1:
            raise InvalidInputError("alpha must be >= 0 and dimension >= 1")


# --- XOR neighborhood (binABC) -------------------------------------------

def xor_bit(x_bit: int, n_bit: int, state2: bool) -> int:
    """One row of the XOR truth table.

    State 1 inverts the selected bit when the two bits agree and keeps it when
    they differ; state 2 takes the neighbor's bit.
    """
    if state2:
        return n_bit
    return x_bit ^ (1 - (x_bit ^ n_bit))


def _xor_vector(x: np.ndarray, n: np.ndarray, state2: np.ndarray) -> np.ndarray:
    # vectorized xor_bit
    return np.where(state2, n, x ^ (1 - (x ^ n))).astype(BIT_DTYPE)


def binabc_generate(selected, neighbor, rng: RngStream) -> np.ndarray:
    if len(selected) != len(neighbor):
        raise InvalidInputError("selected and neighbor differ in length")
    cand = np.array(selected, dtype=BIT_DTYPE)
    j = rng.integer(0, cand.size - 1)
    theta = rng.random()
    cand[j] = xor_bit(int(cand[j]), int(neighbor[j]), theta >= 0.5)
    return cand


# --- Jaccard dissimilarity (disABC) ---------------------------------------

def dissimilarity(x, y) -> float:
    x = np.asarray(x, dtype=bool)
    y = np.asarray(y, dtype=bool)
    if x.size != y.size:
        raise InvalidInputError("vectors differ in length")
    m11 = int(np.count_nonzero(x & y))
    union = int(np.count_nonzero(x | y))
    if union == 0:
        raise DomainError("Jaccard dissimilarity is undefined for two all-zero vectors")
    return 1.0 - m11 / union


def disabc_subproblem(n1: int, n0: int, target: float) -> tuple[int, int, int]:
    """Pick ``(M11, M01, M10)`` whose dissimilarity to the selected vector is nearest ``target``.

    Exhaustive over ``M11 in [0, n1]`` and ``M10 in [0, n0]``. Ties prefer the
    larger M11, then the smaller M10.
    """
    if n1 < 0 or n0 < 0 or n1 + n0 < 1 or target < 0:
        raise InvalidInputError(f"bad subproblem arguments n1={n1}, n0={n0}, target={target}")
    # rows: M11 from n1 down to 0, columns: M10 from 0 up, so argmin's
    # first-hit order is the tie-break order
    m11 = np.arange(n1, -1, -1)[:, None]
    m10 = np.arange(n0 + 1)[None, :]
    denom = n1 + m10 + 0 * m11
    with np.errstate(divide="ignore", invalid="ignore"):
        obj = np.abs(1.0 - m11 / denom - target)
    obj[denom == 0] = np.inf
    flat = int(np.argmin(obj))
    if not np.isfinite(obj.flat[flat]):
        return (0, 0, min(1, n0))
    r, c = divmod(flat, n0 + 1)
    best11 = n1 - r
    return (best11, n1 - best11, c)


def disabc_generate(selected, neighbor, rng: RngStream) -> np.ndarray:
    x = np.asarray(selected, dtype=BIT_DTYPE)
    if x.size != len(neighbor):
        raise InvalidInputError("selected and neighbor differ in length")
    phi = 1.0 - rng.random()  # (0, 1]
    try:
        dis = dissimilarity(x, neighbor)
    except DomainError:
        dis = 0.0
    ones = np.flatnonzero(x)
    zeros = np.flatnonzero(x == 0)
    m11, _, m10 = disabc_subproblem(ones.size, zeros.size, phi * dis)
    cand = np.zeros_like(x)
    if m11 == ones.size:
        cand[ones] = 1
    elif m11:
        cand[ones[rng.sample_without_replacement(ones.size, m11)]] = 1
    if m10:
        cand[zeros[rng.sample_without_replacement(zeros.size, m10)]] = 1
    return cand


# --- continuous mapping (ABCbin) -------------------------------------------

ABCBIN_BOUNDS = (0.0, 2.0)


@dataclass
class ContinuousSource:
    position: np.ndarray
    lb: float = ABCBIN_BOUNDS[0]
    ub: float = ABCBIN_BOUNDS[1]

    def __post_init__(self):
        self.position = np.clip(np.asarray(self.position, dtype=float), self.lb, self.ub)


def abcbin_binarize(c) -> np.ndarray:
    """``round(|x mod 2|) mod 2`` per coordinate with truncated mod and half-away rounding."""
    x = np.asarray(c.position if isinstance(c, ContinuousSource) else c, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("continuous coordinates must be finite")
    r = np.abs(np.fmod(x, 2.0))
    return (np.floor(r + 0.5) % 2).astype(BIT_DTYPE)


def abcbin_neighbor(selected: ContinuousSource, neighbor: ContinuousSource, rng: RngStream) -> ContinuousSource:
    x = selected.position
    if x.size != neighbor.position.size:
        raise InvalidInputError("selected and neighbor differ in dimension")
    v = x.copy()
    j = rng.integer(0, x.size - 1)
    phi = rng.uniform(-1.0, 1.0)
    v[j] = x[j] + phi * (x[j] - neighbor.position[j])
    return ContinuousSource(v, selected.lb, selected.ub)


def continuous_reinit(dimension: int, lb: float, ub: float, rng: RngStream) -> ContinuousSource:
    if not lb < ub:
        raise InvalidInputError(f"need lb < ub, got [{lb}, {ub}]")
    u = rng.random(dimension)
    return ContinuousSource(lb + u * (ub - lb), lb, ub)


# --- ibinABC ---------------------------------------------------------------

def ibinabc_dt(ctx: ScheduleContext, rng: RngStream) -> int:
    """Number of bits to touch: a random offset in [0, alpha] plus a decaying exponential."""
    r = rng.integer(0, ctx.alpha)
    decay = math.exp(-(ctx.t / ctx.t_max) * 0.1 * ctx.dimension)
    return max(1, min(ctx.dimension, math.floor(r + decay + 1)))


def ibinabc_theta(ctx: ScheduleContext, neighbor_fitness: float, selected_fitness: float) -> float:
    if neighbor_fitness >= selected_fitness:
        return 0.0
    # linear decay from q_start to q_end, written so both endpoints are exact
    frac = ctx.t / ctx.t_max
    return ctx.q_start * (1.0 - frac) + ctx.q_end * frac


def ibinabc_generate(
    selected,
    neighbor,
    selected_fit: float,
    neighbor_fit: float,
    ctx: ScheduleContext,
    rng: RngStream,
    theta_mode: str = "prob",
) -> np.ndarray:
    """Multi-bit XOR move with a fitness-aware copy probability.

    In ``prob`` mode each touched bit copies the neighbor unless a uniform draw
    falls below theta; ``threshold`` mode applies the literal rule
    ``state2 = theta >= 0.5`` to every touched bit.
    """
    x = np.asarray(selected, dtype=BIT_DTYPE)
    nb = np.asarray(neighbor, dtype=BIT_DTYPE)
    if x.size != nb.size:
        raise InvalidInputError("selected and neighbor differ in length")
    theta = ibinabc_theta(ctx, neighbor_fit, selected_fit)
    d = ibinabc_dt(ctx, rng)
    pos = rng.sample_without_replacement(x.size, d)
    u = rng.random(d)
    if theta_mode == "prob":
        state2 = u >= theta
    elif theta_mode == "threshold":
        state2 = theta >= 0.5
    else:
        raise InvalidInputError(f"unknown theta mode {theta_mode!r}")
    cand = x.copy()
    cand[pos] = _xor_vector(x[pos], nb[pos], state2)
    return cand
