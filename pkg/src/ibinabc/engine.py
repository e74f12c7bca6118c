"""Colony loop shared by all variants: employed, onlooker and scout phases."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ibinabc import operators as ops
from ibinabc.core import (
    Colony,
    FoodSource,
    RngStream,
    bernoulli_init,
    fitness,
    spin,
)
from ibinabc.exceptions import ConfigurationError
from ibinabc.problems import HIT_TOLERANCE, Problem, as_problem

log = logging.getLogger(__name__)

VARIANTS = ("ibinabc", "binabc", "disabc", "abcbin")

# Population size and limit multiplier (limit = mult * N * D) per variant.
# N=None means "use the problem dimension".
VARIANT_DEFAULTS = {
    "ibinabc": {"n_sources": 20, "limit_mult": 2.0},
    "binabc": {"n_sources": 40, "limit_mult": 0.25},
    "disabc": {"n_sources": 40, "limit_mult": 2.5},
    "abcbin": {"n_sources": None, "limit_mult": 0.5},
}


@dataclass(frozen=True)
class EngineConfig:
    variant: str = "ibinabc"
    n_sources: int = 20
    budget: int = 80_000
    t_max: int | None = None
    limit: int | None = None
    limit_mult: float = 2.0
    q_start: float = 0.3
    q_end: float = 0.1
    alpha: int = 2
    theta_mode: str = "prob"
    lb: float = ops.ABCBIN_BOUNDS[0]
    ub: float = ops.ABCBIN_BOUNDS[1]
    seed: int = 0

    @classmethod
    def for_variant(cls, variant: str, dimension: int, **overrides) -> "EngineConfig":
        """Config with the variant's default population and limit, then ``overrides``.

        Overrides whose value is ``None`` are ignored.
        """
        if variant not in VARIANT_DEFAULTS:
            raise ConfigurationError(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")
        params = dict(VARIANT_DEFAULTS[variant])
        if params["n_sources"] is None:
            params["n_sources"] = max(2, dimension)
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(variant=variant, **params)

    def resolved_limit(self, dimension: int) -> int:
        if self.limit is not None:
            return self.limit
        return max(1, int(round(self.limit_mult * self.n_sources * dimension)))

    def resolved_t_max(self) -> int:
        if self.t_max is not None:
            return self.t_max
        return max(1, self.budget // (2 * self.n_sources))

    def validate(self, dimension: int) -> None:
        if self.variant not in VARIANTS:
            raise ConfigurationError(f"unknown variant {self.variant!r}; choose from {', '.join(VARIANTS)}")
        if self.n_sources < 2:
            raise ConfigurationError("population size must be at least 2")
        if self.budget < self.n_sources:
            raise ConfigurationError(
                f"budget {self.budget} cannot cover the {self.n_sources} initial evaluations"
            )
        if self.resolved_limit(dimension) < 1:
            raise ConfigurationError("limit must be at least 1")
        if self.resolved_t_max() < 1:
            raise ConfigurationError("t_max must be at least 1")
        if self.theta_mode not in ops.THETA_MODES:
            raise ConfigurationError(f"theta mode must be one of {ops.THETA_MODES}")
        if self.variant == "ibinabc":
            if not 0 < self.q_end <= self.q_start < 1:
                raise ConfigurationError("need 0 < q_end <= q_start < 1")
            if self.alpha < 0:
                raise ConfigurationError("alpha must be non-negative")
        if self.variant == "abcbin" and not self.lb < self.ub:
            raise ConfigurationError("need lb < ub")


@dataclass
class RunResult:
    best_cost: float
    best_position: np.ndarray
    evals_used: int
    iterations: int
    hit: bool | None
    trace: list[tuple[int, float]] = field(default_factory=list)


def greedy_replace(source: FoodSource, candidate_position, candidate_cost: float, real_position=None) -> FoodSource:
    """Keep the fitter of source and candidate; a tie keeps the source."""
    if fitness(candidate_cost) > source.fitness:
        source.replace(candidate_position, candidate_cost, real_position)
    else:
        source.trial += 1
    return source


def _random_source(problem: Problem, config: EngineConfig, rng: RngStream) -> FoodSource:
    if config.variant == "abcbin":
        real = ops.continuous_reinit(problem.dimension, config.lb, config.ub, rng)
        bits = problem.repair(ops.abcbin_binarize(real))
        return FoodSource(bits, problem.evaluate(bits), real_position=real.position)
    bits = problem.repair(bernoulli_init(problem.dimension, rng))
    return FoodSource(bits, problem.evaluate(bits))


def scout_phase(colony: Colony, limit: int, problem: Problem, rng: RngStream, config: EngineConfig | None = None) -> Colony:
    """Replace at most one exhausted source (highest trial, lowest index) with a random one."""
    trials = [s.trial for s in colony.sources]
    worst = int(np.argmax(trials))
    if trials[worst] > limit:
        fresh = _random_source(problem, config or EngineConfig(), rng)
        colony.evals += 1
        colony.sources[worst] = fresh
        colony.memorize(fresh.position, fresh.cost)
    return colony


class _Search:
    def __init__(self, problem: Problem, config: EngineConfig):
        self.problem = problem
        self.config = config
        self.dimension = problem.dimension
        self.rng = RngStream(config.seed)
        self.limit = config.resolved_limit(self.dimension)
        self.t_max = config.resolved_t_max()
        self.trace: list[tuple[int, float]] = []
        self.ctx: ops.ScheduleContext | None = None

    def initialize(self) -> Colony:
        sources = [_random_source(self.problem, self.config, self.rng) for _ in range(self.config.n_sources)]
        best = min(sources, key=lambda s: s.cost)
        colony = Colony(sources, best.position.copy(), best.cost, evals=len(sources))
        self.trace.append((colony.evals, colony.best_cost))
        self.fit = colony.fitnesses()
        return colony

    def candidate(self, colony: Colony, i: int, k: int):
        src, nb = colony.sources[i], colony.sources[k]
        variant = self.config.variant
        if variant == "ibinabc":
            return ops.ibinabc_generate(
                src.position, nb.position, src.fitness, nb.fitness, self.ctx, self.rng, self.config.theta_mode
            ), None
        if variant == "binabc":
            return ops.binabc_generate(src.position, nb.position, self.rng), None
        if variant == "disabc":
            return ops.disabc_generate(src.position, nb.position, self.rng), None
        lb, ub = self.config.lb, self.config.ub
        moved = ops.abcbin_neighbor(
            ops.ContinuousSource(src.real_position, lb, ub), ops.ContinuousSource(nb.real_position, lb, ub), self.rng
        )
        return ops.abcbin_binarize(moved), moved.position

    def attempt(self, colony: Colony, i: int) -> None:
        # roulette over raw fitness is the same wheel as over normalized probabilities
        weights = self.fit.copy()
        weights[i] = 0.0
        k = spin(weights, self.rng)
        bits, real = self.candidate(colony, i, k)
        bits = self.problem.repair(bits)
        cost = self.problem.evaluate(bits)
        colony.evals += 1
        greedy_replace(colony.sources[i], bits, cost, real)
        self.fit[i] = colony.sources[i].fitness
        if colony.memorize(bits, cost):
            self.trace.append((colony.evals, colony.best_cost))

    def run(self) -> RunResult:
        colony = self.initialize()
        n, budget = colony.size, self.config.budget
        while colony.t < self.t_max and colony.evals < budget:
            if self.config.variant == "ibinabc":
                c = self.config
                self.ctx = ops.ScheduleContext(colony.t, self.t_max, self.dimension, c.q_start, c.q_end, c.alpha)
            for i in range(n):
                if colony.evals >= budget:
                    break
                self.attempt(colony, i)
            for _ in range(n):
                if colony.evals >= budget:
                    break
                i = spin(self.fit, self.rng)
                self.attempt(colony, i)
            if colony.evals < budget:
                before = colony.best_cost
                scout_phase(colony, self.limit, self.problem, self.rng, self.config)
                self.fit = colony.fitnesses()
                if colony.best_cost < before:
                    self.trace.append((colony.evals, colony.best_cost))
            colony.t += 1
            self.trace.append((colony.evals, colony.best_cost))
        self.colony = colony
        opt = self.problem.optimum
        hit = None if opt is None else abs(colony.best_cost - opt) <= HIT_TOLERANCE
        return RunResult(
            best_cost=colony.best_cost,
            best_position=colony.best_position.copy(),
            evals_used=colony.evals,
            iterations=colony.t,
            hit=hit,
            trace=self.trace,
        )


def run(problem, config: EngineConfig) -> RunResult:
    """Optimize ``problem`` (a ``Problem`` or ``UflpInstance``) with one seeded colony."""
    problem = as_problem(problem)
    if problem.dimension < 1:
        raise ConfigurationError("problem dimension must be at least 1")
    config.validate(problem.dimension)
    search = _Search(problem, config)
    result = search.run()
    log.debug(
        "%s/%s seed=%d best=%.2f evals=%d", problem.name, config.variant, config.seed, result.best_cost, result.evals_used
    )
    return result


__all__ = ["EngineConfig", "RunResult", "VARIANTS", "VARIANT_DEFAULTS", "greedy_replace", "run", "scout_phase"]
