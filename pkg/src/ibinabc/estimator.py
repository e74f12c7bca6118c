"""scikit-learn flavoured wrapper so a colony can be configured, cloned and grid-searched."""

from __future__ import annotations

from pathlib import Path

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ibinabc.engine import EngineConfig, run
from ibinabc.problems import Problem, as_problem, load_instance


class BinaryABC(BaseEstimator):
    """Binary artificial bee colony minimizer.

    ``fit`` takes the problem itself (a ``Problem``, a ``UflpInstance``, an
    instance file path or registry name) in place of a data matrix. Unset
    ``n_sources`` and ``limit_mult`` fall back to the variant's defaults.

    Attributes set by ``fit``: ``best_position_``, ``best_cost_``,
    ``n_evals_``, ``n_iter_``, ``trace_`` and ``hit_``.
    """

    def __init__(
        self,
        variant="ibinabc",
        n_sources=None,
        budget=80_000,
        max_iter=None,
        limit=None,
        limit_mult=None,
        q_start=0.3,
        q_end=0.1,
        alpha=2,
        theta_mode="prob",
        random_state=0,
    ):
        self.variant = variant
        self.n_sources = n_sources
        self.budget = budget
        self.max_iter = max_iter
        self.limit = limit
        self.limit_mult = limit_mult
        self.q_start = q_start
        self.q_end = q_end
        self.alpha = alpha
        self.theta_mode = theta_mode
        self.random_state = random_state

    def _problem(self, X) -> Problem:
        if isinstance(X, (str, Path)):
            X = load_instance(X)
        return as_problem(X)

    def fit(self, X, y=None):
        problem = self._problem(X)
        config = EngineConfig.for_variant(
            self.variant,
            problem.dimension,
            n_sources=self.n_sources,
            budget=self.budget,
            t_max=self.max_iter,
            limit=self.limit,
            limit_mult=self.limit_mult,
            q_start=self.q_start,
            q_end=self.q_end,
            alpha=self.alpha,
            theta_mode=self.theta_mode,
            seed=int(self.random_state or 0),
        )
        res = run(problem, config)
        self.best_position_ = res.best_position
        self.best_cost_ = res.best_cost
        self.n_evals_ = res.evals_used
        self.n_iter_ = res.iterations
        self.trace_ = res.trace
        self.hit_ = res.hit
        return self

    def score(self, X=None, y=None) -> float:
        """Negated best cost, so larger is better as sklearn expects."""
        check_is_fitted(self, "best_cost_")
        if X is None:
            return -self.best_cost_
        return -self._problem(X).evaluate(self.best_position_)


__all__ = ["BinaryABC"]
