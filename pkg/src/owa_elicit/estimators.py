"""sklearn-style wrappers so the elicitation engines compose with pipelines
and parameter search: construct with hyperparameters, fit on observations,
predict OWA-optimal solutions for new decision situations.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .altpref import elicit_altpref
from .compact import elicit_compact
from .core import FeasibleSet, Observation
from .owa import explains, solve_owa
from .pairwise import Comparison, elicit_ahn
from .pref import ElicitOptions, elicit_pref


class _OwaElicitorMixin:
    """Shared predict/score surface once `weights_` is fitted."""

    def predict(self, cost_matrix, feasible_set: FeasibleSet):
        """OWA-optimal solution for a new decision situation under the fitted weights."""
        check_is_fitted(self, "weights_")
        return solve_owa(self.weights_, cost_matrix, feasible_set).solution

    def score(self, observations: Sequence[Observation], y=None) -> float:
        """Negative mean optimality gap of the observed choices under the fitted weights."""
        check_is_fitted(self, "weights_")
        gaps = [explains(self.weights_, obs)[1] for obs in observations]
        return -float(np.mean(gaps))


class PrefElicitor(_OwaElicitorMixin, BaseEstimator):
    """Distance-based elicitation (exact cut-generation engine)."""

    def __init__(
        self,
        norm: str = "one",
        cut_tol: float = 1e-6,
        max_iter: int = 200,
        time_limit: Optional[float] = None,
        infeasibility: str = "lexicographic",
        slack_weight: float = 1e6,
        tie_break: str = "none",
    ):
        self.norm = norm
        self.cut_tol = cut_tol
        self.max_iter = max_iter
        self.time_limit = time_limit
        self.infeasibility = infeasibility
        self.slack_weight = slack_weight
        self.tie_break = tie_break

    def fit(self, observations: Sequence[Observation], y=None):
        opts = ElicitOptions(
            norm=self.norm,
            cut_tol=self.cut_tol,
            max_iter=self.max_iter,
            time_limit=self.time_limit,
            infeasibility=self.infeasibility,
            slack_weight=self.slack_weight,
            tie_break=self.tie_break,
        )
        self.result_ = elicit_pref(observations, opts)
        self.weights_ = self.result_.weights
        return self


class AltPrefElicitor(_OwaElicitorMixin, BaseEstimator):
    """Solution-reproducing elicitation (mixed-binary engine)."""

    def __init__(self, cut_tol: float = 1e-6, time_limit: Optional[float] = 100.0, max_iter: int = 50):
        self.cut_tol = cut_tol
        self.time_limit = time_limit
        self.max_iter = max_iter

    def fit(self, observations: Sequence[Observation], y=None):
        self.result_ = elicit_altpref(
            observations,
            ElicitOptions(cut_tol=self.cut_tol),
            time_limit=self.time_limit,
            max_iter=self.max_iter,
        )
        self.weights_ = self.result_.weights
        return self


class CompactElicitor(_OwaElicitorMixin, BaseEstimator):
    """Single-LP heuristic elicitation (selection/assignment only)."""

    def __init__(self, tighten: bool = False, time_limit: Optional[float] = None):
        self.tighten = tighten
        self.time_limit = time_limit

    def fit(self, observations: Sequence[Observation], y=None):
        self.result_ = elicit_compact(
            observations, ElicitOptions(time_limit=self.time_limit), tighten=self.tighten
        )
        self.weights_ = self.result_.weights
        return self


class AhnElicitor(_OwaElicitorMixin, BaseEstimator):
    """Violation-minimizing baseline fitted on pairwise comparisons."""

    def __init__(self, margin: float = 1e-6):
        self.margin = margin

    def fit(self, comparisons: Sequence[Comparison], y=None):
        self.weights_ = elicit_ahn(comparisons, margin=self.margin)
        return self
