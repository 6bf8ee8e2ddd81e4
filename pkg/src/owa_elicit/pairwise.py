"""Pairwise-comparison baseline: simulate judgments between supported
Pareto-optimal solutions and fit weights with a violation-minimizing LP.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import FeasibleSet, check_weights, owa_value, project_weights, sort_objectives
from .mp import MathProgram, SolverError, solve_program
from .owa import solve_linear

DEFAULT_MARGIN = 1e-6


@dataclass(frozen=True)
class Comparison:
    """One judged pair; `preferred` beat `other` in the context of (costs, feasible_set)."""

    preferred: NDArray[np.int_]
    other: NDArray[np.int_]
    cost_matrix: NDArray[np.float64]
    feasible_set: FeasibleSet


def generate_pairs(
    C: ArrayLike,
    fs: FeasibleSet,
    count: int,
    rng: np.random.Generator,
    max_redraws: int = 20,
) -> list[tuple[NDArray[np.int_], NDArray[np.int_]]]:
    """Draw pairs of supported Pareto-optimal solutions via random weighted-sum
    scalarizations. Identical pairs are redrawn a bounded number of times."""
    if count < 1:
        raise ValueError("count must be >= 1")
    C = np.asarray(C, dtype=float)
    K = C.shape[0]

    def draw_solution() -> NDArray[np.int_]:
        lam = rng.dirichlet(np.ones(K))
        return solve_linear(lam @ C, fs)

    pairs = []
    for _ in range(count):
        a, b = draw_solution(), draw_solution()
        attempts = 0
        while np.array_equal(a, b) and attempts < max_redraws:
            b = draw_solution()
            attempts += 1
        pairs.append((a, b))
    return pairs


def judge_pairs(
    pairs: Sequence[tuple[NDArray[np.int_], NDArray[np.int_]]],
    C: ArrayLike,
    fs: FeasibleSet,
    true_w: ArrayLike,
    eps: float,
    rng: np.random.Generator,
) -> list[Comparison]:
    """Judge each pair under an independently noise-perturbed copy of true_w;
    the solution with the lower OWA value wins (ties go to the first)."""
    from .experiments import perturb_weights

    true_w = check_weights(true_w, risk_averse=True)
    C = np.asarray(C, dtype=float)
    out = []
    for a, b in pairs:
        w = perturb_weights(true_w, eps, rng)
        va, vb = owa_value(w, C, a), owa_value(w, C, b)
        if va <= vb:
            out.append(Comparison(a, b, C, fs))
        else:
            out.append(Comparison(b, a, C, fs))
    return out


def elicit_ahn(comparisons: Sequence[Comparison], margin: float = DEFAULT_MARGIN) -> NDArray[np.float64]:
    """Fit risk-averse weights minimizing total violation of the judgments."""
    if not comparisons:
        raise ValueError("need at least one comparison")
    if margin <= 0:
        raise ValueError("margin must be positive")
    K = comparisons[0].cost_matrix.shape[0]

    prog = MathProgram()
    ws = [prog.add_var(f"w[{k}]", lb=0.0, ub=1.0) for k in range(K)]
    prog.add_constr({v: 1.0 for v in ws}, "=", 1.0)
    for k in range(K - 1):
        prog.add_constr({ws[k]: 1.0, ws[k + 1]: -1.0}, ">=", 0.0)

    objective: dict[str, float] = {}
    for idx, cmp in enumerate(comparisons):
        a_pref = sort_objectives(cmp.cost_matrix, cmp.preferred).values
        a_other = sort_objectives(cmp.cost_matrix, cmp.other).values
        slack = prog.add_var(f"delta[{idx}]", lb=0.0)
        coeffs = {ws[k]: float(a_other[k] - a_pref[k]) for k in range(K)}
        coeffs[slack] = 1.0
        prog.add_constr(coeffs, ">=", margin)
        objective[slack] = 1.0
    prog.set_objective(objective)

    outcome = solve_program(prog)
    if outcome.values is None:
        raise SolverError(f"violation LP failed with status {outcome.status}")
    return project_weights([outcome[v] for v in ws])
