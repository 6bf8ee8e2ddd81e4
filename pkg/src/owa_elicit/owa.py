"""Forward OWA optimization: minimize OWA over a feasible set, generate weights
with a prescribed orness, and test whether a weight vector explains an observation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import (
    Assignment,
    FeasibleSet,
    MinKnapsack,
    Observation,
    Selection,
    check_weights,
    enumerate_solutions,
    owa_value,
    project_weights,
)
from .mp import MathProgram, SolverError, solve_program

OPT_TOL = 1e-6


@dataclass
class OwaSolveReport:
    solution: NDArray[np.int_]
    value: float
    status: str


def add_feasible_set_constraints(prog: MathProgram, fs: FeasibleSet, prefix: str = "x") -> list[str]:
    """Declare binary decision variables for fs and add its constraints; return var names."""
    xs = [prog.add_var(f"{prefix}[{i}]", kind="binary") for i in range(fs.dim)]
    if isinstance(fs, Selection):
        prog.add_constr({x: 1.0 for x in xs}, "=", fs.p)
    elif isinstance(fs, Assignment):
        n = fs.n
        for i in range(n):
            prog.add_constr({xs[i * n + j]: 1.0 for j in range(n)}, "=", 1.0)
        for j in range(n):
            prog.add_constr({xs[i * n + j]: 1.0 for i in range(n)}, "=", 1.0)
    elif isinstance(fs, MinKnapsack):
        prog.add_constr({xs[i]: float(fs.item_weights[i]) for i in range(fs.n)}, ">=", fs.capacity)
    else:
        raise TypeError(f"unknown feasible set {fs!r}")
    return xs


def _extract_solution(outcome, xs: list[str]) -> NDArray[np.int_]:
    return np.array([round(outcome[x]) for x in xs], dtype=int)


def solve_owa(
    w: ArrayLike,
    C: ArrayLike,
    fs: FeasibleSet,
    time_limit: float | None = None,
) -> OwaSolveReport:
    """Minimize the OWA objective over fs via the dual MILP reformulation.

    Only valid for risk-averse (non-increasing) weight vectors.
    """
    w = check_weights(w, risk_averse=True)
    C = np.asarray(C, dtype=float)
    K = w.size
    if C.shape != (K, fs.dim):
        raise ValueError(f"cost matrix shape {C.shape}, expected ({K}, {fs.dim})")

    prog = MathProgram(time_limit=time_limit)
    alphas = [prog.add_var(f"alpha[{j}]", lb=-np.inf) for j in range(K)]
    betas = [prog.add_var(f"beta[{k}]", lb=-np.inf) for k in range(K)]
    xs = add_feasible_set_constraints(prog, fs)
    for j in range(K):
        for k in range(K):
            coeffs = {alphas[j]: 1.0, betas[k]: 1.0}
            for i in range(fs.dim):
                coef = -w[j] * C[k, i]
                if coef != 0.0:
                    coeffs[xs[i]] = coeffs.get(xs[i], 0.0) + coef
            prog.add_constr(coeffs, ">=", 0.0)
    prog.set_objective({v: 1.0 for v in alphas + betas})

    outcome = solve_program(prog)
    if outcome.status == "infeasible":
        raise SolverError("feasible set is empty")
    if outcome.values is None:
        raise SolverError(f"OWA solve failed with status {outcome.status}")
    x = _extract_solution(outcome, xs)
    return OwaSolveReport(solution=x, value=owa_value(w, C, x), status=outcome.status)


def enumerate_owa(w: ArrayLike, C: ArrayLike, fs: FeasibleSet, limit: int = 10**6) -> OwaSolveReport:
    """Exact OWA optimum by exhaustive enumeration; works for any w on the simplex."""
    w = check_weights(w, risk_averse=False)
    C = np.asarray(C, dtype=float)
    best_x, best_v = None, np.inf
    for x in enumerate_solutions(fs, limit=limit):
        v = owa_value(w, C, x)
        if v < best_v - 1e-15 or best_x is None:
            best_x, best_v = x, v
    if best_x is None:
        raise SolverError("feasible set is empty")
    return OwaSolveReport(solution=best_x, value=best_v, status="optimal")


def solve_linear(cost: ArrayLike, fs: FeasibleSet) -> NDArray[np.int_]:
    """Minimize a single linear cost vector over fs (weighted-sum scalarization)."""
    cost = np.asarray(cost, dtype=float)
    if cost.shape != (fs.dim,):
        raise ValueError(f"cost shape {cost.shape}, expected ({fs.dim},)")
    if isinstance(fs, Selection):
        order = np.argsort(cost, kind="stable")
        x = np.zeros(fs.n, dtype=int)
        x[order[: fs.p]] = 1
        return x
    if isinstance(fs, Assignment):
        from scipy.optimize import linear_sum_assignment

        rows, cols = linear_sum_assignment(cost.reshape(fs.n, fs.n))
        m = np.zeros((fs.n, fs.n), dtype=int)
        m[rows, cols] = 1
        return m.reshape(-1)
    prog = MathProgram()
    xs = add_feasible_set_constraints(prog, fs)
    prog.set_objective({xs[i]: float(cost[i]) for i in range(fs.dim)})
    outcome = solve_program(prog)
    if outcome.values is None:
        raise SolverError(f"linear solve failed with status {outcome.status}")
    return _extract_solution(outcome, xs)


def weights_from_orness(K: int, alpha: float) -> NDArray[np.float64]:
    """Risk-averse weight vector with the given orness, minimizing the maximum
    disparity between adjacent weights (minimax-disparity LP)."""
    if K < 2:
        raise ValueError("need K >= 2")
    if not 0.5 - 1e-12 <= alpha <= 1.0 + 1e-12:
        raise ValueError(f"orness must lie in [0.5, 1], got {alpha}")
    # unique extreme points of the risk-averse simplex at the orness endpoints
    if abs(alpha - 0.5) <= 1e-12:
        return np.full(K, 1.0 / K)
    if abs(alpha - 1.0) <= 1e-12:
        w = np.zeros(K)
        w[0] = 1.0
        return w

    prog = MathProgram()
    ws = [prog.add_var(f"w[{k}]", lb=0.0, ub=1.0) for k in range(K)]
    delta = prog.add_var("delta", lb=0.0)
    prog.add_constr({w: 1.0 for w in ws}, "=", 1.0)
    prog.add_constr({ws[k]: float(K - 1 - k) for k in range(K)}, "=", alpha * (K - 1))
    for k in range(K - 1):
        prog.add_constr({ws[k]: 1.0, ws[k + 1]: -1.0}, ">=", 0.0)
        prog.add_constr({ws[k]: 1.0, ws[k + 1]: -1.0, delta: -1.0}, "<=", 0.0)
        prog.add_constr({ws[k]: 1.0, ws[k + 1]: -1.0, delta: 1.0}, ">=", 0.0)
    prog.set_objective({delta: 1.0})
    outcome = solve_program(prog)
    if outcome.values is None:
        raise SolverError(f"orness LP failed with status {outcome.status}")
    return project_weights([outcome[w] for w in ws])


def explains(w: ArrayLike, obs: Observation) -> tuple[bool, float]:
    """Is the observed choice OWA-optimal under w? Returns (verdict, optimality gap)."""
    report = solve_owa(w, obs.cost_matrix, obs.feasible_set)
    gap = owa_value(w, obs.cost_matrix, obs.chosen) - report.value
    gap = max(gap, 0.0)
    return gap <= OPT_TOL, gap
