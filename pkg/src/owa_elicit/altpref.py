"""Elicitation model (Pref'): pick weights whose induced optimal solutions stay
as close as possible (in Hamming distance) to the observed choices. Mixed-binary
program with the same cut-generation loop as (Pref).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .core import Observation, hamming, owa_value, project_weights, sort_objectives
from .mp import MathProgram, SolverError, solve_program
from .owa import add_feasible_set_constraints, solve_owa
from .pref import ElicitOptions, initial_pools


@dataclass
class AltElicitationResult:
    weights: NDArray[np.float64]
    solutions: list[NDArray[np.int_]]
    total_hamming: int
    pool_sizes: list[int]
    iterations: int
    wall_time: float
    status: str = "optimal"


DEFAULT_TIME_LIMIT = 100.0  # seconds per MILP call
DEFAULT_MAX_ITER = 50


def _solve_milp(
    observations: Sequence[Observation],
    pools: Sequence[Sequence[NDArray[np.int_]]],
    opts: ElicitOptions,
    time_limit: Optional[float],
    hamming_cap: Optional[float] = None,
):
    S = len(observations)
    K = observations[0].num_objectives
    prog = MathProgram(time_limit=time_limit)

    ws = [prog.add_var(f"w[{k}]", lb=0.0, ub=1.0) for k in range(K)]
    prog.add_constr({v: 1.0 for v in ws}, "=", 1.0)
    for k in range(K - 1):
        prog.add_constr({ws[k]: 1.0, ws[k + 1]: -1.0}, ">=", 0.0)

    objective: dict[str, float] = {}
    obj_const = 0.0
    ys_all: list[list[str]] = []
    for s, obs in enumerate(observations):
        n = obs.feasible_set.dim
        C = obs.cost_matrix
        ys = add_feasible_set_constraints(prog, obs.feasible_set, prefix=f"y{s}")
        ys_all.append(ys)
        alphas = [prog.add_var(f"a{s}[{j}]", lb=-np.inf) for j in range(K)]
        betas = [prog.add_var(f"b{s}[{k}]", lb=-np.inf) for k in range(K)]

        # tau[j][i] linearizes w_j * y_i; exact since y is binary
        taus = [[prog.add_var(f"t{s}[{j}][{i}]", lb=0.0) for i in range(n)] for j in range(K)]
        for j in range(K):
            for i in range(n):
                prog.add_constr({taus[j][i]: 1.0, ws[j]: -1.0, ys[i]: -1.0}, ">=", -1.0)
                prog.add_constr({taus[j][i]: 1.0, ws[j]: -1.0}, "<=", 0.0)
                prog.add_constr({taus[j][i]: 1.0, ys[i]: -1.0}, "<=", 0.0)

        for j in range(K):
            for k in range(K):
                coeffs = {alphas[j]: 1.0, betas[k]: 1.0}
                for i in range(n):
                    if C[k, i] != 0.0:
                        coeffs[taus[j][i]] = -float(C[k, i])
                prog.add_constr(coeffs, ">=", 0.0)

        for x in pools[s]:
            a_vals = sort_objectives(C, x).values
            coeffs: dict[str, float] = {}
            for v in alphas + betas:
                coeffs[v] = 1.0
            for k in range(K):
                coeffs[ws[k]] = coeffs.get(ws[k], 0.0) - float(a_vals[k])
            prog.add_constr(coeffs, "<=", 0.0)

        # Hamming distance to the observed choice
        for i in range(n):
            if obs.chosen[i] == 1:
                objective[ys[i]] = objective.get(ys[i], 0.0) - 1.0
                obj_const += 1.0
            else:
                objective[ys[i]] = objective.get(ys[i], 0.0) + 1.0

    if hamming_cap is not None:
        # cap the distance and prefer the most risk-averse (highest-orness)
        # explanation among the remaining ties
        prog.add_constr(objective, "<=", hamming_cap - obj_const)
        prog.set_objective({ws[k]: -float(K - 1 - k) for k in range(K)})
    else:
        prog.set_objective(objective)
    outcome = solve_program(prog)
    if outcome.status == "infeasible":
        raise SolverError("restricted (Pref') program is infeasible")
    if outcome.values is None:
        raise SolverError(f"(Pref') solve failed with status {outcome.status}")

    w = project_weights([outcome[v] for v in ws])
    sols = [np.array([round(outcome[y]) for y in ys], dtype=int) for ys in ys_all]
    hit_limit = outcome.status == "time_limit_with_incumbent"
    if hamming_cap is not None:
        total = sum(
            hamming(sols[s], obs.chosen) for s, obs in enumerate(observations)
        )
        return w, sols, float(total), hit_limit
    return w, sols, float(outcome.objective) + obj_const, hit_limit


def elicit_altpref(
    observations: Sequence[Observation],
    opts: ElicitOptions = ElicitOptions(),
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
    max_iter: int = DEFAULT_MAX_ITER,
    refine: bool = True,
) -> AltElicitationResult:
    """Fit weights that reproduce the observed solutions as closely as possible.

    With `refine` (default), a second lexicographic pass picks the most
    risk-averse weight vector among the distance-optimal ones, pinning a
    deterministic representative when the optimum is not unique.
    """
    if not observations:
        raise ValueError("need at least one observation")
    K = observations[0].num_objectives
    if any(obs.num_objectives != K for obs in observations):
        raise ValueError("all observations must share the same number of objectives")

    start = time.perf_counter()
    pools = initial_pools(observations)
    seen = [set(tuple(x) for x in pool) for pool in pools]
    status = "max_iterations"
    w, sols = None, []

    iteration = 0
    hamming_cap: Optional[float] = None
    while iteration < max_iter:
        iteration += 1
        w, sols, obj, hit_limit = _solve_milp(
            observations, pools, opts, time_limit, hamming_cap=hamming_cap
        )
        if hit_limit:
            status = "time_limit_incumbent"
            break
        cuts_added = 0
        for s, obs in enumerate(observations):
            report = solve_owa(w, obs.cost_matrix, obs.feasible_set, time_limit=time_limit)
            y_val = owa_value(w, obs.cost_matrix, sols[s])
            if y_val - report.value > opts.cut_tol:
                key = tuple(report.solution)
                if key not in seen[s]:
                    seen[s].add(key)
                    pools[s].append(report.solution)
                    cuts_added += 1
        if opts.progress is not None:
            total = sum(hamming(sols[s], obs.chosen) for s, obs in enumerate(observations))
            opts.progress(iteration, float(total), cuts_added)
        if cuts_added == 0:
            if refine and hamming_cap is None:
                # distance optimum proven; switch to the tie-breaking pass
                hamming_cap = obj + 0.5
                continue
            status = "optimal"
            break

    if w is None:
        raise SolverError("no (Pref') solve completed")
    total = sum(hamming(sols[s], obs.chosen) for s, obs in enumerate(observations))
    return AltElicitationResult(
        weights=w,
        solutions=sols,
        total_hamming=int(total),
        pool_sizes=[len(p) for p in pools],
        iterations=iteration,
        wall_time=time.perf_counter() - start,
        status=status,
    )
