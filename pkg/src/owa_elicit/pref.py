"""Elicitation model (Pref): find a risk-averse weight vector at minimum total
distance to the sets of vectors explaining each observation, via alternating
master LPs and OWA separation subproblems.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .core import Observation, owa_value, project_weights, sort_objectives, vector_distance
from .mp import MathProgram, SolverError, solve_program
from .owa import solve_owa

ProgressHook = Callable[[int, float, int], None]  # (iteration, objective, cuts added)


@dataclass
class ElicitOptions:
    norm: Literal["one", "inf"] = "one"
    cut_tol: float = 1e-6
    max_iter: int = 200
    time_limit: Optional[float] = None  # per MILP/LP solve
    infeasibility: Literal["lexicographic", "weighted_slack"] = "lexicographic"
    slack_weight: float = 1e6
    # refinement among alternate master optima; "none" keeps the raw solver vertex,
    # "balanced" returns the midpoint of the min- and max-orness optima (a
    # relative-interior point of the optimal face, independent of vertex choice)
    tie_break: Literal["none", "min_orness", "max_orness", "balanced"] = "none"
    progress: Optional[ProgressHook] = None

    def __post_init__(self):
        if self.cut_tol <= 0:
            raise ValueError("cut_tol must be positive")
        if self.norm not in ("one", "inf"):
            raise ValueError(f"master norm must be 'one' or 'inf', got {self.norm!r}")


@dataclass
class ElicitationResult:
    weights: NDArray[np.float64]
    observation_weights: list[NDArray[np.float64]]
    objective: float
    infeas: list[float]
    pool_sizes: list[int]
    iterations: int
    wall_time: float
    solutions: list[NDArray[np.int_]] = field(default_factory=list)
    status: str = "optimal"


class MasterInfeasibleError(SolverError):
    """Some observation admits no explaining risk-averse vector."""


def _sorted_values(obs: Observation, x) -> NDArray[np.float64]:
    return sort_objectives(obs.cost_matrix, x).values


def initial_pools(observations: Sequence[Observation]) -> list[list[NDArray[np.int_]]]:
    """Seed each pool with its own choice plus dimension-compatible peer choices."""
    pools: list[list[NDArray[np.int_]]] = []
    for s, obs in enumerate(observations):
        pool = [np.asarray(obs.chosen)]
        seen = {tuple(obs.chosen)}
        for t, other in enumerate(observations):
            if t == s or other.feasible_set != obs.feasible_set:
                continue
            key = tuple(other.chosen)
            if key not in seen:
                seen.add(key)
                pool.append(np.asarray(other.chosen))
        pools.append(pool)
    return pools


def solve_master(
    observations: Sequence[Observation],
    pools: Sequence[Sequence[NDArray[np.int_]]],
    slacks: Optional[Sequence[float]] = None,
    opts: ElicitOptions = ElicitOptions(),
    slack_variables: bool = False,
    refine: Optional[tuple[str, float]] = None,
):
    """Solve (Pref) restricted to the given cut pools.

    Returns (w, [w^s], objective, [slack values]). Raises MasterInfeasibleError if
    no risk-averse vector satisfies the pooled constraints (and no slack is allowed).
    With `refine=(sense, cap)` the distance objective is capped and the orness of w
    is optimized instead (sense "min" or "max"): a lexicographic refinement among
    alternate optima.
    """
    S = len(observations)
    K = observations[0].num_objectives
    prog = MathProgram(time_limit=opts.time_limit)

    def add_simplex(prefix: str) -> list[str]:
        vs = [prog.add_var(f"{prefix}[{k}]", lb=0.0, ub=1.0) for k in range(K)]
        prog.add_constr({v: 1.0 for v in vs}, "=", 1.0)
        for k in range(K - 1):
            prog.add_constr({vs[k]: 1.0, vs[k + 1]: -1.0}, ">=", 0.0)
        return vs

    ws = add_simplex("w")
    obs_ws = [add_simplex(f"w{s}") for s in range(S)]

    slack_vars: list[Optional[str]] = [None] * S
    if slack_variables:
        slack_vars = [prog.add_var(f"infeas[{s}]", lb=0.0) for s in range(S)]

    for s, obs in enumerate(observations):
        a_chosen = _sorted_values(obs, obs.chosen)
        fixed = float(slacks[s]) if slacks is not None else 0.0
        for x in pools[s]:
            a_other = _sorted_values(obs, x)
            diff = a_chosen - a_other
            if np.all(np.abs(diff) < 1e-15):
                continue
            coeffs = {obs_ws[s][k]: float(diff[k]) for k in range(K)}
            if slack_vars[s] is not None:
                coeffs[slack_vars[s]] = -1.0
            prog.add_constr(coeffs, "<=", fixed)

    objective: dict[str, float] = {}
    if opts.norm == "one":
        for s in range(S):
            for k in range(K):
                d = prog.add_var(f"d[{s}][{k}]", lb=0.0)
                prog.add_constr({ws[k]: 1.0, obs_ws[s][k]: -1.0, d: -1.0}, "<=", 0.0)
                prog.add_constr({ws[k]: 1.0, obs_ws[s][k]: -1.0, d: 1.0}, ">=", 0.0)
                objective[d] = 1.0
    else:
        for s in range(S):
            d = prog.add_var(f"d[{s}]", lb=0.0)
            for k in range(K):
                prog.add_constr({ws[k]: 1.0, obs_ws[s][k]: -1.0, d: -1.0}, "<=", 0.0)
                prog.add_constr({ws[k]: 1.0, obs_ws[s][k]: -1.0, d: 1.0}, ">=", 0.0)
            objective[d] = 1.0
    for sv in slack_vars:
        if sv is not None:
            objective[sv] = opts.slack_weight

    if refine is not None:
        sense, cap = refine
        prog.add_constr(dict(objective), "<=", cap)
        sign = 1.0 if sense == "min" else -1.0
        prog.set_objective({ws[k]: sign * (K - 1 - k) for k in range(K)})
    else:
        prog.set_objective(objective)

    outcome = solve_program(prog)
    if outcome.status == "infeasible":
        raise MasterInfeasibleError("restricted master is infeasible")
    if outcome.values is None:
        raise SolverError(f"master solve failed with status {outcome.status}")

    w = np.array([outcome[v] for v in ws])
    obs_w = [np.array([outcome[v] for v in vs]) for vs in obs_ws]
    dist = sum(vector_distance(w, obs_w[s], opts.norm) for s in range(S))
    out_slacks = [
        float(outcome[sv]) if sv is not None else (float(slacks[s]) if slacks is not None else 0.0)
        for s, sv in enumerate(slack_vars)
    ]
    return w, obs_w, dist, out_slacks


def compute_infeas(obs: Observation, opts: ElicitOptions = ElicitOptions()) -> float:
    """Smallest achievable violation for one observation: zero iff some
    risk-averse vector makes the observed choice OWA-optimal."""
    K = obs.num_objectives
    a_chosen = _sorted_values(obs, obs.chosen)
    pool: list[NDArray[np.int_]] = [np.asarray(obs.chosen)]
    seen = {tuple(obs.chosen)}

    for _ in range(opts.max_iter):
        prog = MathProgram(time_limit=opts.time_limit)
        ws = [prog.add_var(f"w[{k}]", lb=0.0, ub=1.0) for k in range(K)]
        t = prog.add_var("t", lb=0.0)
        prog.add_constr({v: 1.0 for v in ws}, "=", 1.0)
        for k in range(K - 1):
            prog.add_constr({ws[k]: 1.0, ws[k + 1]: -1.0}, ">=", 0.0)
        for x in pool:
            diff = a_chosen - _sorted_values(obs, x)
            coeffs = {ws[k]: float(diff[k]) for k in range(K)}
            coeffs[t] = -1.0
            prog.add_constr(coeffs, "<=", 0.0)
        prog.set_objective({t: 1.0})
        outcome = solve_program(prog)
        if outcome.values is None:
            raise SolverError(f"infeasibility LP failed with status {outcome.status}")
        w = project_weights([outcome[v] for v in ws])
        t_val = float(outcome["t"])

        report = solve_owa(w, obs.cost_matrix, obs.feasible_set, time_limit=opts.time_limit)
        gap = owa_value(w, obs.cost_matrix, obs.chosen) - report.value
        if gap <= t_val + opts.cut_tol:
            return t_val
        key = tuple(report.solution)
        if key in seen:
            return t_val
        seen.add(key)
        pool.append(report.solution)
    return t_val


def elicit_pref(
    observations: Sequence[Observation],
    opts: ElicitOptions = ElicitOptions(),
) -> ElicitationResult:
    """Fit a risk-averse weight vector to the observations via model (Pref)."""
    if not observations:
        raise ValueError("need at least one observation")
    K = observations[0].num_objectives
    if any(obs.num_objectives != K for obs in observations):
        raise ValueError("all observations must share the same number of objectives")

    start = time.perf_counter()
    S = len(observations)
    pools = initial_pools(observations)
    seen = [set(tuple(x) for x in pool) for pool in pools]
    slacks: Optional[list[float]] = None
    use_slack_vars = False
    status = "max_iterations"
    w = None
    obs_w: list[NDArray[np.float64]] = []
    dist = float("nan")
    out_slacks = [0.0] * S
    iteration = 0

    while iteration < opts.max_iter:
        iteration += 1
        try:
            w, obs_w, dist, out_slacks = solve_master(
                observations, pools, slacks=slacks, opts=opts, slack_variables=use_slack_vars
            )
        except MasterInfeasibleError:
            if opts.infeasibility == "weighted_slack":
                use_slack_vars = True
            else:
                slacks = [compute_infeas(obs, opts) for obs in observations]
            w, obs_w, dist, out_slacks = solve_master(
                observations, pools, slacks=slacks, opts=opts, slack_variables=use_slack_vars
            )

        cuts_added = 0
        for s, obs in enumerate(observations):
            ws_proj = project_weights(obs_w[s])
            report = solve_owa(ws_proj, obs.cost_matrix, obs.feasible_set, time_limit=opts.time_limit)
            chosen_val = owa_value(ws_proj, obs.cost_matrix, obs.chosen)
            if chosen_val - out_slacks[s] - report.value > opts.cut_tol:
                key = tuple(report.solution)
                if key not in seen[s]:
                    seen[s].add(key)
                    pools[s].append(report.solution)
                    cuts_added += 1
        if opts.progress is not None:
            opts.progress(iteration, dist, cuts_added)
        if cuts_added == 0:
            status = "optimal"
            break

    if w is None:
        raise SolverError("no master solve completed")

    if opts.tie_break != "none" and status == "optimal":
        cap = dist + opts.cut_tol
        if opts.tie_break in ("min_orness", "max_orness"):
            sense = "min" if opts.tie_break == "min_orness" else "max"
            w, obs_w, dist, out_slacks = solve_master(
                observations, pools, slacks=slacks, opts=opts,
                slack_variables=use_slack_vars, refine=(sense, cap),
            )
        else:  # balanced: midpoint of the two orness-extreme optima
            lo_w, lo_obs_w, _, lo_slacks = solve_master(
                observations, pools, slacks=slacks, opts=opts,
                slack_variables=use_slack_vars, refine=("min", cap),
            )
            hi_w, hi_obs_w, _, hi_slacks = solve_master(
                observations, pools, slacks=slacks, opts=opts,
                slack_variables=use_slack_vars, refine=("max", cap),
            )
            w = 0.5 * (lo_w + hi_w)
            obs_w = [0.5 * (a + b) for a, b in zip(lo_obs_w, hi_obs_w)]
            dist = sum(vector_distance(w, obs_w[s], opts.norm) for s in range(S))
            out_slacks = [0.5 * (a + b) for a, b in zip(lo_slacks, hi_slacks)]

    w = project_weights(w)
    obs_w = [project_weights(v) for v in obs_w]
    solutions = [
        solve_owa(w, obs.cost_matrix, obs.feasible_set, time_limit=opts.time_limit).solution
        for obs in observations
    ]
    return ElicitationResult(
        weights=w,
        observation_weights=obs_w,
        objective=sum(vector_distance(w, obs_w[s], opts.norm) for s in range(S)),
        infeas=list(out_slacks),
        pool_sizes=[len(p) for p in pools],
        iterations=iteration,
        wall_time=time.perf_counter() - start,
        solutions=solutions,
        status=status,
    )


def distance_to_explaining_set(
    w: NDArray[np.float64],
    obs: Observation,
    norm: Literal["one", "inf"] = "one",
    opts: ElicitOptions = ElicitOptions(),
) -> float:
    """Distance from a fixed w to the set of vectors explaining obs, by cut generation.

    Infinite if the observation cannot be explained by any risk-averse vector.
    """
    K = obs.num_objectives
    a_chosen = _sorted_values(obs, obs.chosen)
    pool: list[NDArray[np.int_]] = [np.asarray(obs.chosen)]
    seen = {tuple(obs.chosen)}
    w = np.asarray(w, dtype=float)

    for _ in range(opts.max_iter):
        prog = MathProgram(time_limit=opts.time_limit)
        vs = [prog.add_var(f"v[{k}]", lb=0.0, ub=1.0) for k in range(K)]
        prog.add_constr({v: 1.0 for v in vs}, "=", 1.0)
        for k in range(K - 1):
            prog.add_constr({vs[k]: 1.0, vs[k + 1]: -1.0}, ">=", 0.0)
        for x in pool:
            diff = a_chosen - _sorted_values(obs, x)
            prog.add_constr({vs[k]: float(diff[k]) for k in range(K)}, "<=", 0.0)
        objective: dict[str, float] = {}
        if norm == "one":
            for k in range(K):
                d = prog.add_var(f"d[{k}]", lb=0.0)
                prog.add_constr({vs[k]: 1.0, d: 1.0}, ">=", float(w[k]))
                prog.add_constr({vs[k]: 1.0, d: -1.0}, "<=", float(w[k]))
                objective[d] = 1.0
        else:
            d = prog.add_var("d", lb=0.0)
            for k in range(K):
                prog.add_constr({vs[k]: 1.0, d: 1.0}, ">=", float(w[k]))
                prog.add_constr({vs[k]: 1.0, d: -1.0}, "<=", float(w[k]))
            objective[d] = 1.0
        prog.set_objective(objective)
        outcome = solve_program(prog)
        if outcome.status == "infeasible":
            return float("inf")
        if outcome.values is None:
            raise SolverError(f"distance LP failed with status {outcome.status}")
        candidate = project_weights([outcome[v] for v in vs])

        report = solve_owa(candidate, obs.cost_matrix, obs.feasible_set, time_limit=opts.time_limit)
        gap = owa_value(candidate, obs.cost_matrix, obs.chosen) - report.value
        if gap <= opts.cut_tol:
            return float(outcome.objective)
        key = tuple(report.solution)
        if key in seen:
            return float(outcome.objective)
        seen.add(key)
        pool.append(report.solution)
    return float(outcome.objective)
