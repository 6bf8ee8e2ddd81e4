"""HEURISTIC single-shot elicitation: replaces cut generation with LP duality on
a polyhedral description of the feasible set, approximating the bilinear terms
with McCormick envelope cuts. Supports selection and assignment problems only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .core import Assignment, FeasibleSet, MinKnapsack, Observation, Selection, project_weights, sort_objectives, vector_distance
from .mp import MathProgram, SolverError, solve_program
from .pref import ElicitationResult, ElicitOptions


@dataclass(frozen=True)
class PolyhedralEncoding:
    """X_LP = {x >= 0 : A x >= b}; `integral` flags an integral-vertex relaxation."""

    A: NDArray[np.float64]
    b: NDArray[np.float64]
    integral: bool = True


def encode_polyhedron(fs: FeasibleSet) -> PolyhedralEncoding:
    """LP description of the feasible set in >= form, including x <= 1 rows."""
    if isinstance(fs, Selection):
        n = fs.n
        rows = [np.ones(n), -np.ones(n)]
        rhs = [float(fs.p), -float(fs.p)]
        for i in range(n):
            e = np.zeros(n)
            e[i] = -1.0
            rows.append(e)
            rhs.append(-1.0)
        return PolyhedralEncoding(np.array(rows), np.array(rhs))
    if isinstance(fs, Assignment):
        n = fs.n
        dim = n * n
        rows, rhs = [], []
        for i in range(n):
            r = np.zeros(dim)
            r[i * n : (i + 1) * n] = 1.0
            rows.append(r)
            rhs.append(1.0)
            rows.append(-r)
            rhs.append(-1.0)
        for j in range(n):
            r = np.zeros(dim)
            r[j::n] = 1.0
            rows.append(r)
            rhs.append(1.0)
            rows.append(-r)
            rhs.append(-1.0)
        for i in range(dim):
            e = np.zeros(dim)
            e[i] = -1.0
            rows.append(e)
            rhs.append(-1.0)
        return PolyhedralEncoding(np.array(rows), np.array(rhs))
    if isinstance(fs, MinKnapsack):
        raise ValueError("min-knapsack has no integral LP relaxation; compact heuristic unsupported")
    raise TypeError(f"unknown feasible set {fs!r}")


def elicit_compact(
    observations: Sequence[Observation],
    opts: ElicitOptions = ElicitOptions(),
    tighten: bool = False,
) -> ElicitationResult:
    """Heuristic compact LP elicitation.

    `tighten` adds the lower McCormick bounds tau >= w + pi - 1, which are not
    part of the base model.
    """
    if not observations:
        raise ValueError("need at least one observation")
    K = observations[0].num_objectives
    if any(obs.num_objectives != K for obs in observations):
        raise ValueError("all observations must share the same number of objectives")

    start = time.perf_counter()
    S = len(observations)
    encodings = [encode_polyhedron(obs.feasible_set) for obs in observations]

    prog = MathProgram(time_limit=opts.time_limit)

    def add_simplex(prefix: str) -> list[str]:
        vs = [prog.add_var(f"{prefix}[{k}]", lb=0.0, ub=1.0) for k in range(K)]
        prog.add_constr({v: 1.0 for v in vs}, "=", 1.0)
        for k in range(K - 1):
            prog.add_constr({vs[k]: 1.0, vs[k + 1]: -1.0}, ">=", 0.0)
        return vs

    ws = add_simplex("w")
    obs_ws = [add_simplex(f"w{s}") for s in range(S)]

    for s, obs in enumerate(observations):
        enc = encodings[s]
        m, n = enc.A.shape
        C = obs.cost_matrix
        sigmas = [prog.add_var(f"s{s}[{r}]", lb=0.0) for r in range(m)]
        pis = [[prog.add_var(f"p{s}[{j}][{k}]", lb=0.0) for k in range(K)] for j in range(K)]
        taus = [[prog.add_var(f"t{s}[{j}][{k}]", lb=0.0) for k in range(K)] for j in range(K)]

        for j in range(K):
            prog.add_constr({pis[j][k]: 1.0 for k in range(K)}, "=", 1.0)
        for k in range(K):
            prog.add_constr({pis[j][k]: 1.0 for j in range(K)}, "=", 1.0)

        for j in range(K):
            for k in range(K):
                prog.add_constr({taus[j][k]: 1.0, obs_ws[s][j]: -1.0}, "<=", 0.0)
                prog.add_constr({taus[j][k]: 1.0, pis[j][k]: -1.0}, "<=", 0.0)
                if tighten:
                    prog.add_constr(
                        {taus[j][k]: 1.0, obs_ws[s][j]: -1.0, pis[j][k]: -1.0}, ">=", -1.0
                    )

        # chosen solution's OWA value bounded by the dual objective
        a_chosen = sort_objectives(C, obs.chosen).values
        coeffs = {obs_ws[s][k]: float(a_chosen[k]) for k in range(K)}
        for r in range(m):
            if enc.b[r] != 0.0:
                coeffs[sigmas[r]] = -float(enc.b[r])
        prog.add_constr(coeffs, "<=", 0.0)

        # dual feasibility: A^t sigma <= sum_{j,k} c^k tau_{jk}, componentwise
        for i in range(n):
            coeffs = {}
            for r in range(m):
                if enc.A[r, i] != 0.0:
                    coeffs[sigmas[r]] = coeffs.get(sigmas[r], 0.0) + float(enc.A[r, i])
            for j in range(K):
                for k in range(K):
                    if C[k, i] != 0.0:
                        coeffs[taus[j][k]] = coeffs.get(taus[j][k], 0.0) - float(C[k, i])
            prog.add_constr(coeffs, "<=", 0.0)

    objective: dict[str, float] = {}
    for s in range(S):
        for k in range(K):
            d = prog.add_var(f"d[{s}][{k}]", lb=0.0)
            prog.add_constr({ws[k]: 1.0, obs_ws[s][k]: -1.0, d: -1.0}, "<=", 0.0)
            prog.add_constr({ws[k]: 1.0, obs_ws[s][k]: -1.0, d: 1.0}, ">=", 0.0)
            objective[d] = 1.0
    prog.set_objective(objective)

    outcome = solve_program(prog)
    if outcome.values is None:
        raise SolverError(f"compact LP failed with status {outcome.status}")

    w = project_weights([outcome[v] for v in ws])
    obs_w = [project_weights([outcome[v] for v in vs]) for vs in obs_ws]
    return ElicitationResult(
        weights=w,
        observation_weights=obs_w,
        objective=sum(vector_distance(w, obs_w[s], "one") for s in range(S)),
        infeas=[0.0] * S,
        pool_sizes=[0] * S,
        iterations=1,
        wall_time=time.perf_counter() - start,
        solutions=[],
        status="heuristic",
    )
