"""Synthetic experiment pipeline: instance generation, simulated decision maker
with noise, evaluation metrics and parameter-sweep runners emitting CSV.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .altpref import elicit_altpref
from .compact import elicit_compact
from .core import (
    Assignment,
    FeasibleSet,
    MinKnapsack,
    Observation,
    Selection,
    check_weights,
    hamming,
    min_max_normalize,
    orness,
    vector_distance,
)
from .owa import explains, solve_owa, weights_from_orness
from .pairwise import elicit_ahn, generate_pairs, judge_pairs
from .pref import ElicitOptions, elicit_pref

CSV_COLUMNS = [
    "problem",
    "sweep_param",
    "sweep_value",
    "n",
    "p",
    "K",
    "S",
    "eps",
    "method",
    "seed",
    "w_dist_2",
    "in_hamming",
    "out_hamming",
    "elicited_orness",
    "is_worstcase_vector",
    "runtime_ms",
    "iterations",
]

PROBLEMS = ("selection", "assignment", "knapsack")


@dataclass
class ExperimentConfig:
    problem: str = "selection"
    sweep_param: str = "S"  # one of n, S, K, eps, orness
    sweep_values: Sequence[float] = (1, 2, 4, 8)
    n: int = 10
    K: int = 3
    S: int = 4
    eps: float = 0.0
    instances: int = 10
    methods: Sequence[str] = ("pref",)
    out_samples: int = 100
    seed: int = 0
    timing: str = "off"  # "off" keeps the CSV byte-deterministic; "wall" records real ms
    explain_ratio_samples: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.sweep_param not in ("n", "S", "K", "eps", "orness"):
            raise ValueError(f"unknown sweep parameter {self.sweep_param!r}")
        if not self.sweep_values:
            raise ValueError("sweep_values must be nonempty")
        if self.instances < 1:
            raise ValueError("instances must be >= 1")
        for m in self.methods:
            if m not in ("pref", "altpref", "compact") and not m.startswith("pairwise:"):
                raise ValueError(f"unknown method {m!r}")
        if self.timing not in ("off", "wall"):
            raise ValueError("timing must be 'off' or 'wall'")


def selection_p(n: int) -> int:
    return max(1, n // 2)


def generate_costs(
    problem: str,
    n: int,
    K: int,
    rng: np.random.Generator,
    p: Optional[int] = None,
) -> tuple[NDArray[np.float64], FeasibleSet]:
    """Random instance: integer costs in {1,...,100} min-max normalized per row,
    plus the matching feasible set."""
    if problem == "selection":
        fs: FeasibleSet = Selection(n, p if p is not None else selection_p(n))
    elif problem == "assignment":
        fs = Assignment(n)
    elif problem == "knapsack":
        weights = rng.uniform(0.7, 1.3, size=n)
        fs = MinKnapsack(n, tuple(weights), 0.5 * float(weights.sum()))
    else:
        raise ValueError(f"unknown problem {problem!r}")
    raw = rng.integers(1, 101, size=(K, fs.dim)).astype(float)
    return min_max_normalize(raw), fs


def perturb_weights(w: ArrayLike, eps: float, rng: np.random.Generator) -> NDArray[np.float64]:
    """Noisy copy of w: per-entry uniform shift clamped below, renormalized, re-sorted."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    w = check_weights(w, risk_averse=True)
    if eps == 0.0:
        return w.copy()
    for _ in range(100):
        shift = np.array([rng.uniform(max(-wk, -eps), eps) for wk in w])
        out = w + shift
        if out.sum() > 1e-12:
            out = out / out.sum()
            return np.sort(out)[::-1]
    raise RuntimeError("perturbation degenerated to the zero vector repeatedly")


def simulate_observations(
    true_w: ArrayLike,
    problem: str,
    n: int,
    S: int,
    eps: float,
    rng: np.random.Generator,
    p: Optional[int] = None,
    shared_fs: Optional[FeasibleSet] = None,
) -> list[Observation]:
    """S independent decision situations, each solved under a perturbed copy of true_w.

    With `shared_fs` every observation reuses the same feasible set and only the
    costs are redrawn (required by the instance JSON layout for knapsack).
    """
    true_w = check_weights(true_w, risk_averse=True)
    observations = []
    for _ in range(S):
        C, fs = generate_costs(problem, n, true_w.size, rng, p=p)
        if shared_fs is not None:
            fs = shared_fs
        w = perturb_weights(true_w, eps, rng)
        report = solve_owa(w, C, fs)
        observations.append(Observation(C, report.solution, fs))
    return observations


def evaluate(
    w_hat: ArrayLike,
    true_w: ArrayLike,
    observations: Sequence[Observation],
    out_samples: Sequence[tuple[NDArray[np.float64], FeasibleSet]],
) -> dict[str, float]:
    """Preference distance plus in- and out-of-sample mean Hamming distances."""
    w_hat = check_weights(w_hat, risk_averse=True)
    true_w = check_weights(true_w, risk_averse=True)
    in_dists = [
        hamming(solve_owa(w_hat, obs.cost_matrix, obs.feasible_set).solution, obs.chosen)
        for obs in observations
    ]
    out_dists = [
        hamming(solve_owa(w_hat, C, fs).solution, solve_owa(true_w, C, fs).solution)
        for C, fs in out_samples
    ]
    return {
        "w_dist_2": vector_distance(w_hat, true_w, "two"),
        "in_hamming": float(np.mean(in_dists)) if in_dists else 0.0,
        "out_hamming": float(np.mean(out_dists)) if out_dists else 0.0,
    }


def random_risk_averse(K: int, rng: np.random.Generator) -> NDArray[np.float64]:
    """Uniform simplex sample sorted into the risk-averse cone."""
    return np.sort(rng.dirichlet(np.ones(K)))[::-1]


def explain_ratio(
    observations: Sequence[Observation],
    samples: int,
    rng: np.random.Generator,
) -> float:
    """Fraction of random risk-averse vectors that explain every observation."""
    K = observations[0].num_objectives
    hits = 0
    for _ in range(samples):
        w = random_risk_averse(K, rng)
        if all(explains(w, obs)[0] for obs in observations):
            hits += 1
    return hits / samples


def _run_method(
    method: str,
    observations: list[Observation],
    eps: float,
    rng: np.random.Generator,
) -> tuple[NDArray[np.float64], int]:
    """Run one elicitation method; returns (fitted weights, iteration count)."""
    if method == "pref":
        res = elicit_pref(observations, ElicitOptions())
        return res.weights, res.iterations
    if method == "altpref":
        res = elicit_altpref(observations)
        return res.weights, res.iterations
    if method == "compact":
        res = elicit_compact(observations)
        return res.weights, res.iterations
    if method.startswith("pairwise:"):
        count = int(method.split(":", 1)[1])
        raise RuntimeError("pairwise method needs the true weights; handled by caller")
    raise ValueError(f"unknown method {method!r}")


def _run_pairwise(
    count: int,
    observations: list[Observation],
    true_w: NDArray[np.float64],
    eps: float,
    rng: np.random.Generator,
) -> NDArray[np.float64]:
    comparisons = []
    for obs in observations:
        pairs = generate_pairs(obs.cost_matrix, obs.feasible_set, count, rng)
        comparisons.extend(
            judge_pairs(pairs, obs.cost_matrix, obs.feasible_set, true_w, eps, rng)
        )
    return elicit_ahn(comparisons)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def run_experiment(cfg: ExperimentConfig, out_csv: Optional[str] = None) -> list[dict]:
    """Run the configured sweep; returns metric rows and optionally writes CSV.

    With explain_ratio_samples > 0 a companion file `<out_csv>.explain.csv`
    records, per instance, the fraction of random risk-averse vectors that
    explain all its observations.
    """
    rows: list[dict] = []
    ratio_rows: list[dict] = []
    for sweep_index, sweep_value in enumerate(cfg.sweep_values):
        n, K, S, eps = cfg.n, cfg.K, cfg.S, cfg.eps
        fixed_orness = None
        if cfg.sweep_param == "n":
            n = int(sweep_value)
        elif cfg.sweep_param == "K":
            K = int(sweep_value)
        elif cfg.sweep_param == "S":
            S = int(sweep_value)
        elif cfg.sweep_param == "eps":
            eps = float(sweep_value)
        else:
            fixed_orness = float(sweep_value)
        p = selection_p(n) if cfg.problem == "selection" else 0

        for inst in range(cfg.instances):
            rng = np.random.default_rng([cfg.seed, sweep_index, inst])
            alpha = fixed_orness if fixed_orness is not None else rng.uniform(0.5, 1.0)
            true_w = weights_from_orness(K, alpha)
            observations = simulate_observations(
                true_w, cfg.problem, n, S, eps, rng, p=p if cfg.problem == "selection" else None
            )
            out_samples = [
                generate_costs(
                    cfg.problem, n, K, rng, p=p if cfg.problem == "selection" else None
                )
                for _ in range(cfg.out_samples)
            ]

            if cfg.explain_ratio_samples > 0:
                ratio_rng = np.random.default_rng([cfg.seed, sweep_index, inst, 10**6])
                ratio_rows.append(
                    {
                        "sweep_value": sweep_value,
                        "instance": inst,
                        "explain_ratio": explain_ratio(
                            observations, cfg.explain_ratio_samples, ratio_rng
                        ),
                    }
                )

            for method_index, method in enumerate(cfg.methods):
                method_rng = np.random.default_rng([cfg.seed, sweep_index, inst, method_index])
                start = time.perf_counter()
                if method.startswith("pairwise:"):
                    count = int(method.split(":", 1)[1])
                    w_hat = _run_pairwise(count, observations, true_w, eps, method_rng)
                    iterations = 1
                else:
                    w_hat, iterations = _run_method(method, observations, eps, method_rng)
                elapsed_ms = (time.perf_counter() - start) * 1000.0
                metrics = evaluate(w_hat, true_w, observations, out_samples)
                worst_case = np.zeros(K)
                worst_case[0] = 1.0
                rows.append(
                    {
                        "problem": cfg.problem,
                        "sweep_param": cfg.sweep_param,
                        "sweep_value": sweep_value,
                        "n": n,
                        "p": p,
                        "K": K,
                        "S": S,
                        "eps": eps,
                        "method": method,
                        "seed": cfg.seed,
                        "w_dist_2": metrics["w_dist_2"],
                        "in_hamming": metrics["in_hamming"],
                        "out_hamming": metrics["out_hamming"],
                        "elicited_orness": orness(w_hat) if K >= 2 else 1.0,
                        "is_worstcase_vector": int(
                            vector_distance(w_hat, worst_case, "inf") <= 1e-6
                        ),
                        "runtime_ms": int(round(elapsed_ms)) if cfg.timing == "wall" else 0,
                        "iterations": iterations,
                    }
                )

    if out_csv is not None:
        write_csv(rows, out_csv)
        if ratio_rows:
            with open(f"{out_csv}.explain.csv", "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["sweep_value", "instance", "explain_ratio"])
                for r in ratio_rows:
                    writer.writerow([_fmt(r["sweep_value"]), r["instance"], _fmt(r["explain_ratio"])])
    return rows


def write_csv(rows: Sequence[dict], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])


# ---------------------------------------------------------------------------
# instance JSON serialization


def instance_to_json(
    problem: str,
    true_w: ArrayLike,
    observations: Sequence[Observation],
) -> dict:
    fs = observations[0].feasible_set
    doc: dict = {
        "problem": problem,
        "n": fs.n,
        "K": observations[0].num_objectives,
        "S": len(observations),
        "true_w": [float(v) for v in np.asarray(true_w, dtype=float)],
        "observations": [
            {
                "costs": [[float(v) for v in row] for row in obs.cost_matrix],
                "chosen": [int(v) for v in obs.chosen],
            }
            for obs in observations
        ],
    }
    if isinstance(fs, Selection):
        doc["p"] = fs.p
    elif isinstance(fs, MinKnapsack):
        doc["weights"] = [float(v) for v in fs.item_weights]
        doc["capacity"] = float(fs.capacity)
    return doc


def instance_from_json(doc: dict) -> tuple[NDArray[np.float64], list[Observation]]:
    problem = doc["problem"]
    n = int(doc["n"])
    if problem == "selection":
        fs: FeasibleSet = Selection(n, int(doc["p"]))
    elif problem == "assignment":
        fs = Assignment(n)
    elif problem == "knapsack":
        fs = MinKnapsack(n, tuple(float(v) for v in doc["weights"]), float(doc["capacity"]))
    else:
        raise ValueError(f"unknown problem {problem!r}")
    observations = [
        Observation(np.array(o["costs"], dtype=float), np.array(o["chosen"]), fs)
        for o in doc["observations"]
    ]
    return np.array(doc["true_w"], dtype=float), observations


def save_instance(path: str, problem: str, true_w: ArrayLike, observations: Sequence[Observation]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_json(problem, true_w, observations), fh, indent=2)
        fh.write("\n")


def load_instance(path: str) -> tuple[NDArray[np.float64], list[Observation]]:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_json(json.load(fh))
