"""Command-line interface: instance generation, OWA solving, elicitation and
experiment sweeps. Exit codes: 0 success, 1 input error, 2 solver failure.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from .altpref import elicit_altpref
from .compact import elicit_compact
from .core import check_weights, orness, owa_value
from .experiments import (
    ExperimentConfig,
    run_experiment,
    save_instance,
    load_instance,
    selection_p,
    simulate_observations,
    generate_costs,
)
from .mp import SolverError
from .owa import solve_owa, weights_from_orness
from .pairwise import elicit_ahn, generate_pairs, judge_pairs
from .pref import ElicitOptions, elicit_pref

EXIT_INPUT_ERROR = 1
EXIT_SOLVER_ERROR = 2


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
def main():
    """Elicit risk-averse OWA preference weights from observed solution choices."""


@main.command()
@click.option("--problem", type=click.Choice(["selection", "assignment", "knapsack"]), default="selection", show_default=True)
@click.option("--n", type=int, required=True, help="Problem size (items, or board size for assignment).")
@click.option("--p", type=int, default=None, help="Items to select (selection only; default n//2).")
@click.option("--k", "--K", "k", type=int, required=True, help="Number of objectives/scenarios.")
@click.option("--s", "--S", "s", type=int, required=True, help="Number of observations.")
@click.option("--eps", type=float, default=0.0, show_default=True, help="Decision-maker noise level in [0,1].")
@click.option("--orness-value", type=float, default=None, help="Fix the true orness instead of sampling it.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Output instance JSON path.")
def generate(problem, n, p, k, s, eps, orness_value, seed, out):
    """Generate a synthetic instance and write it as JSON."""
    try:
        rng = np.random.default_rng(seed)
        alpha = orness_value if orness_value is not None else float(rng.uniform(0.5, 1.0))
        true_w = weights_from_orness(k, alpha)
        shared_fs = None
        if problem == "knapsack":
            _, shared_fs = generate_costs(problem, n, k, rng)
        observations = simulate_observations(
            true_w, problem, n, s, eps, rng,
            p=(p if p is not None else selection_p(n)) if problem == "selection" else None,
            shared_fs=shared_fs,
        )
        save_instance(out, problem, true_w, observations)
    except SolverError as exc:
        _fail(EXIT_SOLVER_ERROR, str(exc))
    except (ValueError, OSError) as exc:
        _fail(EXIT_INPUT_ERROR, str(exc))
    click.echo(f"wrote {out}")


@main.command()
@click.option("--model", type=click.Choice(["pref", "altpref", "compact", "pairwise"]), required=True)
@click.option("--comparisons", type=int, default=5, show_default=True, help="Pairwise comparisons per observation (pairwise model).")
@click.option("--norm", type=click.Choice(["one", "inf"]), default="one", show_default=True, help="Master distance norm (pref model).")
@click.option("--tie-break", type=click.Choice(["none", "min_orness", "max_orness", "balanced"]), default="none", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for pairwise simulation.")
@click.option("--in", "in_path", type=click.Path(dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Output result JSON path.")
def elicit(model, comparisons, norm, tie_break, seed, in_path, out):
    """Fit a preference vector to an instance file."""
    try:
        true_w, observations = load_instance(in_path)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        _fail(EXIT_INPUT_ERROR, f"cannot read {in_path}: {exc}")
    try:
        doc: dict = {"method": model}
        if model == "pref":
            res = elicit_pref(observations, ElicitOptions(norm=norm, tie_break=tie_break))
            doc.update(
                weights=[float(v) for v in res.weights],
                objective=res.objective,
                iterations=res.iterations,
                infeas=res.infeas,
                status=res.status,
            )
        elif model == "altpref":
            res = elicit_altpref(observations)
            doc.update(
                weights=[float(v) for v in res.weights],
                total_hamming=res.total_hamming,
                iterations=res.iterations,
                status=res.status,
            )
        elif model == "compact":
            res = elicit_compact(observations)
            doc.update(
                weights=[float(v) for v in res.weights],
                objective=res.objective,
                status=res.status,
                note="heuristic",
            )
        else:
            rng = np.random.default_rng(seed)
            cmps = []
            for obs in observations:
                pairs = generate_pairs(obs.cost_matrix, obs.feasible_set, comparisons, rng)
                cmps.extend(judge_pairs(pairs, obs.cost_matrix, obs.feasible_set, true_w, 0.0, rng))
            w = elicit_ahn(cmps)
            doc["method"] = f"pairwise:{comparisons}"
            doc.update(weights=[float(v) for v in w], comparisons=len(cmps))
        doc["orness"] = orness(np.array(doc["weights"])) if len(doc["weights"]) > 1 else 1.0
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    except SolverError as exc:
        _fail(EXIT_SOLVER_ERROR, str(exc))
    except (ValueError, OSError) as exc:
        _fail(EXIT_INPUT_ERROR, str(exc))
    click.echo(f"wrote {out}")


@main.command()
@click.option("--weights", "weights_path", type=click.Path(dir_okay=False), required=True, help="JSON file holding the weight vector.")
@click.option("--in", "in_path", type=click.Path(dir_okay=False), required=True)
@click.option("--index", type=int, default=0, show_default=True, help="Observation index supplying costs and feasible set.")
def solve(weights_path, in_path, index):
    """Print the OWA optimum of one decision situation under given weights."""
    try:
        with open(weights_path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        w = check_weights(raw["weights"] if isinstance(raw, dict) else raw)
        _, observations = load_instance(in_path)
        if not 0 <= index < len(observations):
            raise ValueError(f"index {index} out of range (S={len(observations)})")
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        _fail(EXIT_INPUT_ERROR, str(exc))
    try:
        obs = observations[index]
        report = solve_owa(w, obs.cost_matrix, obs.feasible_set)
    except SolverError as exc:
        _fail(EXIT_SOLVER_ERROR, str(exc))
    click.echo(f"value {report.value:.9g}")
    click.echo(f"solution {' '.join(str(int(v)) for v in report.solution)}")
    click.echo(f"observed value {owa_value(w, obs.cost_matrix, obs.chosen):.9g}")


@main.command()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), required=True, help="TOML experiment configuration.")
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Output CSV path.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel instances (1 keeps timing columns deterministic).")
def experiment(config_path, out, jobs):
    """Run a parameter sweep defined by a config file and write metrics CSV."""
    try:
        import tomli

        with open(config_path, "rb") as fh:
            raw = tomli.load(fh)
        raw["jobs"] = jobs
        cfg = ExperimentConfig(**raw)
    except (ValueError, OSError, TypeError, KeyError) as exc:
        _fail(EXIT_INPUT_ERROR, f"bad config: {exc}")
    except Exception as exc:  # tomli.TOMLDecodeError
        _fail(EXIT_INPUT_ERROR, f"bad config: {exc}")
    try:
        rows = run_experiment(cfg, out_csv=out)
    except SolverError as exc:
        _fail(EXIT_SOLVER_ERROR, str(exc))
    click.echo(f"wrote {out} ({len(rows)} rows)")


if __name__ == "__main__":
    main()
