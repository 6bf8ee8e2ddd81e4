"""Acceptance suite: one test per release criterion, each printing a single
PASS/FAIL line. Criteria cover the two worked golden instances, oracle
equivalences, generator contracts, trend reproduction at desk scale, and
output determinism.
"""

import numpy as np
import pytest
from click.testing import CliRunner

from owa_elicit import (
    Assignment,
    ElicitOptions,
    MinKnapsack,
    Observation,
    Selection,
    elicit_altpref,
    elicit_compact,
    elicit_pref,
    enumerate_owa,
    enumerate_solutions,
    explains,
    hamming,
    orness,
    owa_value,
    solve_owa,
    weights_from_orness,
)
from owa_elicit.cli import main as cli_main
from owa_elicit.core import check_weights
from owa_elicit.experiments import (
    evaluate,
    generate_costs,
    simulate_observations,
    _run_pairwise,
)
from owa_elicit.pref import distance_to_explaining_set


def _report(capsys, name: str, ok: bool, detail: str = "") -> None:
    with capsys.disabled():
        tail = f" ({detail})" if detail else ""
        print(f"[{'PASS' if ok else 'FAIL'}] {name}{tail}")
    assert ok, f"{name}{tail}"


# ---------------------------------------------------------------------------
# 1. single-observation golden instance


def test_criterion_single_observation_golden(capsys, small_selection_obs):
    res = elicit_pref([small_selection_obs])
    ok = (
        np.allclose(res.weights, [0.5, 0.5, 0.0], atol=1e-6)
        and abs(res.objective) <= 1e-9
    )
    _report(capsys, "single-observation golden instance", ok, f"w={np.round(res.weights, 6)}")


# ---------------------------------------------------------------------------
# 2. two-observation golden instance (both engines)


def test_criterion_two_observation_golden(capsys, two_obs_selection):
    alt = elicit_altpref(two_obs_selection)
    alt_ok = alt.total_hamming == 2 and all(
        np.array_equal(sol, [0, 1, 0, 1]) for sol in alt.solutions
    )
    # the fitted vector must do as well as the known optimum (1, 0, 0)
    ref_w = np.array([1.0, 0.0, 0.0])
    ref_hamming = sum(
        min(
            hamming(x, obs.chosen)
            for x in enumerate_solutions(obs.feasible_set)
            if owa_value(ref_w, obs.cost_matrix, x)
            <= enumerate_owa(ref_w, obs.cost_matrix, obs.feasible_set).value + 1e-9
        )
        for obs in two_obs_selection
    )
    alt_ok = alt_ok and alt.total_hamming == ref_hamming

    pref = elicit_pref(two_obs_selection, ElicitOptions(tie_break="balanced"))
    summed = sum(hamming(sol, obs.chosen) for sol, obs in zip(pref.solutions, two_obs_selection))
    ref_obj = sum(
        distance_to_explaining_set(np.array([0.46, 0.29, 0.25]), obs)
        for obs in two_obs_selection
    )
    pref_ok = summed == 4 and abs(pref.objective - ref_obj) <= 1e-4

    _report(
        capsys,
        "two-observation golden instance",
        alt_ok and pref_ok,
        f"alt_hamming={alt.total_hamming} pref_hamming={summed} obj={pref.objective:.6f}",
    )


# ---------------------------------------------------------------------------
# 3. forward solver matches brute-force enumeration


def test_criterion_oracle_equivalence(capsys):
    rng = np.random.default_rng(100)
    worst = 0.0
    for i in range(200):
        kind = ("selection", "assignment", "knapsack")[i % 3]
        K = (2, 3, 4)[(i // 3) % 3]
        if kind == "selection":
            n = int(rng.integers(4, 9))
            fs = Selection(n, max(1, n // 2))
        elif kind == "assignment":
            fs = Assignment(int(rng.integers(2, 4)))
        else:
            n = int(rng.integers(4, 9))
            wts = tuple(rng.uniform(0.7, 1.3, size=n))
            fs = MinKnapsack(n, wts, 0.5 * sum(wts))
        C = rng.uniform(0, 1, size=(K, fs.dim))
        w = np.sort(rng.dirichlet(np.ones(K)))[::-1]
        exact = solve_owa(w, C, fs).value
        brute = enumerate_owa(w, C, fs).value
        worst = max(worst, abs(exact - brute))
    _report(capsys, "forward solver matches enumeration (200 instances)", worst <= 1e-6, f"max gap {worst:.2e}")


# ---------------------------------------------------------------------------
# 4. noise-free batches are explained exactly by both engines


def test_criterion_zero_objective_equivalence(capsys):
    rng = np.random.default_rng(200)
    failures = []
    for i in range(100):
        S = (2, 4, 8)[i % 3]
        alpha = float(rng.uniform(0.5, 1.0))
        true_w = weights_from_orness(3, alpha)
        observations = simulate_observations(true_w, "selection", 10, S, 0.0, rng)
        res = elicit_pref(observations)
        if res.objective > 1e-6:
            failures.append((i, "objective", res.objective))
            continue
        gaps = [explains(res.weights, obs)[1] for obs in observations]
        if max(gaps) > 1e-6:
            failures.append((i, "gap", max(gaps)))
            continue
        alt = elicit_altpref(observations)
        if alt.total_hamming != 0:
            failures.append((i, "hamming", alt.total_hamming))
    _report(
        capsys,
        "noise-free zero-objective equivalence (100 batches)",
        not failures,
        f"failures={failures[:3]}",
    )


# ---------------------------------------------------------------------------
# 5. orness-targeted generator


def test_criterion_orness_generator(capsys):
    rng = np.random.default_rng(300)
    ok = True
    detail = ""
    for i in range(50):
        K = (3, 5, 10)[i % 3]
        alpha = float(rng.uniform(0.5, 1.0))
        w = weights_from_orness(K, alpha)
        try:
            check_weights(w, risk_averse=True)
        except ValueError:
            ok, detail = False, f"invalid vector at alpha={alpha}"
            break
        if abs(orness(w) - alpha) > 1e-6:
            ok, detail = False, f"orness off by {abs(orness(w) - alpha):.2e}"
            break
    for K in (3, 5, 10):
        uniform = weights_from_orness(K, 0.5)
        worst = weights_from_orness(K, 1.0)
        if not np.array_equal(uniform, np.full(K, 1.0 / K)):
            ok, detail = False, f"uniform endpoint wrong for K={K}"
        e1 = np.zeros(K)
        e1[0] = 1.0
        if not np.array_equal(worst, e1):
            ok, detail = False, f"worst-case endpoint wrong for K={K}"
    _report(capsys, "orness generator (50 targets + endpoints)", ok, detail)


# ---------------------------------------------------------------------------
# 6. more observations improve preference recovery


def test_criterion_observation_count_trend(capsys):
    rng = np.random.default_rng(400)
    sweep = (1, 2, 4, 8, 16)
    means = []
    for S in sweep:
        dists = []
        for _ in range(50):
            alpha = float(rng.uniform(0.5, 1.0))
            true_w = weights_from_orness(3, alpha)
            observations = simulate_observations(true_w, "selection", 10, S, 0.0, rng)
            w_hat = elicit_pref(observations).weights
            dists.append(float(np.linalg.norm(w_hat - true_w)))
        means.append(float(np.mean(dists)))
    inversions = [
        means[i + 1] - means[i] for i in range(len(means) - 1) if means[i + 1] > means[i]
    ]
    ok = len(inversions) <= 1 and all(v < 0.02 for v in inversions)
    _report(
        capsys,
        "preference distance improves with more observations",
        ok,
        "means=" + ",".join(f"{m:.3f}" for m in means),
    )


# ---------------------------------------------------------------------------
# 7. worst-case-vector artifact at high orness


def test_criterion_worstcase_vector_artifact(capsys):
    rng = np.random.default_rng(500)

    def fraction(lo, hi):
        hits = 0
        for _ in range(100):
            alpha = float(rng.uniform(lo, hi))
            true_w = weights_from_orness(5, alpha)
            observations = simulate_observations(true_w, "selection", 10, 4, 0.0, rng)
            w_hat = elicit_pref(observations).weights
            e1 = np.zeros(5)
            e1[0] = 1.0
            if np.max(np.abs(w_hat - e1)) <= 1e-6:
                hits += 1
        return hits / 100

    high = fraction(0.95 + 1e-9, 1.0)
    low = fraction(0.5, 0.6)
    _report(
        capsys,
        "worst-case-vector fraction higher at high orness",
        high > low,
        f"high={high:.2f} low={low:.2f}",
    )


# ---------------------------------------------------------------------------
# 8. noise robustness vs pairwise baseline


def test_criterion_noise_robustness(capsys):
    rng = np.random.default_rng(600)
    ok = True
    detail_parts = []
    for eps in (0.0, 0.25, 0.5):
        alt_means, pw_means = [], []
        for _ in range(30):
            alpha = float(rng.uniform(0.5, 1.0))
            true_w = weights_from_orness(5, alpha)
            observations = simulate_observations(true_w, "selection", 10, 8, eps, rng)
            alt_w = elicit_altpref(observations).weights
            pw_w = _run_pairwise(5, observations, true_w, eps, rng)
            alt_means.append(evaluate(alt_w, true_w, observations, [])["in_hamming"])
            pw_means.append(evaluate(pw_w, true_w, observations, [])["in_hamming"])
        alt_mean, pw_mean = float(np.mean(alt_means)), float(np.mean(pw_means))
        detail_parts.append(f"eps={eps}: alt={alt_mean:.3f} pw={pw_mean:.3f}")
        if alt_mean > pw_mean:
            ok = False
    _report(capsys, "observation-based fit beats pairwise baseline in-sample", ok, "; ".join(detail_parts))


# ---------------------------------------------------------------------------
# 9. heuristic never beats the exact engine


def test_criterion_compact_sanity(capsys):
    rng = np.random.default_rng(700)
    ok = True
    detail = ""
    for i in range(50):
        alpha = float(rng.uniform(0.5, 1.0))
        true_w = weights_from_orness(3, alpha)
        observations = simulate_observations(true_w, "selection", 10, 4, 0.0, rng)
        heur = elicit_compact(observations)
        try:
            check_weights(heur.weights, risk_averse=True)
        except ValueError:
            ok, detail = False, f"invalid weights on instance {i}"
            break
        exact_obj = elicit_pref(observations).objective
        heur_obj = sum(distance_to_explaining_set(heur.weights, obs) for obs in observations)
        if heur_obj < exact_obj - 1e-6:
            ok, detail = False, f"heuristic beat exact on instance {i}: {heur_obj} < {exact_obj}"
            break
    _report(capsys, "compact heuristic never beats exact objective (50 instances)", ok, detail)


# ---------------------------------------------------------------------------
# 10. experiment CSV determinism


def test_criterion_csv_determinism(capsys, tmp_path):
    cfg = tmp_path / "exp.toml"
    cfg.write_text(
        'problem = "selection"\n'
        'sweep_param = "S"\n'
        "sweep_values = [1, 2, 4]\n"
        "n = 8\nK = 3\ninstances = 3\n"
        'methods = ["pref", "pairwise:2"]\n'
        "out_samples = 10\nseed = 11\n"
    )
    runner = CliRunner()
    outputs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        res = runner.invoke(
            cli_main,
            ["experiment", "--config", str(cfg), "--out", str(out), "--jobs", "1"],
        )
        assert res.exit_code == 0, res.output
        outputs.append(out.read_bytes())
    _report(capsys, "experiment CSV byte-determinism", outputs[0] == outputs[1])
