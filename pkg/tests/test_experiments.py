"""Tests for instance generation, the simulated decision maker, metrics and
the sweep runner with its CSV output.
"""

import csv
import os

import numpy as np
import pytest

from owa_elicit import (
    MinKnapsack,
    check_weights,
    evaluate,
    explains,
    load_instance,
    orness,
    perturb_weights,
    run_experiment,
    save_instance,
    simulate_observations,
    weights_from_orness,
)
from owa_elicit.experiments import (
    CSV_COLUMNS,
    ExperimentConfig,
    explain_ratio,
    generate_costs,
    selection_p,
    write_csv,
)


def test_generate_costs_normalized_rows():
    rng = np.random.default_rng(0)
    C, fs = generate_costs("selection", 8, 3, rng)
    assert C.shape == (3, 8)
    assert np.allclose(C.min(axis=1), 0.0)
    assert np.allclose(C.max(axis=1), 1.0)


def test_generate_costs_deterministic():
    a, _ = generate_costs("selection", 6, 2, np.random.default_rng(42))
    b, _ = generate_costs("selection", 6, 2, np.random.default_rng(42))
    assert np.array_equal(a, b)


def test_generate_costs_knapsack_capacity():
    rng = np.random.default_rng(1)
    C, fs = generate_costs("knapsack", 7, 2, rng)
    assert isinstance(fs, MinKnapsack)
    assert fs.capacity == pytest.approx(0.5 * sum(fs.item_weights))
    assert all(0.7 <= w <= 1.3 for w in fs.item_weights)


def test_generate_costs_assignment_dim():
    C, fs = generate_costs("assignment", 3, 2, np.random.default_rng(2))
    assert C.shape == (2, 9)


def test_perturb_weights_zero_noise_identity():
    w = weights_from_orness(4, 0.8)
    out = perturb_weights(w, 0.0, np.random.default_rng(0))
    assert np.array_equal(out, w)


def test_perturb_weights_stays_risk_averse():
    rng = np.random.default_rng(3)
    w = weights_from_orness(4, 0.7)
    for _ in range(50):
        out = perturb_weights(w, 0.5, rng)
        check_weights(out, risk_averse=True)


def test_perturb_weights_two_entry_bound():
    rng = np.random.default_rng(4)
    for _ in range(100):
        out = perturb_weights(np.array([1.0, 0.0]), 1.0, rng)
        assert out[0] >= 0.5 - 1e-12


def test_perturb_weights_validation():
    with pytest.raises(ValueError):
        perturb_weights(np.array([1.0, 0.0]), 1.5, np.random.default_rng(0))


def test_perturb_mean_orness_decreases_with_noise():
    """More noise pulls a high-orness vector toward the sorted-uniform regime."""
    rng = np.random.default_rng(5)
    w = weights_from_orness(4, 0.95)
    means = []
    for eps in (0.05, 0.5):
        means.append(
            np.mean([orness(perturb_weights(w, eps, rng)) for _ in range(500)])
        )
    assert means[1] < means[0]


def test_simulate_observations_noise_free_explainable():
    rng = np.random.default_rng(6)
    true_w = weights_from_orness(3, 0.8)
    obs = simulate_observations(true_w, "selection", 8, 4, 0.0, rng)
    assert len(obs) == 4
    for o in obs:
        ok, gap = explains(true_w, o)
        assert ok


def test_simulate_observations_deterministic():
    true_w = weights_from_orness(3, 0.8)
    a = simulate_observations(true_w, "selection", 6, 3, 0.2, np.random.default_rng(7))
    b = simulate_observations(true_w, "selection", 6, 3, 0.2, np.random.default_rng(7))
    for oa, ob in zip(a, b):
        assert np.array_equal(oa.cost_matrix, ob.cost_matrix)
        assert np.array_equal(oa.chosen, ob.chosen)


def test_evaluate_exact_recovery():
    rng = np.random.default_rng(8)
    true_w = weights_from_orness(3, 0.75)
    obs = simulate_observations(true_w, "selection", 6, 2, 0.0, rng)
    out = [generate_costs("selection", 6, 3, rng) for _ in range(5)]
    metrics = evaluate(true_w, true_w, obs, out)
    assert metrics["w_dist_2"] == pytest.approx(0.0)
    assert metrics["out_hamming"] == pytest.approx(0.0)


def test_evaluate_distance_formula():
    metrics = evaluate(
        np.array([1.0, 0.0, 0.0]), np.array([0.5, 0.5, 0.0]), [], []
    )
    assert metrics["w_dist_2"] == pytest.approx(np.sqrt(0.5))


def test_explain_ratio_bounds(two_obs_selection):
    r = explain_ratio(two_obs_selection, 50, np.random.default_rng(9))
    assert 0.0 <= r <= 1.0


def test_selection_p_rule():
    assert selection_p(10) == 5
    assert selection_p(1) == 1


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(problem="tsp")
    with pytest.raises(ValueError):
        ExperimentConfig(sweep_param="gamma")
    with pytest.raises(ValueError):
        ExperimentConfig(sweep_values=())
    with pytest.raises(ValueError):
        ExperimentConfig(instances=0)
    with pytest.raises(ValueError):
        ExperimentConfig(methods=("magic",))
    with pytest.raises(ValueError):
        ExperimentConfig(timing="cpu")
    ExperimentConfig(methods=("pref", "pairwise:5"))


def test_run_experiment_row_shape(tmp_path):
    cfg = ExperimentConfig(
        problem="selection",
        sweep_param="S",
        sweep_values=(1, 2),
        n=6,
        K=3,
        instances=2,
        methods=("pref", "pairwise:2"),
        out_samples=5,
        seed=7,
    )
    out = tmp_path / "rows.csv"
    rows = run_experiment(cfg, out_csv=str(out))
    assert len(rows) == 2 * 2 * 2
    with open(out) as fh:
        reader = csv.reader(fh)
        header = next(reader)
    assert header == CSV_COLUMNS
    for row in rows:
        assert set(row) == set(CSV_COLUMNS)
        assert row["w_dist_2"] >= 0.0
        assert row["in_hamming"] >= 0.0
        assert row["runtime_ms"] == 0  # timing off by default


def test_run_experiment_deterministic_csv(tmp_path):
    cfg = ExperimentConfig(
        sweep_values=(1, 2), n=5, K=2, instances=2, methods=("pref",), out_samples=3, seed=3
    )
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run_experiment(cfg, out_csv=str(p1))
    run_experiment(cfg, out_csv=str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_run_experiment_explain_companion(tmp_path):
    cfg = ExperimentConfig(
        sweep_values=(2,), n=5, K=2, instances=1, methods=("pref",),
        out_samples=2, seed=1, explain_ratio_samples=20,
    )
    out = tmp_path / "r.csv"
    run_experiment(cfg, out_csv=str(out))
    companion = tmp_path / "r.csv.explain.csv"
    assert companion.exists()
    with open(companion) as fh:
        header = next(csv.reader(fh))
    assert header == ["sweep_value", "instance", "explain_ratio"]


def test_run_experiment_orness_sweep(tmp_path):
    cfg = ExperimentConfig(
        sweep_param="orness", sweep_values=(0.6, 0.9), n=5, K=3,
        S=2, instances=1, methods=("pref",), out_samples=2, seed=2,
    )
    rows = run_experiment(cfg)
    assert len(rows) == 2
    assert {r["sweep_value"] for r in rows} == {0.6, 0.9}


def test_instance_json_roundtrip(tmp_path):
    rng = np.random.default_rng(10)
    true_w = weights_from_orness(3, 0.8)
    obs = simulate_observations(true_w, "selection", 5, 2, 0.0, rng)
    path = tmp_path / "inst.json"
    save_instance(str(path), "selection", true_w, obs)
    w2, obs2 = load_instance(str(path))
    assert np.allclose(w2, true_w)
    assert len(obs2) == 2
    for a, b in zip(obs, obs2):
        assert np.allclose(a.cost_matrix, b.cost_matrix)
        assert np.array_equal(a.chosen, b.chosen)
        assert a.feasible_set == b.feasible_set


def test_instance_json_roundtrip_knapsack(tmp_path):
    rng = np.random.default_rng(11)
    true_w = weights_from_orness(2, 0.7)
    _, fs = generate_costs("knapsack", 5, 2, rng)
    obs = simulate_observations(true_w, "knapsack", 5, 2, 0.0, rng, shared_fs=fs)
    path = tmp_path / "inst.json"
    save_instance(str(path), "knapsack", true_w, obs)
    w2, obs2 = load_instance(str(path))
    assert obs2[0].feasible_set == fs


def test_write_csv_format(tmp_path):
    row = {c: 0 for c in CSV_COLUMNS}
    row["w_dist_2"] = 0.123456789012345
    path = tmp_path / "x.csv"
    write_csv([row], str(path))
    text = path.read_text()
    assert "0.123456789012" in text
