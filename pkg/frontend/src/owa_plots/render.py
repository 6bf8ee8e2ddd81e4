"""Turn experiment CSV files into the standard figure layouts.

The input contract is the results CSV written by the elicitation package's
`experiment` command (and, for the explain-ratio kind, its companion
`<name>.explain.csv`). This module reads only those files; it does not import
the elicitation package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

KINDS = ("sweep_triptych", "orness_distance", "orness_worstcase_ratio", "explain_ratio")

TRIPTYCH_METRICS = [
    ("w_dist_2", "preference distance (2-norm)"),
    ("in_hamming", "in-sample Hamming"),
    ("out_hamming", "out-of-sample Hamming"),
]

METHOD_LABELS = {
    "pref": "(Pref)",
    "altpref": "(Pref')",
    "compact": "compact",
}


class RenderError(ValueError):
    """Input CSV cannot be rendered (missing columns, no data rows)."""


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    kind: str
    out_path: str
    band: Optional[str] = None  # None or "stddev"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RenderError(f"unknown plot kind {self.kind!r}")
        if self.band not in (None, "stddev"):
            raise RenderError(f"unknown band mode {self.band!r}")


def method_label(method: str) -> str:
    if method.startswith("pairwise:"):
        return "pairwise-" + method.split(":", 1)[1]
    return METHOD_LABELS.get(method, method)


def _load(spec: PlotSpec, required: list[str]) -> pd.DataFrame:
    try:
        df = pd.read_csv(spec.csv_path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise RenderError(f"cannot parse {spec.csv_path}: {exc}") from exc
    missing = [c for c in required if c not in df.columns]
    if missing:
        raise RenderError(f"missing columns in {spec.csv_path}: {', '.join(missing)}")
    if df.empty:
        raise RenderError(f"no data rows in {spec.csv_path}")
    return df


def _series(ax, df: pd.DataFrame, metric: str, band: Optional[str]) -> None:
    for method, group in df.groupby("method", sort=False):
        stats = group.groupby("sweep_value")[metric].agg(["mean", "std"]).reset_index()
        ax.plot(stats["sweep_value"], stats["mean"], marker="o", label=method_label(method))
        if band == "stddev":
            ax.fill_between(
                stats["sweep_value"],
                stats["mean"] - stats["std"].fillna(0.0),
                stats["mean"] + stats["std"].fillna(0.0),
                alpha=0.2,
            )


def _sweep_axis(ax, df: pd.DataFrame) -> None:
    param = str(df["sweep_param"].iloc[0])
    ax.set_xlabel(param)
    if param == "S":
        ax.set_xscale("log", base=2)


def render(spec: PlotSpec) -> str:
    """Render the figure described by spec; returns the written path."""
    if spec.kind == "sweep_triptych":
        df = _load(spec, ["sweep_param", "sweep_value", "method"] + [m for m, _ in TRIPTYCH_METRICS])
        fig, axes = plt.subplots(1, 3, figsize=(13, 4))
        for ax, (metric, title) in zip(axes, TRIPTYCH_METRICS):
            _series(ax, df, metric, spec.band)
            _sweep_axis(ax, df)
            ax.set_ylabel(title)
            ax.grid(True, alpha=0.3)
        axes[0].legend()
    elif spec.kind == "orness_distance":
        df = _load(spec, ["sweep_value", "method", "w_dist_2"])
        fig, ax = plt.subplots(figsize=(5.5, 4))
        _series(ax, df, "w_dist_2", spec.band)
        ax.set_xlabel("true orness")
        ax.set_ylabel("preference distance (2-norm)")
        ax.grid(True, alpha=0.3)
        ax.legend()
    elif spec.kind == "orness_worstcase_ratio":
        df = _load(spec, ["sweep_value", "method", "is_worstcase_vector"])
        fig, ax = plt.subplots(figsize=(5.5, 4))
        _series(ax, df, "is_worstcase_vector", spec.band)
        ax.set_xlabel("true orness")
        ax.set_ylabel("fraction elicited as (1, 0, ..., 0)")
        ax.set_ylim(-0.05, 1.05)
        ax.grid(True, alpha=0.3)
        ax.legend()
    else:  # explain_ratio: companion CSV with per-instance ratios
        df = _load(spec, ["sweep_value", "explain_ratio"])
        fig, ax = plt.subplots(figsize=(5.5, 4))
        stats = df.groupby("sweep_value")["explain_ratio"].agg(["mean", "std"]).reset_index()
        ax.plot(stats["sweep_value"], stats["mean"], marker="o")
        if spec.band == "stddev":
            ax.fill_between(
                stats["sweep_value"],
                stats["mean"] - stats["std"].fillna(0.0),
                stats["mean"] + stats["std"].fillna(0.0),
                alpha=0.2,
            )
        ax.set_xlabel("sweep value")
        ax.set_ylabel("fraction of random vectors explaining all observations")
        ax.set_ylim(-0.05, 1.05)
        ax.grid(True, alpha=0.3)

    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=150)
    plt.close(fig)
    return spec.out_path
