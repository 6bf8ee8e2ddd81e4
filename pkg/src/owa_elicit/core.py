"""Domain types and numeric primitives shared across the package.

Weight vectors, cost matrices and solutions are plain numpy arrays; the
dataclasses below only carry structure that an array cannot (feasible-set
shape, observation pairing).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterator, Literal, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

SIMPLEX_TOL = 1e-9

Norm = Literal["one", "two", "inf"]


class DimensionMismatchError(ValueError):
    """Raised when vector/matrix shapes do not agree."""


# ---------------------------------------------------------------------------
# feasible sets


@dataclass(frozen=True)
class Selection:
    """Choose exactly p out of n items."""

    n: int
    p: int

    def __post_init__(self):
        if not 1 <= self.p <= self.n:
            raise ValueError(f"need 1 <= p <= n, got p={self.p}, n={self.n}")

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class Assignment:
    """n x n assignment; solutions are permutation matrices flattened row-major."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n * self.n


@dataclass(frozen=True)
class MinKnapsack:
    """Cover at least `capacity` total weight with the selected items."""

    n: int
    item_weights: tuple[float, ...]
    capacity: float

    def __post_init__(self):
        if len(self.item_weights) != self.n:
            raise ValueError("item_weights length must equal n")
        if self.capacity > sum(self.item_weights) + 1e-12:
            raise ValueError("capacity exceeds total item weight; feasible set empty")

    @property
    def dim(self) -> int:
        return self.n


FeasibleSet = Union[Selection, Assignment, MinKnapsack]


def is_feasible(fs: FeasibleSet, x: ArrayLike, tol: float = 1e-9) -> bool:
    """Check that binary vector x lies in the feasible set."""
    x = np.asarray(x)
    if x.shape != (fs.dim,):
        raise DimensionMismatchError(f"solution has shape {x.shape}, expected ({fs.dim},)")
    if not np.all((np.abs(x) < tol) | (np.abs(x - 1) < tol)):
        return False
    xb = np.round(x).astype(int)
    if isinstance(fs, Selection):
        return int(xb.sum()) == fs.p
    if isinstance(fs, Assignment):
        m = xb.reshape(fs.n, fs.n)
        return bool(np.all(m.sum(axis=0) == 1) and np.all(m.sum(axis=1) == 1))
    if isinstance(fs, MinKnapsack):
        return float(np.dot(fs.item_weights, xb)) >= fs.capacity - tol
    raise TypeError(f"unknown feasible set {fs!r}")


def count_solutions(fs: FeasibleSet) -> int:
    if isinstance(fs, Selection):
        from math import comb

        return comb(fs.n, fs.p)
    if isinstance(fs, Assignment):
        from math import factorial

        return factorial(fs.n)
    if isinstance(fs, MinKnapsack):
        return 2**fs.n  # upper bound; actual membership filtered on iteration
    raise TypeError(f"unknown feasible set {fs!r}")


def enumerate_solutions(fs: FeasibleSet, limit: int = 10**6) -> Iterator[NDArray[np.int_]]:
    """Yield every feasible binary solution. Guarded by `limit`."""
    if count_solutions(fs) > limit:
        raise ValueError(f"feasible set too large to enumerate (> {limit})")
    if isinstance(fs, Selection):
        for idx in itertools.combinations(range(fs.n), fs.p):
            x = np.zeros(fs.n, dtype=int)
            x[list(idx)] = 1
            yield x
    elif isinstance(fs, Assignment):
        for perm in itertools.permutations(range(fs.n)):
            m = np.zeros((fs.n, fs.n), dtype=int)
            for i, j in enumerate(perm):
                m[i, j] = 1
            yield m.reshape(-1)
    elif isinstance(fs, MinKnapsack):
        w = np.asarray(fs.item_weights)
        for bits in itertools.product((0, 1), repeat=fs.n):
            x = np.array(bits, dtype=int)
            if float(w @ x) >= fs.capacity - 1e-9:
                yield x
    else:
        raise TypeError(f"unknown feasible set {fs!r}")


# ---------------------------------------------------------------------------
# weight vectors


def check_weights(w: ArrayLike, risk_averse: bool = True, tol: float = SIMPLEX_TOL) -> NDArray[np.float64]:
    """Validate a preference vector: in [0,1], sums to 1; optionally non-increasing."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise ValueError("weight vector must be a nonempty 1-d array")
    if np.any(w < -tol) or np.any(w > 1 + tol):
        raise ValueError(f"weights outside [0,1]: {w}")
    if abs(w.sum() - 1.0) > max(tol, 1e-9 * w.size):
        raise ValueError(f"weights sum to {w.sum()}, expected 1")
    if risk_averse and np.any(np.diff(w) > tol):
        raise ValueError(f"weights not non-increasing: {w}")
    return w


def project_weights(w: ArrayLike, risk_averse: bool = True) -> NDArray[np.float64]:
    """Clamp solver round-off: negatives to 0, renormalize, optionally re-sort."""
    w = np.clip(np.asarray(w, dtype=float), 0.0, None)
    s = w.sum()
    if s <= 0:
        raise ValueError("cannot project an all-zero weight vector")
    w = w / s
    if risk_averse:
        w = np.sort(w)[::-1]
    return w


# ---------------------------------------------------------------------------
# observations


@dataclass(frozen=True)
class Observation:
    """One historic decision: normalized costs, the chosen solution, its feasible set."""

    cost_matrix: NDArray[np.float64]
    chosen: NDArray[np.int_]
    feasible_set: FeasibleSet

    def __post_init__(self):
        C = np.asarray(self.cost_matrix, dtype=float)
        x = np.asarray(self.chosen)
        object.__setattr__(self, "cost_matrix", C)
        object.__setattr__(self, "chosen", np.round(x).astype(int))
        if C.ndim != 2 or C.shape[1] != self.feasible_set.dim:
            raise DimensionMismatchError(
                f"cost matrix shape {C.shape} incompatible with feasible set dim {self.feasible_set.dim}"
            )
        if not is_feasible(self.feasible_set, self.chosen):
            raise ValueError("chosen solution is not feasible")

    @property
    def num_objectives(self) -> int:
        return self.cost_matrix.shape[0]


@dataclass(frozen=True)
class SortedObjectives:
    """Objective values of one solution, sorted from worst (largest) to best."""

    values: NDArray[np.float64]
    permutation: NDArray[np.int_]  # permutation[k] = original row index of values[k]


# ---------------------------------------------------------------------------
# numeric primitives


def sort_objectives(C: ArrayLike, x: ArrayLike) -> SortedObjectives:
    """Sort the K objective values of x descending; stable (lowest row index first on ties)."""
    C = np.asarray(C, dtype=float)
    x = np.asarray(x, dtype=float)
    if C.ndim != 2 or x.ndim != 1 or C.shape[1] != x.size:
        raise DimensionMismatchError(f"C has shape {C.shape}, x has shape {x.shape}")
    vals = C @ x
    order = np.argsort(-vals, kind="stable")
    return SortedObjectives(values=vals[order], permutation=order)


def owa_value(w: ArrayLike, C: ArrayLike, x: ArrayLike) -> float:
    """Ordered weighted average of the objective values of x under weights w."""
    w = np.asarray(w, dtype=float)
    a = sort_objectives(C, x).values
    if w.size != a.size:
        raise DimensionMismatchError(f"{w.size} weights for {a.size} objectives")
    return float(w @ a)


def orness(w: ArrayLike) -> float:
    """Attitudinal character of w: 1 = worst case, 0.5 = plain average (risk-averse range)."""
    w = np.asarray(w, dtype=float)
    K = w.size
    if K < 2:
        raise ValueError("orness is undefined for a single weight")
    k = np.arange(1, K + 1)
    return float((K - k) @ w / (K - 1))


def hamming(x: ArrayLike, y: ArrayLike) -> int:
    """Number of differing entries of two binary vectors."""
    x = np.round(np.asarray(x)).astype(int)
    y = np.round(np.asarray(y)).astype(int)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"shapes {x.shape} vs {y.shape}")
    return int(np.sum(x != y))


def vector_distance(w: ArrayLike, v: ArrayLike, norm: Norm = "one") -> float:
    """p-norm distance between two weight vectors."""
    w = np.asarray(w, dtype=float)
    v = np.asarray(v, dtype=float)
    if w.shape != v.shape:
        raise DimensionMismatchError(f"shapes {w.shape} vs {v.shape}")
    d = w - v
    if norm == "one":
        return float(np.abs(d).sum())
    if norm == "two":
        return float(np.sqrt((d * d).sum()))
    if norm == "inf":
        return float(np.abs(d).max())
    raise ValueError(f"unknown norm {norm!r}")


def min_max_normalize(raw: ArrayLike) -> NDArray[np.float64]:
    """Rescale each cost row to [0,1]; a constant row maps to zeros with a warning."""
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 2:
        raise DimensionMismatchError("cost matrix must be 2-d")
    lo = raw.min(axis=1, keepdims=True)
    hi = raw.max(axis=1, keepdims=True)
    span = hi - lo
    out = np.zeros_like(raw)
    flat = (span == 0).ravel()
    if flat.any():
        warnings.warn("constant cost row(s) normalized to all-zeros", stacklevel=2)
    nz = ~flat
    out[nz] = (raw[nz] - lo[nz]) / span[nz]
    return out
