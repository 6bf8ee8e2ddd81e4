"""Thin mixed-binary linear program builder on top of scipy's HiGHS interface."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping, Optional

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix

FEAS_TOL = 1e-6

Status = Literal[
    "optimal",
    "infeasible",
    "unbounded",
    "time_limit_with_incumbent",
    "time_limit_no_incumbent",
]


class ProgramError(ValueError):
    """Malformed program: undeclared variable or inconsistent bounds."""


class SolverError(RuntimeError):
    """Backend failed in a way the status vocabulary cannot express."""


@dataclass
class _Var:
    name: str
    kind: str  # "continuous" | "binary"
    lb: float
    ub: float


@dataclass
class SolveOutcome:
    status: Status
    objective: Optional[float]
    values: Optional[dict[str, float]]

    def __getitem__(self, name: str) -> float:
        if self.values is None:
            raise KeyError(f"no assignment available (status={self.status})")
        return self.values[name]


class MathProgram:
    """A minimization LP/MILP assembled incrementally by variable name."""

    def __init__(self, time_limit: Optional[float] = None):
        self._vars: dict[str, _Var] = {}
        self._rows: list[tuple[dict[str, float], str, float]] = []
        self._obj: dict[str, float] = {}
        self.time_limit = time_limit

    def add_var(
        self,
        name: str,
        kind: str = "continuous",
        lb: float = 0.0,
        ub: float = math.inf,
    ) -> str:
        if name in self._vars:
            raise ProgramError(f"variable {name!r} declared twice")
        if kind not in ("continuous", "binary"):
            raise ProgramError(f"unknown variable kind {kind!r}")
        if kind == "binary":
            lb, ub = 0.0, 1.0
        if lb > ub:
            raise ProgramError(f"inconsistent bounds for {name!r}: [{lb}, {ub}]")
        self._vars[name] = _Var(name, kind, lb, ub)
        return name

    def add_constr(self, coeffs: Mapping[str, float], sense: str, rhs: float) -> None:
        if sense not in ("<=", "=", ">="):
            raise ProgramError(f"unknown sense {sense!r}")
        for name in coeffs:
            if name not in self._vars:
                raise ProgramError(f"constraint references undeclared variable {name!r}")
        self._rows.append((dict(coeffs), sense, float(rhs)))

    def set_objective(self, coeffs: Mapping[str, float]) -> None:
        for name in coeffs:
            if name not in self._vars:
                raise ProgramError(f"objective references undeclared variable {name!r}")
        self._obj = dict(coeffs)

    @property
    def num_vars(self) -> int:
        return len(self._vars)

    def to_lp_text(self) -> str:
        """Human-readable LP-format dump for debugging."""
        lines = ["Minimize"]
        obj = " + ".join(f"{c:g} {v}" for v, c in self._obj.items()) or "0"
        lines.append(f"  obj: {obj}")
        lines.append("Subject To")
        for i, (coeffs, sense, rhs) in enumerate(self._rows):
            lhs = " + ".join(f"{c:g} {v}" for v, c in coeffs.items())
            lines.append(f"  c{i}: {lhs} {sense} {rhs:g}")
        lines.append("Bounds")
        for v in self._vars.values():
            lines.append(f"  {v.lb:g} <= {v.name} <= {v.ub:g}")
        binaries = [v.name for v in self._vars.values() if v.kind == "binary"]
        if binaries:
            lines.append("Binary")
            lines.append("  " + " ".join(binaries))
        lines.append("End")
        return "\n".join(lines)


def solve_program(program: MathProgram) -> SolveOutcome:
    """Solve the program with HiGHS; map its result to the status vocabulary."""
    names = list(program._vars)
    index = {name: i for i, name in enumerate(names)}
    nvar = len(names)
    if nvar == 0:
        raise ProgramError("program has no variables")

    lb = np.array([program._vars[n].lb for n in names])
    ub = np.array([program._vars[n].ub for n in names])
    integrality = np.array(
        [1 if program._vars[n].kind == "binary" else 0 for n in names]
    )
    c = np.zeros(nvar)
    for name, coef in program._obj.items():
        c[index[name]] = coef

    constraints = []
    if program._rows:
        data, rows, cols, clb, cub = [], [], [], [], []
        for r, (coeffs, sense, rhs) in enumerate(program._rows):
            for name, coef in coeffs.items():
                rows.append(r)
                cols.append(index[name])
                data.append(coef)
            if sense == "<=":
                clb.append(-np.inf)
                cub.append(rhs)
            elif sense == ">=":
                clb.append(rhs)
                cub.append(np.inf)
            else:
                clb.append(rhs)
                cub.append(rhs)
        A = csr_matrix((data, (rows, cols)), shape=(len(program._rows), nvar))
        constraints = [LinearConstraint(A, clb, cub)]

    options: dict = {"presolve": True}
    if program.time_limit is not None:
        options["time_limit"] = float(program.time_limit)

    res = milp(
        c=c,
        integrality=integrality,
        bounds=Bounds(lb, ub),
        constraints=constraints,
        options=options,
    )

    if res.status == 0:
        values = {name: float(res.x[index[name]]) for name in names}
        return SolveOutcome("optimal", float(res.fun), values)
    if res.status == 1:
        if res.x is not None:
            values = {name: float(res.x[index[name]]) for name in names}
            return SolveOutcome("time_limit_with_incumbent", float(res.fun), values)
        return SolveOutcome("time_limit_no_incumbent", None, None)
    if res.status == 2:
        return SolveOutcome("infeasible", None, None)
    if res.status == 3:
        return SolveOutcome("unbounded", None, None)
    raise SolverError(f"backend failure: {res.message}")
