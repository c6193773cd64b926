"""Parameter sweeps over (J, Jp, T) grids with per-point classification.

Each grid cell gets the symmetric root set, the free energy and numeric
entropy per branch, the multi-measure threshold flag beta*Jp > ln(3)/2,
and the agreement flag against the published uniqueness criterion.  Roots
are reported ascending (u1 < u2 < u3), so branch columns are stable across
adjacent cells except where branches fold; fold bookkeeping is left to the
consumer (see README).

Output is CSV or JSON with a fixed column set and repr-exact floats, so
two runs of the same grid are byte-identical.
"""

from __future__ import annotations

import io
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .model import ModelParams
from .solver import count_solutions, solve_ti_symmetric
from .thermo import entropy_ti, free_energy_ti

MAX_POINTS = 10 ** 7
TRANSITION_THRESHOLD = math.log(3.0) / 2.0

CSV_COLUMNS = ("J", "Jp", "T", "beta", "c", "d", "n_roots",
               "u1", "u2", "u3", "F1", "F2", "F3", "S1", "S2", "S3",
               "transition", "prop51_agree")

_AXIS_NAMES = ("J", "Jp", "T")


@dataclass(frozen=True)
class AxisSpec:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.name not in _AXIS_NAMES:
            raise DomainError(f"unknown axis {self.name!r}; valid: {_AXIS_NAMES}")
        if self.steps < 1:
            raise DomainError("axis steps must be >= 1")
        if not self.lo <= self.hi:
            raise DomainError(f"axis {self.name}: min {self.lo} > max {self.hi}")
        if self.name == "T" and self.lo <= 0:
            raise DomainError("T axis must be strictly positive")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.lo])
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass
class ScanGrid:
    axes: list[AxisSpec]
    k: int = 2

    def __post_init__(self):
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise DomainError("duplicate scan axes")
        total = 1
        for a in self.axes:
            total *= a.steps
        if total > MAX_POINTS:
            raise DomainError(f"grid has {total} points, above the cap of {MAX_POINTS}")
        self.total = total


@dataclass
class PhasePoint:
    J: float
    Jp: float
    T: float
    beta: float
    c: float
    d: float
    n_roots: int
    roots: list[float]
    F: list[float]
    S: list[float]
    transition: bool
    prop51_agree: bool | None


def classify_point(params: ModelParams) -> PhasePoint:
    sol = solve_ti_symmetric(params)
    w = params.weights()
    roots = sol.us()
    fs = [free_energy_ti(params, math.log(u)) for u in roots]
    ss = [entropy_ti(params, math.log(u)).numeric for u in roots]
    comparison = count_solutions(params, solution=sol)
    return PhasePoint(
        J=params.J, Jp=params.Jp, T=params.T, beta=params.beta,
        c=w.c, d=w.d, n_roots=sol.count, roots=roots, F=fs, S=ss,
        transition=params.beta * params.Jp > TRANSITION_THRESHOLD,
        prop51_agree=comparison.agree,
    )


def run_scan(grid: ScanGrid, base: ModelParams) -> list[PhasePoint]:
    """One PhasePoint per grid cell, row-major in the axis order given."""
    base = replace(base, k=grid.k)
    axis_values = [axis.values() for axis in grid.axes]
    names = [axis.name for axis in grid.axes]
    points = []
    indices = np.ndindex(*(len(v) for v in axis_values)) if grid.axes else [()]
    for idx in indices:
        updates = {name: float(vals[i]) for name, vals, i in zip(names, axis_values, idx)}
        points.append(classify_point(replace(base, **updates)))
    return points


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _point_record(p: PhasePoint) -> dict:
    padded = lambda xs: [float(x) for x in xs] + [None] * (3 - len(xs))
    u1, u2, u3 = padded(p.roots)
    f1, f2, f3 = padded(p.F)
    s1, s2, s3 = padded(p.S)
    return {
        "J": p.J, "Jp": p.Jp, "T": p.T, "beta": p.beta, "c": p.c, "d": p.d,
        "n_roots": p.n_roots, "u1": u1, "u2": u2, "u3": u3,
        "F1": f1, "F2": f2, "F3": f3, "S1": s1, "S2": s2, "S3": s3,
        "transition": p.transition, "prop51_agree": p.prop51_agree,
    }


def render(points: list[PhasePoint], fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for p in points:
            rec = _point_record(p)
            buf.write(",".join(_cell(rec[col]) for col in CSV_COLUMNS) + "\n")
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([_point_record(p) for p in points], indent=1) + "\n"
    raise DomainError(f"unknown format {fmt!r}; valid: csv, json")


def emit(points: list[PhasePoint], fmt: str = "csv", destination=None) -> None:
    """Write rendered points to a path, or stdout when destination is None."""
    text = render(points, fmt)
    if destination is None or destination == "-":
        sys.stdout.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write scan output to {destination}: {exc}") from exc
