"""Request handlers shared by the HTTP endpoints and the CLI.

Each handler takes a validated request model, drives the core package,
and returns a response model.  No HTTP or terminal concerns in here.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..findings import build_findings
from ..lattice import build_tree
from ..model import ModelParams
from ..oracle import check_compatibility, finite_free_energy, partition_function, telescoping_check
from ..recursion import FieldQuad, scalar_root_quad, uniform_edge_field
from ..scan import AxisSpec, ScanGrid, render, run_scan
from ..solver import count_solutions, solve_nonsymmetric_k2, solve_ti_symmetric
from ..thermo import curve_csv, entropy_ti, free_energy_ti, thermo_curve
from . import schemas as s


def _root_out(r) -> s.RootOut:
    return s.RootOut(u=r.u, h=r.h, residual=r.residual, stability=r.stability)


def solve(req: s.ParamsIn) -> s.SolveResponse:
    params = req.to_params()
    sol = solve_ti_symmetric(params)
    cmp_ = count_solutions(params, solution=sol)
    return s.SolveResponse(
        params=s.ParamsOut.from_params(params),
        roots=[_root_out(r) for r in sol.roots],
        prop51=s.Prop51Out(prediction=cmp_.prediction(), empirical=cmp_.empirical,
                           agree=cmp_.agree),
    )


def nonsym(req: s.ParamsIn, grid: int = 60) -> s.SolveResponse:
    params = req.to_params()
    sols = solve_nonsymmetric_k2(params, grid=grid)
    return s.SolveResponse(
        params=s.ParamsOut.from_params(params),
        nonsym=[s.NonSymOut(x=c.x, m=c.m, t=c.t, residual=c.residual) for c in sols],
    )


def verify(req: s.VerifyRequest) -> s.VerifyResponse:
    params = req.to_params()
    if req.n < 2:
        raise DomainError("verify needs n >= 2")
    sol = solve_ti_symmetric(params)
    if not sol.roots:
        raise DomainError("no symmetric roots to verify")
    tree = build_tree(params.k, req.n)
    reports = []
    for root in sol.roots:
        quad = scalar_root_quad(root.u, params.weights())
        field = uniform_edge_field(tree, quad)
        tele = telescoping_check(params, field, req.n)
        reports.append(s.RootVerification(
            u=root.u, h=root.h, Z_n=tele.Z_n,
            compat_max_error=check_compatibility(params, field, req.n),
            telescoping_gap=tele.relative_gap,
            sector_spread=tele.max_sector_spread,
        ))
    return s.VerifyResponse(params=s.ParamsOut.from_params(params), n=req.n,
                            reports=reports)


def _oracle_field(req: s.OracleRequest, params: ModelParams) -> FieldQuad:
    spec = req.field.strip()
    if spec == "zero":
        return FieldQuad(0.0, 0.0, 0.0, 0.0)
    if spec.startswith("ti-root="):
        try:
            index = int(spec.split("=", 1)[1])
        except ValueError:
            raise DomainError(f"bad root index in field spec {spec!r}") from None
        sol = solve_ti_symmetric(params)
        if not 1 <= index <= sol.count:
            raise DomainError(f"root index {index} out of range 1..{sol.count}")
        return scalar_root_quad(sol.roots[index - 1].u, params.weights())
    raise DomainError(f"unknown field spec {spec!r}; use zero or ti-root=<i>")


def oracle(req: s.OracleRequest) -> s.OracleResponse:
    params = req.to_params()
    quad = _oracle_field(req, params)
    tree = build_tree(params.k, req.n)
    field = uniform_edge_field(tree, quad)
    z_n = partition_function(tree, params, field)
    compat = tele_gap = None
    if req.n >= 2:
        compat = check_compatibility(params, field, req.n)
        tele_gap = telescoping_check(params, field, req.n).relative_gap
    return s.OracleResponse(
        n=req.n, Z_n=z_n, compat_max_error=compat, telescoping_gap=tele_gap,
        free_energy_paper=finite_free_energy(params, field, req.n, "paper"),
        free_energy_physics=finite_free_energy(params, field, req.n, "physics"),
    )


def _parse_range(spec: str) -> np.ndarray:
    try:
        lo_s, hi_s, steps_s = spec.split(":")
        lo, hi, steps = float(lo_s), float(hi_s), int(steps_s)
    except ValueError:
        raise DomainError(f"bad range {spec!r}, expected a:b:steps") from None
    if steps < 1 or not lo <= hi or lo <= 0:
        raise DomainError(f"bad temperature range {spec!r}")
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


def _branch_values(params: ModelParams, req: s.CurveRequest):
    """Resolve the boundary values to evaluate: explicit h or solved roots."""
    if req.h is not None:
        return [(0, math.exp(req.h), req.h)]
    sol = solve_ti_symmetric(params)
    if not sol.roots:
        raise DomainError("no symmetric roots at these parameters")
    if req.root is None:
        return [(i + 1, r.u, r.h) for i, r in enumerate(sol.roots)]
    if not 1 <= req.root <= sol.count:
        raise DomainError(f"root index {req.root} out of range 1..{sol.count}")
    r = sol.roots[req.root - 1]
    return [(req.root, r.u, r.h)]


def thermo(req: s.CurveRequest) -> s.ThermoResponse:
    params = req.to_params()
    branches = []
    selected = _branch_values(params, req)
    for idx, u, h in selected:
        ent = entropy_ti(params, h)
        branches.append(s.BranchValue(root_index=idx, u=u, h=h,
                                      F=free_energy_ti(params, h),
                                      S_numeric=ent.numeric,
                                      S_paper_formula=ent.closed_form))
    resp = s.ThermoResponse(params=s.ParamsOut.from_params(params), branches=branches)
    if req.T_range is not None:
        idx, u, h = selected[0]
        rows = thermo_curve(params, h, _parse_range(req.T_range))
        resp.curve = [s.CurvePointOut(T=r.T, beta=r.beta, h=r.h, F=r.F,
                                      S_numeric=r.S_numeric,
                                      S_paper_formula=r.S_paper_formula)
                      for r in rows]
        resp.curve_csv = curve_csv(rows)
    return resp


def scan(req: s.ScanRequest) -> s.ScanResponse:
    axes = [AxisSpec(a.name, a.min, a.max, a.steps) for a in req.axes]
    grid = ScanGrid(axes=axes, k=req.k)
    # swept parameters get a placeholder that run_scan overwrites per cell
    values = {"J": req.J, "Jp": req.Jp, "T": req.T}
    for axis in axes:
        values[axis.name] = axis.lo
    base = ModelParams(J=values["J"], Jp=values["Jp"], T=values["T"], k=req.k)
    points = run_scan(grid, base)
    return s.ScanResponse(points=len(points), format=req.format,
                          body=render(points, req.format))


def findings() -> dict:
    return build_findings()
