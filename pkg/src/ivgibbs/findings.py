"""Documented discrepancies between published statements and computation.

The source analysis this artifact implements contains a handful of
internal inconsistencies.  Rather than silently picking a side, the
solver follows the variant that survives independent verification and
this module emits a machine-readable report with the numeric evidence
for each conflict.  Nothing here is asserted in tests beyond "the report
exists and carries numbers": the point is documentation, not resolution.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .lattice import build_tree
from .model import ModelParams
from .oracle import edge_ratio, finite_free_energy
from .recursion import scalar_root_quad, uniform_edge_field
from .solver import count_solutions, solve_ti_symmetric, symmetric_polynomial
from .polyroots import positive_roots
from .thermo import b_factor, free_energy_ti

# the worked-example point used throughout the published analysis
EXAMPLE = ModelParams(J=-1.85, Jp=4.5, T=2.6, k=2)


def _uniqueness_entry(params: ModelParams) -> dict:
    sol = solve_ti_symmetric(params)
    cmp_ = count_solutions(params, solution=sol)
    roots = sol.us()
    return {
        "id": "uniqueness-criterion-vs-root-count",
        "summary": (
            "The published uniqueness criterion for the scalar fixed-point "
            "equation ('one solution if c <= 1 or d < 3') predicts a single "
            "root at the worked-example point even though three roots are "
            "printed there and verified here by Vieta's formulas."
        ),
        "params": {"J": params.J, "Jp": params.Jp, "T": params.T, "k": params.k},
        "c": cmp_.c,
        "d": cmp_.d,
        "literal_prediction": cmp_.prediction(),
        "empirical_count": cmp_.empirical,
        "agree": cmp_.agree,
        "roots": roots,
        "vieta": {
            "root_sum": math.fsum(roots),
            "expected_sum_d": cmp_.d,
            "root_product": math.prod(roots),
            "expected_product_1_over_c": 1.0 / cmp_.c,
        },
    }


def _sign_entry(params: ModelParams) -> dict:
    sol = solve_ti_symmetric(params)
    u = sol.us()[min(1, sol.count - 1)]
    quad = scalar_root_quad(u, params.weights())
    seq = []
    for n in (1, 2, 3):
        tree = build_tree(params.k, n)
        field = uniform_edge_field(tree, quad)
        seq.append({
            "n": n,
            "plus_sign": finite_free_energy(params, field, n, "paper"),
            "minus_sign": finite_free_energy(params, field, n, "physics"),
        })
    return {
        "id": "free-energy-sign-convention",
        "summary": (
            "The defining finite-volume limit of the free energy is printed "
            "with a plus sign while the closed-form result carries the "
            "customary minus; the finite-volume sequence below is negative "
            "under the minus convention and positive under the plus, so the "
            "two published displays cannot both be literal."
        ),
        "params": {"J": params.J, "Jp": params.Jp, "T": params.T, "k": params.k},
        "boundary_root_u": u,
        "finite_volume_sequence": seq,
        "closed_form_minus_sign": free_energy_ti(params, math.log(u)),
    }


def _coefficient_entry(params: ModelParams) -> dict:
    w = params.weights()
    k = params.k
    sol = solve_ti_symmetric(params)
    u = sol.us()[min(1, sol.count - 1)]
    z = w.B * w.A * u * u
    lhs = ((z + 1.0) / (z + w.B * w.B)) ** k
    derived_rhs = z / (w.A * w.B ** (k + 1))
    printed_rhs = (w.B ** (k - 1) / w.A) * z
    derived_roots = positive_roots(symmetric_polynomial(w, k, "derived"))
    printed_roots = positive_roots(symmetric_polynomial(w, k, "printed"))
    return {
        "id": "symmetric-reduction-coefficient",
        "summary": (
            "Rederiving the symmetric one-variable reduction gives the "
            "right-hand coefficient 1/(A B^(k+1)); the printed reduction "
            "carries B^(k-1)/A instead.  The two agree only for B = 1. "
            "The derived form reproduces the k=2 cubic and its published "
            "roots; the printed form does not, as the residuals at a "
            "verified root show."
        ),
        "params": {"J": params.J, "Jp": params.Jp, "T": params.T, "k": params.k},
        "z_at_verified_root": z,
        "lhs_power_value": lhs,
        "derived_rhs": derived_rhs,
        "printed_rhs": printed_rhs,
        "residual_derived": abs(lhs - derived_rhs),
        "residual_printed": abs(lhs - printed_rhs),
        "positive_root_count_derived": len(derived_roots),
        "positive_root_count_printed": len(printed_roots),
    }


def _edge_factor_entry(params: ModelParams) -> dict:
    sol = solve_ti_symmetric(params)
    u = sol.us()[min(1, sol.count - 1)]
    h = math.log(u)
    quad = scalar_root_quad(u, params.weights())
    tree = build_tree(params.k, 2)
    field = uniform_edge_field(tree, quad)
    edge = tree.shell_edges(1)[0]
    measured, spread = edge_ratio(tree, params, field, edge)
    verbatim = 4.0 * b_factor(params, h, h) ** params.k
    return {
        "id": "edge-ratio-factor-probe",
        "summary": (
            "The published per-edge product factor keeps (h1 - h2)/2 inside "
            "its cosh arguments; the directly measured edge ratio matches "
            "the midpoint form (h1 + h2)/2 instead, so at equal boundary "
            "values h != 0 the verbatim factor misses the measured ratio."
        ),
        "params": {"J": params.J, "Jp": params.Jp, "T": params.T, "k": params.k},
        "boundary_root_u": u,
        "measured_edge_ratio": measured,
        "sector_spread": spread,
        "verbatim_factor_value": verbatim,
        "relative_gap": abs(measured - verbatim) / measured,
    }


def _excluded_entry(params: ModelParams) -> dict:
    sol = solve_ti_symmetric(params)
    return {
        "id": "figure-free-energy-values-excluded",
        "summary": (
            "The published free-energy figure labels its curves with fixed "
            "points 0.260261 (twice) and 1.18483 for these couplings without "
            "stating the temperature used.  At T = 2.6 the fixed points are "
            "the ones listed below, so the figure values are not reproducible "
            "as stated and are excluded from verification."
        ),
        "params": {"J": params.J, "Jp": params.Jp, "T": params.T, "k": params.k},
        "figure_values": [0.260261, 0.260261, 1.18483],
        "computed_fixed_points_at_T_2_6": sol.us(),
    }


def build_findings(params: ModelParams = EXAMPLE) -> dict:
    return {
        "artifact": "ivgibbs",
        "description": "numeric evidence for documented discrepancies",
        "entries": [
            _uniqueness_entry(params),
            _sign_entry(params),
            _coefficient_entry(params),
            _edge_factor_entry(params),
            _excluded_entry(params),
        ],
    }


def write_findings(destination, findings: dict | None = None) -> dict:
    if findings is None:
        findings = build_findings()
    Path(destination).write_text(json.dumps(findings, indent=1) + "\n", encoding="utf-8")
    return findings
