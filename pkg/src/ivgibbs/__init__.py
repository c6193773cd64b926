"""Gibbs measures of the Ising-Vannimenus model on Cayley trees.

Core pipeline: build finite tree truncations (lattice), attach coupling
weights (model), express consistency of finite-volume measures as
per-edge functional equations (recursion), enumerate small volumes
exactly as ground truth (oracle), find and classify translation-invariant
solutions (solver), evaluate closed-form free energy and entropy (thermo),
sweep parameter grids (scan), and document published-vs-computed
discrepancies (findings).  A FastAPI service and a thin CLI sit on top.
"""

__version__ = "0.1.0"

from .errors import DomainError, EnumerationCapError
from .lattice import (
    ENUMERATION_CAP,
    Configuration,
    FiniteTree,
    build_tree,
    concat,
    enumerate_configs,
    volume_size,
)
from .model import ModelParams, ReducedWeights, energy, weights
from .recursion import (
    EdgeField,
    FieldQuad,
    TIField,
    UField,
    UTriple,
    canonic_residual,
    h_from_u,
    scalar_root_quad,
    ti_map,
    ti_residual,
    u_from_h,
    uniform_edge_field,
    uniform_u_field,
    xyz_residual,
)
from .oracle import (
    FiniteGibbs,
    TelescopingResult,
    check_compatibility,
    edge_ratio,
    finite_free_energy,
    finite_gibbs,
    partition_function,
    telescoping_check,
)
from .solver import (
    CriterionComparison,
    NonSymSolution,
    PrestonClassification,
    SolutionSet,
    TIRoot,
    classify_symmetry,
    count_solutions,
    preston_classify,
    solve_nonsymmetric_k2,
    solve_ti_symmetric,
)
from .thermo import (
    EntropyResult,
    ThermoResult,
    b_factor,
    entropy_paper_formula,
    entropy_ti,
    free_energy_general,
    free_energy_ti,
    thermo_curve,
    ti_thermo_report,
)
from .scan import AxisSpec, PhasePoint, ScanGrid, emit, render, run_scan
from .findings import build_findings, write_findings

__all__ = [name for name in dir() if not name.startswith("_")]
