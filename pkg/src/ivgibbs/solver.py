"""Translation-invariant solutions: symmetric fixed points and beyond.

Symmetric branch.  With an edge independent triple u1 = u2 = u3 = U the
recursion collapses to U = A ((B U + 1)/(U + B))^k.  In the scalar
variable u = sqrt(U/A) (the boundary value is h = ln u) and the aliases
c = A, d = B this is u = g(u) with

    g(u) = (c d u^2 + 1) / (c u^2 + d),

whose positive fixed points for k = 2 are the positive roots of the cubic

    c u^3 - c d u^2 + d u - 1 = 0.

For general k we clear denominators in z = B U:

    z (z + B^2)^k - A B^(k+1) (z + 1)^k = 0          ("derived")

The published reduction instead carries the coefficient B^(k-1)/A on the
right-hand side ("printed"); the two disagree for B != 1, and the printed
variant does not reproduce the k = 2 cubic.  Both are implemented behind a
flag, with the derived form the default; the findings report carries the
numeric evidence.

Non-symmetric branch (k = 2).  Writing the root-scaled unknowns as
(x, m x, t x) with m, t != 1, m != t, the system reduces to two algebraic
equations in (m, t),

    b^2 (m^2 - m)(1 - t^3) = (m - t^2)(m^2 t - 1)
    atil^2 (m^2 t - 1)^2   = b (m^2 - m)(m - t^2)

with atil = A^(1/2), b = B, plus the admissibility band 1 < t < m^-2 or
m^-2 < t < 1; x is recovered as atil * (m^2 t - 1) / (b t (m^2 - m)).
These are solved by damped Newton from a multistart grid and every
candidate is re-verified against the full three-equation system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import ModelParams, ReducedWeights
from .polyroots import positive_roots
from .recursion import xyz_residual

ROOT_RESIDUAL_TOL = 1e-9
ROOT_SEPARATION_RTOL = 1e-7
MARGINAL_STABILITY_BAND = 1e-8


@dataclass(frozen=True)
class TIRoot:
    u: float
    h: float
    residual: float
    stability: str


@dataclass
class SolutionSet:
    params: ModelParams
    roots: list[TIRoot]
    variant: str = "derived"

    @property
    def count(self) -> int:
        return len(self.roots)

    def us(self) -> list[float]:
        return [r.u for r in self.roots]


@dataclass
class PrestonClassification:
    regime: str                      # "unique" | "boundary" | "three"
    eta1: float | None = None
    eta2: float | None = None
    x1: float | None = None
    x2: float | None = None


@dataclass(frozen=True)
class NonSymSolution:
    x: float
    m: float
    t: float
    residual: float


@dataclass
class CriterionComparison:
    """Published k=2 uniqueness criterion vs the computed root count.

    The literal criterion predicts a single solution whenever c <= 1 or
    d < 3, and otherwise allows one to three.  Serialized under the wire
    key "prop51"; disagreements are reported, never suppressed.
    """

    empirical: int
    prediction_low: int | None
    prediction_high: int | None
    agree: bool | None
    c: float = 0.0
    d: float = 0.0

    def prediction(self):
        if self.prediction_low is None:
            return None
        if self.prediction_low == self.prediction_high:
            return self.prediction_low
        return (self.prediction_low, self.prediction_high)


def scalar_map(u: float, w: ReducedWeights, k: int = 2) -> float:
    """g_k(u) = ((c d u^2 + 1)/(c u^2 + d))^(k/2); fixed points are TI roots."""
    base = (w.c * w.d * u * u + 1.0) / (w.c * u * u + w.d)
    return base ** (k / 2.0)


def scalar_map_derivative(u: float, w: ReducedWeights, k: int = 2) -> float:
    c, d = w.c, w.d
    base = (c * d * u * u + 1.0) / (c * u * u + d)
    dbase = 2.0 * c * u * (d * d - 1.0) / (c * u * u + d) ** 2
    return (k / 2.0) * base ** (k / 2.0 - 1.0) * dbase


def symmetric_polynomial(w: ReducedWeights, k: int, variant: str = "derived") -> np.ndarray:
    """Denominator-cleared symmetric fixed-point polynomial.

    k = 2, derived: cubic in the scalar u.  Otherwise: degree-(k+1)
    polynomial in z = B A u^2 (coefficients highest first).
    """
    if variant not in ("derived", "printed"):
        raise DomainError(f"unknown variant {variant!r}")
    if k == 2 and variant == "derived":
        return np.array([w.c, -w.c * w.d, w.d, -1.0])
    lin = np.array([1.0, w.B * w.B])          # (z + B^2)
    shifted = np.array([1.0])
    for _ in range(k):
        shifted = np.polymul(shifted, lin)
    left = np.polymul([1.0, 0.0], shifted)     # z (z + B^2)^k
    ones = np.array([1.0])
    for _ in range(k):
        ones = np.polymul(ones, [1.0, 1.0])    # (z + 1)^k
    if variant == "derived":
        return np.polyadd(left, -w.A * w.B ** (k + 1) * ones)
    return np.polyadd(w.B ** (k - 1) * left, -w.A * ones)


def _u_from_z(z: float, w: ReducedWeights) -> float:
    return math.sqrt(z / (w.B * w.A))


def _stability_label(u: float, w: ReducedWeights, k: int) -> str:
    slope = abs(scalar_map_derivative(u, w, k))
    if abs(slope - 1.0) <= MARGINAL_STABILITY_BAND:
        return "marginal"
    return "attracting" if slope < 1.0 else "repelling"


def solve_ti_symmetric(params: ModelParams, variant: str = "derived") -> SolutionSet:
    """All positive symmetric fixed points, ascending, with certificates.

    Every returned root satisfies |u - g(u)| <= 1e-9 (1 + |u|) for the
    selected variant's fixed-point form; roots are pairwise separated by
    more than 1e-7 relative.
    """
    if params.k < 2:
        raise DomainError("symmetric solve needs branching order k >= 2")
    w = params.weights()
    k = params.k
    poly = symmetric_polynomial(w, k, variant)
    if k == 2 and variant == "derived":
        us = positive_roots(poly, dedupe_rtol=ROOT_SEPARATION_RTOL)
    else:
        zs = positive_roots(poly, dedupe_rtol=ROOT_SEPARATION_RTOL)
        us = sorted(_u_from_z(z, w) for z in zs)
        # dedupe again after the square-root transform
        us = [u for i, u in enumerate(us)
              if i == 0 or abs(u - us[i - 1]) > ROOT_SEPARATION_RTOL * (1.0 + u)]

    roots = []
    for u in us:
        res = _variant_residual(u, w, k, variant)
        if res > ROOT_RESIDUAL_TOL:
            continue
        roots.append(TIRoot(u=u, h=math.log(u), residual=res,
                            stability=_stability_label(u, w, k)))
    return SolutionSet(params=params, roots=roots, variant=variant)


def _variant_residual(u: float, w: ReducedWeights, k: int, variant: str) -> float:
    if variant == "derived":
        g = scalar_map(u, w, k)
        return abs(u - g) / (1.0 + abs(g))
    z = w.B * w.A * u * u
    lhs = ((z + 1.0) / (z + w.B * w.B)) ** k
    rhs = (w.B ** (k - 1) / w.A) * z
    return abs(lhs - rhs) / (1.0 + abs(rhs))


def preston_classify(B: float, m: int, a: float | None = None,
                     boundary_rtol: float = 1e-12) -> PrestonClassification:
    """Root-count classification of ((1+x)/(B+x))^(m-1) = a x, x >= 0.

    With m = 2 or B <= (m/(m-2))^2 there is one solution for every a > 0
    ("unique").  Otherwise the tangency slopes eta1 < eta2 exist and the
    count is 3 inside the open band, 2 at its endpoints, 1 outside.  When
    `a` is omitted the regime reports whether the multi-solution band
    exists at all ("three" means reachable).
    """
    if B <= 0:
        raise DomainError("B must be positive")
    if m < 2 or int(m) != m:
        raise DomainError("m must be an integer >= 2")
    m = int(m)
    if m == 2 or B <= (m / (m - 2)) ** 2:
        return PrestonClassification(regime="unique")

    # tangency points: x^2 + [2 - (B-1)(m-2)] x + B = 0
    tangents = sorted(positive_roots([1.0, 2.0 - (B - 1.0) * (m - 2.0), B]))
    if len(tangents) < 2:
        # B numerically at the threshold: the band is degenerate
        return PrestonClassification(regime="unique")
    x_small, x_big = tangents
    eta = lambda x: (1.0 / x) * ((1.0 + x) / (B + x)) ** (m - 1)
    (eta1, x1), (eta2, x2) = sorted([(eta(x_small), x_small), (eta(x_big), x_big)])
    cls = PrestonClassification(regime="three", eta1=eta1, eta2=eta2, x1=x1, x2=x2)
    if a is None:
        return cls
    if a <= 0:
        raise DomainError("a must be positive")
    if (abs(a - eta1) <= boundary_rtol * eta1) or (abs(a - eta2) <= boundary_rtol * eta2):
        cls.regime = "boundary"
    elif eta1 < a < eta2:
        cls.regime = "three"
    else:
        cls.regime = "unique"
    return cls


def preston_polynomial(B: float, m: int, a: float) -> np.ndarray:
    """Denominator-cleared form of ((1+x)/(B+x))^(m-1) = a x."""
    left = np.array([1.0])
    right = np.array([a, 0.0])
    for _ in range(m - 1):
        left = np.polymul(left, [1.0, 1.0])
        right = np.polymul(right, [1.0, B])
    return np.polyadd(right, -left)


def count_solutions(params: ModelParams,
                    solution: SolutionSet | None = None) -> CriterionComparison:
    """Computed symmetric-root count against the literal published criterion.

    The criterion addresses k = 2 only; other orders report the empirical
    count with no prediction.
    """
    if solution is None:
        solution = solve_ti_symmetric(params)
    empirical = solution.count
    w = params.weights()
    if params.k != 2:
        return CriterionComparison(empirical=empirical, prediction_low=None,
                                   prediction_high=None, agree=None, c=w.c, d=w.d)
    if w.c <= 1.0 or w.d < 3.0:
        lo = hi = 1
    else:
        lo, hi = 1, 3
    return CriterionComparison(empirical=empirical, prediction_low=lo,
                               prediction_high=hi, agree=lo <= empirical <= hi,
                               c=w.c, d=w.d)


def classify_symmetry(triple, tol: float) -> str:
    """Coincidence pattern of a positive triple: A (all equal), A1 (x1=x2),
    A2 (x1=x3), A3 (x2=x3), or none, returning the most specific label."""
    x1, x2, x3 = triple
    if min(x1, x2, x3) <= 0:
        raise DomainError("triple entries must be positive")
    close = lambda p, q: abs(p - q) <= tol * (1.0 + max(abs(p), abs(q)))
    if close(x1, x2) and close(x1, x3) and close(x2, x3):
        return "A"
    if close(x1, x2):
        return "A1"
    if close(x1, x3):
        return "A2"
    if close(x2, x3):
        return "A3"
    return "none"


# ----------------------------------------------------------------------
# non-symmetric branch, k = 2
# ----------------------------------------------------------------------

_TUBE = 1e-6          # exclusion around m=1, t=1, mt=1, m=t
_NEWTON_ITERS = 60


def _mt_system(m, t, atil, b):
    f1 = b * b * (m * m - m) * (1.0 - t ** 3) - (m - t * t) * (m * m * t - 1.0)
    f2 = atil * atil * (m * m * t - 1.0) ** 2 - b * (m * m - m) * (m - t * t)
    return f1, f2


def _mt_scale(m, t, atil, b):
    s1 = abs(b * b * (m * m - m) * (1.0 - t ** 3)) + abs((m - t * t) * (m * m * t - 1.0))
    s2 = abs(atil * atil * (m * m * t - 1.0) ** 2) + abs(b * (m * m - m) * (m - t * t))
    return 1.0 + s1, 1.0 + s2


def _mt_jacobian(m, t, atil, b):
    j11 = b * b * (2 * m - 1) * (1 - t ** 3) - ((m * m * t - 1) + (m - t * t) * 2 * m * t)
    j12 = -3 * b * b * (m * m - m) * t * t - (-2 * t * (m * m * t - 1) + (m - t * t) * m * m)
    j21 = 4 * atil * atil * (m * m * t - 1) * m * t - b * ((2 * m - 1) * (m - t * t) + (m * m - m))
    j22 = 2 * atil * atil * (m * m * t - 1) * m * m + 2 * b * (m * m - m) * t
    return j11, j12, j21, j22


def _newton_mt(m, t, atil, b):
    """Damped Newton on the (m,t) system from one start; None if lost."""
    for _ in range(_NEWTON_ITERS):
        f1, f2 = _mt_system(m, t, atil, b)
        s1, s2 = _mt_scale(m, t, atil, b)
        if abs(f1) / s1 < 1e-14 and abs(f2) / s2 < 1e-14:
            return m, t
        j11, j12, j21, j22 = _mt_jacobian(m, t, atil, b)
        det = j11 * j22 - j12 * j21
        if det == 0.0 or not math.isfinite(det):
            return None
        dm = (-f1 * j22 + f2 * j12) / det
        dt = (-f2 * j11 + f1 * j21) / det
        norm0 = f1 * f1 + f2 * f2
        lam = 1.0
        while lam > 1e-8:
            mn, tn = m + lam * dm, t + lam * dt
            if mn > 0 and tn > 0 and math.isfinite(mn) and math.isfinite(tn):
                g1, g2 = _mt_system(mn, tn, atil, b)
                if g1 * g1 + g2 * g2 < norm0:
                    break
            lam *= 0.5
        else:
            return None
        m, t = m + lam * dm, t + lam * dt
    f1, f2 = _mt_system(m, t, atil, b)
    s1, s2 = _mt_scale(m, t, atil, b)
    if abs(f1) / s1 < 1e-12 and abs(f2) / s2 < 1e-12:
        return m, t
    return None


def _in_band(m: float, t: float) -> bool:
    lo, hi = sorted((1.0, m ** -2))
    return lo < t < hi


def solve_nonsymmetric_k2(params: ModelParams, grid: int = 60,
                          box: tuple[float, float] = (0.02, 12.0),
                          residual_tol: float = ROOT_RESIDUAL_TOL) -> list[NonSymSolution]:
    """All admissible non-symmetric solutions found by multistart Newton.

    Starts on a grid x grid lattice over box^2, excluding tubes around the
    degenerate lines m = 1, t = 1, m t = 1.  Every converged (m, t) is
    filtered by the admissibility band, x is recovered, and the candidate
    is re-verified against the full three-equation system.  An empty list
    is a valid outcome (e.g. zero couplings force the symmetric set).
    """
    if params.k != 2:
        raise DomainError("non-symmetric search is implemented for k = 2 only")
    w = params.weights()
    atil, b = w.a, w.B      # root-scaled nn weight, unscaled prolonged weight
    found: list[tuple[float, float]] = []
    values = np.linspace(box[0], box[1], grid)
    for m0 in values:
        for t0 in values:
            if abs(m0 - 1) < 0.05 or abs(t0 - 1) < 0.05 or abs(m0 * t0 - 1) < 0.05:
                continue
            res = _newton_mt(float(m0), float(t0), atil, b)
            if res is None:
                continue
            m, t = res
            if m <= 0 or t <= 0:
                continue
            if (abs(m - 1) < _TUBE or abs(t - 1) < _TUBE
                    or abs(m * t - 1) < _TUBE or abs(m - t) < _TUBE * (1 + abs(m))):
                continue
            if not _in_band(m, t):
                continue
            if any(abs(m - fm) <= ROOT_SEPARATION_RTOL * (1 + abs(m))
                   and abs(t - ft) <= ROOT_SEPARATION_RTOL * (1 + abs(t))
                   for fm, ft in found):
                continue
            found.append((m, t))

    solutions = []
    for m, t in sorted(found):
        x = atil / b * (m * m * t - 1.0) / (t * (m * m - m))
        if x <= 0 or not math.isfinite(x):
            continue
        res = xyz_residual((x, m * x, t * x), w, k=2)
        if res <= residual_tol:
            solutions.append(NonSymSolution(x=x, m=m, t=t, residual=res))
    return solutions
