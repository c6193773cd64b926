"""Boundary-field functional equations on directed tree edges.

Two equivalent parameterizations of the boundary condition are used.  The
raw field attaches four reals to each directed parent-child edge, indexed
by the spin pair (sigma(x), sigma(y)):

    h_xy = (h_pp, h_pm, h_mp, h_mm)

The reduced field is a strictly positive triple per edge,

    u1 = A exp(h_pp + h_mp)
    u2 = A exp(h_mm + h_mp)
    u3 = A exp(h_pp + h_pm)        with A = exp(2 beta J),

which is what actually determines the measure: the raw field carries one
free gauge parameter per edge (shifting h_pp and compensating the rest
leaves every u invariant and every finite-volume measure unchanged).

Consistency of the measures across volumes is equivalent to the per-edge
system relating a parent edge (x,y) to its child edges (y,z):

    u1 = A prod_z (B u3' + 1) / (u3' + B)
    u2 = A prod_z (B u2' + 1) u3' / ((u3' + B) u1')
    u3 = A prod_z (B u3' + 1) u1' / ((u2' + B) u3')

with B = exp(2 beta Jp) and primes denoting child-edge values.  An edge
independent (translation invariant) triple turns each product into a k-th
power; those fixed points are handled by the solver module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .lattice import FiniteTree
from .model import ReducedWeights

# products switch to log space above this magnitude (overflow policy)
_LOG_SPACE_THRESHOLD = 1e100

Edge = tuple[int, int]


@dataclass(frozen=True)
class FieldQuad:
    hpp: float
    hpm: float
    hmp: float
    hmm: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.hpp, self.hpm, self.hmp, self.hmm))):
            raise DomainError("field entries must be finite")

    def component(self, sx: int, sy: int) -> float:
        if sx > 0:
            return self.hpp if sy > 0 else self.hpm
        return self.hmp if sy > 0 else self.hmm


@dataclass(frozen=True)
class UTriple:
    u1: float
    u2: float
    u3: float

    def __post_init__(self):
        if not all(u > 0 and math.isfinite(u) for u in (self.u1, self.u2, self.u3)):
            raise DomainError("u components must be positive and finite")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.u1, self.u2, self.u3)


@dataclass
class EdgeField:
    """Raw field keyed by directed parent-child edges."""

    entries: dict[Edge, FieldQuad]

    def quad(self, edge: Edge) -> FieldQuad:
        try:
            return self.entries[edge]
        except KeyError:
            raise DomainError(f"missing field entry for edge {edge}") from None


@dataclass
class UField:
    """Reduced field keyed by directed parent-child edges."""

    entries: dict[Edge, UTriple]

    def triple(self, edge: Edge) -> UTriple:
        try:
            return self.entries[edge]
        except KeyError:
            raise DomainError(f"missing u entry for edge {edge}") from None


@dataclass(frozen=True)
class TIField:
    """Edge independent triple, plus the branching order it lives on."""

    u1: float
    u2: float
    u3: float
    k: int

    def __post_init__(self):
        if not all(u > 0 and math.isfinite(u) for u in (self.u1, self.u2, self.u3)):
            raise DomainError("u components must be positive and finite")
        if self.k < 1:
            raise DomainError("branching order must be >= 1")

    def as_triple(self) -> UTriple:
        return UTriple(self.u1, self.u2, self.u3)

    def x(self) -> tuple[float, float, float]:
        """k-th roots, the variables of the root-scaled system."""
        e = 1.0 / self.k
        return (self.u1 ** e, self.u2 ** e, self.u3 ** e)


def u_from_h(quad: FieldQuad, w: ReducedWeights) -> UTriple:
    A = w.A
    return UTriple(
        A * math.exp(quad.hpp + quad.hmp),
        A * math.exp(quad.hmm + quad.hmp),
        A * math.exp(quad.hpp + quad.hpm),
    )


def h_from_u(triple: UTriple, w: ReducedWeights, gauge_hpp: float = 0.0) -> FieldQuad:
    """One raw-field representative of a u triple; gauge_hpp is free.

    u_from_h(h_from_u(u, g)) == u for every gauge g, and any two gauges
    induce the same finite-volume measures.
    """
    A = w.A
    return FieldQuad(
        hpp=gauge_hpp,
        hpm=math.log(triple.u3 / A) - gauge_hpp,
        hmp=math.log(triple.u1 / A) - gauge_hpp,
        hmm=math.log(triple.u2 / triple.u1) + gauge_hpp,
    )


def uniform_edge_field(tree: FiniteTree, quad: FieldQuad) -> EdgeField:
    return EdgeField({edge: quad for edge in tree.nn_edges})


def uniform_u_field(tree: FiniteTree, triple: UTriple) -> UField:
    return UField({edge: triple for edge in tree.nn_edges})


def scalar_root_quad(u: float, w: ReducedWeights, gauge_hpp: float | None = None) -> FieldQuad:
    """Raw field for a scalar fixed point u of the symmetric reduction.

    The associated reduced triple is (A u^2, A u^2, A u^2).  The default
    gauge ln(u) makes all four components equal to ln(u), i.e. the boundary
    condition with h_pp = h_mp and h_mm = h_pm collapsed to a single value.
    """
    if u <= 0:
        raise DomainError("scalar root must be positive")
    if gauge_hpp is None:
        gauge_hpp = math.log(u)
    uu = w.A * u * u
    return h_from_u(UTriple(uu, uu, uu), w, gauge_hpp)


def stable_product(factors) -> float:
    """Product that falls back to exp(sum(log)) for huge factors."""
    prod = 1.0
    logs = 0.0
    use_logs = False
    for f in factors:
        if f <= 0:
            raise DomainError("product factors must be positive")
        if f > _LOG_SPACE_THRESHOLD or prod > _LOG_SPACE_THRESHOLD:
            use_logs = True
        prod *= f
        logs += math.log(f)
    return math.exp(logs) if use_logs else prod


def _child_factors(children: list[UTriple], w: ReducedWeights):
    B = w.B
    f1 = [(B * ch.u3 + 1.0) / (ch.u3 + B) for ch in children]
    f2 = [((B * ch.u2 + 1.0) * ch.u3) / ((ch.u3 + B) * ch.u1) for ch in children]
    f3 = [((B * ch.u3 + 1.0) * ch.u1) / ((ch.u2 + B) * ch.u3) for ch in children]
    return f1, f2, f3


def canonic_residual(tree: FiniteTree, ufield: UField, w: ReducedWeights) -> float:
    """Worst relative violation of the parent-from-children u system.

    Evaluated on every edge (x,y) whose endpoint y still has children in
    the tree; the result is max over edges and components of
    |lhs - rhs| / (1 + |rhs|).
    """
    worst = 0.0
    evaluated = False
    for (x, y) in tree.nn_edges:
        kids = tree.successors[y]
        if not kids:
            continue
        evaluated = True
        parent = ufield.triple((x, y))
        children = [ufield.triple((y, z)) for z in kids]
        f1, f2, f3 = _child_factors(children, w)
        for lhs, factors in ((parent.u1, f1), (parent.u2, f2), (parent.u3, f3)):
            rhs = w.A * stable_product(factors)
            worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    if not evaluated:
        raise DomainError("tree too shallow: no edge has child edges")
    return worst


def ti_map(ti: TIField, w: ReducedWeights) -> TIField:
    """One application of the translation-invariant recursion."""
    A, B, k = w.A, w.B, ti.k
    r1 = (B * ti.u3 + 1.0) / (ti.u3 + B)
    r2 = ((B * ti.u2 + 1.0) * ti.u3) / ((ti.u3 + B) * ti.u1)
    r3 = ((B * ti.u3 + 1.0) * ti.u1) / ((ti.u2 + B) * ti.u3)
    return TIField(A * r1 ** k, A * r2 ** k, A * r3 ** k, k)


def ti_residual(ti: TIField, w: ReducedWeights) -> float:
    image = ti_map(ti, w)
    pairs = zip((ti.u1, ti.u2, ti.u3), (image.u1, image.u2, image.u3))
    return max(abs(u - v) / (1.0 + abs(v)) for u, v in pairs)


def xyz_residual(x: tuple[float, float, float], w: ReducedWeights, k: int) -> float:
    """Residual of the root-scaled system in x_i = u_i^(1/k).

    Only the nearest-neighbour weight is root-scaled (atil = A^(1/k)); the
    prolonged weight B enters unchanged.
    """
    x1, x2, x3 = x
    if min(x1, x2, x3) <= 0:
        raise DomainError("x components must be positive")
    atil = w.A ** (1.0 / k)
    B = w.B
    p1, p2, p3 = x1 ** k, x2 ** k, x3 ** k
    r1 = atil * (B * p3 + 1.0) / (p3 + B)
    r2 = atil * ((B * p2 + 1.0) * p3) / ((p3 + B) * p1)
    r3 = atil * ((B * p3 + 1.0) * p1) / ((p2 + B) * p3)
    return max(
        abs(x1 - r1) / (1.0 + abs(r1)),
        abs(x2 - r2) / (1.0 + abs(r2)),
        abs(x3 - r3) / (1.0 + abs(r3)),
    )
