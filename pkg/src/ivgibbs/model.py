"""Coupling parameters, Boltzmann weights, and the competing-interaction energy.

The Hamiltonian couples nearest neighbours with strength J and prolonged
next-nearest neighbours (grandparent-grandchild pairs) with strength Jp:

    H(sigma) = -Jp * sum_prolonged sigma(x) sigma(y)
               -J  * sum_nn        sigma(x) sigma(y)

Boltzmann's constant is fixed to 1, so beta = 1/T.  Three weight
conventions circulate in the fixed-point equations and mixing them up is
the classic bug, so a single record exposes all of them, derived from one
beta:

    a = exp(beta*J),  b = exp(beta*Jp)      single-exponent weights
    A = a^2,          B = b^2               doubled weights (u-level system)
    c = A,            d = B                 aliases used by the k=2 scalar map
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .lattice import Configuration, FiniteTree


@dataclass(frozen=True)
class ReducedWeights:
    a: float
    b: float
    A: float
    B: float
    c: float
    d: float


@dataclass(frozen=True)
class ModelParams:
    J: float
    Jp: float
    T: float
    k: int = 2

    def __post_init__(self):
        if not (self.T > 0 and math.isfinite(self.T)):
            raise DomainError(f"temperature must be positive and finite, got {self.T}")
        if not (math.isfinite(self.J) and math.isfinite(self.Jp)):
            raise DomainError("couplings must be finite")
        if self.k < 1:
            raise DomainError(f"branching order k must be >= 1, got {self.k}")

    @property
    def beta(self) -> float:
        return 1.0 / self.T

    def weights(self) -> ReducedWeights:
        return weights(self)


def weights(params: ModelParams) -> ReducedWeights:
    """All weight conventions from one beta; rejects over/underflow."""
    beta = params.beta
    try:
        a = math.exp(beta * params.J)
        b = math.exp(beta * params.Jp)
    except OverflowError:
        raise DomainError(
            f"Boltzmann weight overflow at J={params.J}, Jp={params.Jp}, T={params.T}"
        ) from None
    A = a * a
    B = b * b
    for name, val in (("a", a), ("b", b), ("A", A), ("B", B)):
        if not (0.0 < val < math.inf):
            raise DomainError(
                f"Boltzmann weight {name} over/underflowed at J={params.J}, "
                f"Jp={params.Jp}, T={params.T}"
            )
    return ReducedWeights(a=a, b=b, A=A, B=B, c=A, d=B)


def energy(tree: FiniteTree, sigma: Configuration, params: ModelParams) -> float:
    """Total energy of a configuration on the whole truncated volume."""
    if sigma.vertices != tuple(range(tree.num_vertices)):
        raise DomainError("configuration must cover all vertices of the tree")
    s = sigma.spins
    e_nn = sum(s[x] * s[y] for x, y in tree.nn_edges)
    e_pr = sum(s[x] * s[y] for x, y in tree.prolonged_pairs)
    return -params.Jp * e_pr - params.J * e_nn
