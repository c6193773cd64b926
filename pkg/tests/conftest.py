"""Shared fixtures and the independent brute-force reference.

The reference implementation below is deliberately written as a plain
nested loop over itertools.product, with no shared code or vectorization,
so the fast enumeration in the package is checked against an independent
route.
"""

from __future__ import annotations

import itertools
import math

import pytest

from ivgibbs import ModelParams


def reference_partition(k: int, n: int, J: float, Jp: float, T: float,
                        quad: tuple[float, float, float, float]) -> float:
    """Slow double-loop partition value; quad = (hpp, hpm, hmp, hmm)."""
    levels = [0]
    parents = [-1]
    frontier = [0]
    for m in range(1, n + 1):
        nxt = []
        for x in frontier:
            for _ in range(k):
                levels.append(m)
                parents.append(x)
                nxt.append(len(levels) - 1)
        frontier = nxt

    beta = 1.0 / T
    size = len(levels)
    total = 0.0
    for spins in itertools.product((-1, 1), repeat=size):
        e = 0.0
        for v in range(1, size):
            e -= J * spins[v] * spins[parents[v]]
            if levels[v] >= 2:
                e -= Jp * spins[v] * spins[parents[parents[v]]]
        boundary = 0.0
        if n >= 1:
            for v in range(size):
                if levels[v] == n:
                    sx, sy = spins[parents[v]], spins[v]
                    if sx > 0:
                        h = quad[0] if sy > 0 else quad[1]
                    else:
                        h = quad[2] if sy > 0 else quad[3]
                    boundary += sx * sy * h
        total += math.exp(-beta * e + boundary)
    return total


@pytest.fixture
def example_point() -> ModelParams:
    """The worked-example parameter point with three symmetric roots."""
    return ModelParams(J=-1.85, Jp=4.5, T=2.6, k=2)


PUBLISHED_ROOTS = (0.0316222, 4.86623, 26.9681)
