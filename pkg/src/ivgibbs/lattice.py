"""Finite truncations of the rooted Cayley tree and spin configurations on them.

The tree is semi-infinite: the root has k successors and every other vertex
has one predecessor and k successors.  A depth-n truncation keeps the root
plus n generations, so level m holds k^m vertices.  Vertices are numbered
breadth first (root = 0), which makes every level a contiguous index block
and keeps all downstream enumeration bit-reproducible.

Interaction structure captured here:
  nn_edges         parent-child pairs (nearest neighbours inside the volume)
  prolonged_pairs  grandparent-grandchild pairs on the same branch
                   (the distance-2 "prolonged" next-nearest neighbours)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import DomainError, EnumerationCapError

ENUMERATION_CAP = 25


@dataclass(frozen=True)
class FiniteTree:
    k: int
    n: int
    levels: tuple[int, ...]
    parents: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]
    nn_edges: tuple[tuple[int, int], ...]
    prolonged_pairs: tuple[tuple[int, int], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.levels)

    def level_size(self, m: int) -> int:
        if not 0 <= m <= self.n:
            raise DomainError(f"level {m} outside 0..{self.n}")
        return self.k ** m

    def level_vertices(self, m: int) -> range:
        """Indices of the m-th generation (contiguous by BFS numbering)."""
        if not 0 <= m <= self.n:
            raise DomainError(f"level {m} outside 0..{self.n}")
        start = volume_size(self.k, m - 1) if m > 0 else 0
        return range(start, start + self.k ** m)

    def volume_vertices(self, m: int) -> range:
        """Indices of all vertices within distance m of the root."""
        if not 0 <= m <= self.n:
            raise DomainError(f"volume level {m} outside 0..{self.n}")
        return range(volume_size(self.k, m))

    def shell_edges(self, m: int) -> tuple[tuple[int, int], ...]:
        """Directed edges from generation m-1 into generation m."""
        if not 1 <= m <= self.n:
            raise DomainError(f"shell {m} outside 1..{self.n}")
        return tuple((self.parents[v], v) for v in self.level_vertices(m))


def volume_size(k: int, n: int) -> int:
    """|V_n|: number of vertices within distance n of the root (0 for n < 0)."""
    if n < 0:
        return 0
    if k == 1:
        return n + 1
    return (k ** (n + 1) - 1) // (k - 1)


def build_tree(k: int, n: int) -> FiniteTree:
    """Construct the depth-n truncation with deterministic BFS numbering."""
    if k < 1:
        raise DomainError(f"branching order k must be >= 1, got {k}")
    if n < 0:
        raise DomainError(f"depth n must be >= 0, got {n}")

    levels = [0]
    parents = [-1]
    successors: list[list[int]] = [[]]
    frontier = [0]
    for m in range(1, n + 1):
        nxt = []
        for x in frontier:
            for _ in range(k):
                idx = len(levels)
                levels.append(m)
                parents.append(x)
                successors.append([])
                successors[x].append(idx)
                nxt.append(idx)
        frontier = nxt

    nn_edges = tuple((parents[v], v) for v in range(1, len(levels)))
    prolonged = tuple(
        (parents[parents[v]], v) for v in range(len(levels)) if levels[v] >= 2
    )
    return FiniteTree(
        k=k,
        n=n,
        levels=tuple(levels),
        parents=tuple(parents),
        successors=tuple(tuple(s) for s in successors),
        nn_edges=nn_edges,
        prolonged_pairs=prolonged,
    )


@dataclass(frozen=True)
class Configuration:
    """Spin assignment sigma(x) in {-1,+1} on an explicit vertex set."""

    vertices: tuple[int, ...]
    spins: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.spins):
            raise DomainError("vertex/spin length mismatch")
        if any(s not in (-1, 1) for s in self.spins):
            raise DomainError("spins must be -1 or +1")
        if len(set(self.vertices)) != len(self.vertices):
            raise DomainError("duplicate vertices in configuration domain")

    @cached_property
    def _index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def spin(self, v: int) -> int:
        try:
            return self.spins[self._index[v]]
        except KeyError:
            raise DomainError(f"vertex {v} not in configuration domain") from None

    def restrict(self, vertices) -> "Configuration":
        vs = tuple(vertices)
        return Configuration(vs, tuple(self.spin(v) for v in vs))


def config_from_mask(vertices, mask: int) -> Configuration:
    """Bitmask decoding: bit i set means spin +1 on vertices[i]."""
    vs = tuple(vertices)
    return Configuration(vs, tuple(1 if (mask >> i) & 1 else -1 for i in range(len(vs))))


def enumerate_configs(
    tree: FiniteTree, region: str = "full", cap: int = ENUMERATION_CAP
) -> Iterator[Configuration]:
    """Yield every spin configuration on the region, in bitmask order.

    region is "full" (all of V_n) or "boundary_shell" (the outermost
    generation W_n).  Refuses regions larger than `cap` vertices since the
    stream has 2^|region| elements.
    """
    if region == "full":
        vertices = tuple(range(tree.num_vertices))
    elif region == "boundary_shell":
        vertices = tuple(tree.level_vertices(tree.n))
    else:
        raise DomainError(f"unknown region {region!r}")
    if len(vertices) > cap:
        raise EnumerationCapError(
            f"region has {len(vertices)} vertices, above the cap of {cap} "
            f"(2^{len(vertices)} configurations)"
        )
    for mask in range(1 << len(vertices)):
        yield config_from_mask(vertices, mask)


def concat(sigma: Configuration, omega: Configuration) -> Configuration:
    """Join a configuration on V_{n-1} with one on W_n into one on V_n.

    Relies on the BFS layout: sigma must cover a prefix block 0..m-1 and
    omega the following block m..m+s-1.
    """
    m = len(sigma.vertices)
    if sigma.vertices != tuple(range(m)):
        raise DomainError("first argument must cover a volume block 0..m-1")
    if omega.vertices != tuple(range(m, m + len(omega.vertices))):
        raise DomainError("second argument must cover the shell block following the volume")
    return Configuration(sigma.vertices + omega.vertices, sigma.spins + omega.spins)
