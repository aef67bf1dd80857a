"""Benchmark instances with known-good partitions and density values.

Three families:

* ``gen_clique_star`` -- a hub clique with satellite cliques, each satellite
  tied to the hub by a single edge. At (3, 7, 4) the best unconstrained
  partition keeps the hub as its own community with negative density (-1/3);
  requiring weakly valid communities instead merges the hub into a satellite.
* ``gen_fig2`` -- a triangle whose corners are each densely tied to a
  5-clique; splitting the triangle across its neighbor cliques beats keeping
  the four cliques separate.
* ``zachary`` -- the karate club network with the reference partitions for
  2, 3, and 4 communities.

Every canonical partition carries its expected density as an exact rational,
checked against the metrics module in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._karate import KARATE_EDGES
from .errors import InputError
from .graph import Graph, Partition

__all__ = ["CanonicalPartition", "NamedInstance", "gen_clique_star", "gen_fig2", "zachary", "instance", "FAMILIES"]


@dataclass(frozen=True)
class CanonicalPartition:
    name: str
    partition: Partition
    expected_density: Fraction | None


@dataclass(frozen=True)
class NamedInstance:
    name: str
    graph: Graph
    canonical_partitions: tuple[CanonicalPartition, ...]

    def partition(self, name: str) -> Partition:
        for cp in self.canonical_partitions:
            if cp.name == name:
                return cp.partition
        raise InputError(f"{self.name} has no partition named {name!r}")

    def expected_density(self, name: str) -> Fraction | None:
        for cp in self.canonical_partitions:
            if cp.name == name:
                return cp.expected_density
        raise InputError(f"{self.name} has no partition named {name!r}")


def gen_clique_star(hub_size: int = 3, satellites: int = 7, satellite_size: int = 4) -> NamedInstance:
    """Hub clique on 1..r plus p satellite q-cliques, one tie each.

    Satellite i occupies vertices r+(i-1)q+1 .. r+iq and its first vertex is
    tied to hub vertex ((i-1) mod r)+1, spreading ties round-robin over the
    hub. The density of the canonical partitions does not depend on that
    placement; round-robin guarantees hub vertex r has a satellite to merge
    with whenever p >= r.
    """
    r, p, q = hub_size, satellites, satellite_size
    if r < 3:
        raise InputError("hub_size must be >= 3")
    if p < 1:
        raise InputError("satellites must be >= 1")
    if q < 2:
        raise InputError("satellite_size must be >= 2")
    edges: list[tuple[int, int]] = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            edges.append((i, j))
    blocks_split: list[list[int]] = [list(range(1, r + 1))]
    for i in range(1, p + 1):
        base = r + (i - 1) * q
        members = list(range(base + 1, base + q + 1))
        for a in range(q):
            for b in range(a + 1, q):
                edges.append((members[a], members[b]))
        hub = ((i - 1) % r) + 1
        edges.append((hub, members[0]))
        blocks_split.append(members)
    g = Graph.from_edges(edges)

    canon: list[CanonicalPartition] = []
    is_reference = (r, p, q) == (3, 7, 4)
    split = Partition.from_blocks(blocks_split, g.n)
    canon.append(
        CanonicalPartition("split", split, Fraction(227, 12) if is_reference else None)
    )
    if p >= r:
        # merge the hub with the first satellite tied to hub vertex r (i = r)
        merged_blocks = [blocks_split[0] + blocks_split[r]]
        merged_blocks.extend(b for i, b in enumerate(blocks_split[1:], start=1) if i != r)
        merged = Partition.from_blocks(merged_blocks, g.n)
        canon.append(
            CanonicalPartition("merged", merged, Fraction(37, 2) if is_reference else None)
        )
    return NamedInstance(name="clique-star", graph=g, canonical_partitions=tuple(canon))


def gen_fig2() -> NamedInstance:
    """Triangle {1, 6, 11} with a 5-clique hanging off each corner.

    Each corner is tied to three members of its clique, which makes joining
    the corner to the clique (density 4 per community) better than keeping
    the triangle whole (density -1 for the triangle).
    """
    corners = (1, 6, 11)
    cliques = ([2, 3, 4, 5, 16], [7, 8, 9, 10, 17], [12, 13, 14, 15, 18])
    edges: list[tuple[int, int]] = [(1, 6), (1, 11), (6, 11)]
    for members in cliques:
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                u, v = members[a], members[b]
                edges.append((min(u, v), max(u, v)))
    for corner, members in zip(corners, cliques):
        for target in members[:3]:
            edges.append((min(corner, target), max(corner, target)))
    g = Graph.from_edges(edges)
    four = Partition.from_blocks([list(corners), *cliques], g.n)
    three = Partition.from_blocks(
        [[corner, *members] for corner, members in zip(corners, cliques)], g.n
    )
    return NamedInstance(
        name="fig2",
        graph=g,
        canonical_partitions=(
            CanonicalPartition("four", four, Fraction(46, 5)),
            CanonicalPartition("three", three, Fraction(12)),
        ),
    )


_Z_V1_M2 = (1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 13, 14, 17, 18, 20, 22)
_Z_M3 = (
    (1, 2, 3, 4, 8, 10, 12, 13, 14, 18, 20, 22),
    (9, 15, 16, 19, 21, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34),
    (5, 6, 7, 11, 17),
)
_Z_M4_OPTIMAL = (
    (5, 6, 7, 11, 17),
    (1, 2, 3, 4, 8, 12, 13, 14, 18, 20, 22),
    (25, 26, 29, 32),
    (9, 10, 15, 16, 19, 21, 23, 24, 27, 28, 30, 31, 33, 34),
)
_Z_M4_AUTHORS = (
    (5, 6, 7, 11, 17),
    (1, 2, 3, 4, 8, 12, 13, 14, 18, 20, 22),
    (24, 25, 26, 28, 29, 32),
    (9, 10, 15, 16, 19, 21, 23, 27, 30, 31, 33, 34),
)


def zachary() -> NamedInstance:
    """Karate club network plus the reference 2/3/4-community partitions.

    "m4_optimal" places vertices 24 and 28 with the large community and beats
    "m4_authors" (the historically published split) on density while losing
    to it on modularity.
    """
    g = Graph.from_edges(KARATE_EDGES)
    v2 = tuple(v for v in range(1, 35) if v not in _Z_V1_M2)
    parts = (
        CanonicalPartition("m2", Partition.from_blocks([_Z_V1_M2, v2], 34), Fraction(41, 6)),
        CanonicalPartition("m3", Partition.from_blocks(_Z_M3, 34), Fraction(4001, 510)),
        CanonicalPartition(
            "m4_optimal", Partition.from_blocks(_Z_M4_OPTIMAL, 34), Fraction(11619, 1540)
        ),
        CanonicalPartition(
            "m4_authors", Partition.from_blocks(_Z_M4_AUTHORS, 34), Fraction(413, 55)
        ),
    )
    return NamedInstance(name="zachary", graph=g, canonical_partitions=parts)


FAMILIES = ("clique-star", "fig2", "zachary")


def instance(name: str) -> NamedInstance:
    """Build a named instance: "zachary", "fig2", or "fig1" / "clique-star"
    (the (3,7,4) hub-and-satellites reference network)."""
    if name == "zachary":
        return zachary()
    if name == "fig2":
        return gen_fig2()
    if name in ("fig1", "clique-star"):
        return gen_clique_star()
    raise InputError(f"unknown instance {name!r}; expected one of fig1, fig2, zachary")
