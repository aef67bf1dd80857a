"""Partition quality measures: modularity, modularity density, weak condition.

Everything is computed in exact rational arithmetic. For a community l with
n_l vertices, e_l internal edges and degree sum K_l:

    density d_l   = (4*e_l - K_l) / n_l        (equivalently (2e_l - cut)/n_l)
    weak at L     = 4*e_l - K_l >= L,  L in {0, 1}
    modularity Q  = sum_l [ e_l/|E| - (K_l/(2|E|))^2 ]

The total density D is the sum of the d_l. L=1 is the strict "more internal
than external degree" community test; L=0 only forbids negative densities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .graph import Graph, Partition
from .numformat import rational_str, sig_str


@dataclass(frozen=True)
class CommunityStats:
    """Exact integer counts for one community."""

    size: int
    internal_edges: int
    degree_sum: int
    cut: int

    def __post_init__(self) -> None:
        assert self.cut == self.degree_sum - 2 * self.internal_edges


@dataclass(frozen=True)
class CommunityEntry:
    index: int
    stats: CommunityStats
    density: Fraction
    weak_L0: bool
    weak_L1: bool


@dataclass(frozen=True)
class CommunityReport:
    """Per-community breakdown plus the D and Q totals.

    Q is None when the graph has no edges (modularity is undefined there).
    """

    communities: tuple[CommunityEntry, ...]
    D: Fraction
    Q: Fraction | None

    def to_json_dict(self) -> dict:
        return {
            "communities": [
                {
                    "id": c.index,
                    "size": c.stats.size,
                    "internal_edges": c.stats.internal_edges,
                    "cut": c.stats.cut,
                    "density": sig_str(c.density),
                    "density_rational": rational_str(c.density),
                    "weak_L0": c.weak_L0,
                    "weak_L1": c.weak_L1,
                }
                for c in self.communities
            ],
            "D": sig_str(self.D),
            "D_rational": rational_str(self.D),
            "Q": sig_str(self.Q) if self.Q is not None else None,
            "Q_rational": rational_str(self.Q) if self.Q is not None else None,
        }


def _check_partition(g: Graph, p: Partition) -> None:
    if len(p.assign) != g.n:
        raise InputError(f"partition covers {len(p.assign)} vertices, graph has {g.n}")


def _counts(g: Graph, p: Partition) -> list[list[int]]:
    """Per community: [size, internal_edges, degree_sum]."""
    rows = [[0, 0, 0] for _ in range(p.m)]
    assign = p.assign
    for v in range(1, g.n + 1):
        c = assign[v - 1]
        row = rows[c - 1]
        row[0] += 1
        row[2] += g.deg(v)
        for w in g.neighbors(v):
            if w > v and assign[w - 1] == c:
                row[1] += 1
    return rows


def community_stats(g: Graph, p: Partition, l: int) -> CommunityStats:
    """Counts for community `l` (1-based)."""
    _check_partition(g, p)
    if not 1 <= l <= p.m:
        raise InputError(f"community index {l} outside 1..{p.m}")
    size, e, ksum = _counts(g, p)[l - 1]
    return CommunityStats(size=size, internal_edges=e, degree_sum=ksum, cut=ksum - 2 * e)


def community_density(g: Graph, p: Partition, l: int) -> Fraction:
    s = community_stats(g, p, l)
    return Fraction(4 * s.internal_edges - s.degree_sum, s.size)


def modularity_density(g: Graph, p: Partition) -> Fraction:
    """Total density D = sum over communities of (4*e_l - K_l)/n_l."""
    _check_partition(g, p)
    return sum(
        (Fraction(4 * e - ksum, size) for size, e, ksum in _counts(g, p)),
        start=Fraction(0),
    )


def modularity(g: Graph, p: Partition) -> Fraction:
    """Newman-Girvan modularity Q as an exact rational."""
    _check_partition(g, p)
    if g.edge_count == 0:
        raise InputError("modularity undefined on an edgeless graph")
    two_m = 2 * g.edge_count
    q = Fraction(0)
    for _, e, ksum in _counts(g, p):
        q += Fraction(2 * e, two_m) - Fraction(ksum, two_m) ** 2
    return q


def weak_condition(g: Graph, p: Partition, l: int, L: int) -> bool:
    """Integer test 4*e_l - K_l >= L; equivalent to d_l >= L/n_l."""
    if L not in (0, 1):
        raise InputError(f"L must be 0 or 1, got {L}")
    s = community_stats(g, p, l)
    return 4 * s.internal_edges - s.degree_sum >= L


def full_report(g: Graph, p: Partition) -> CommunityReport:
    """Evaluate every community of `p` in one pass."""
    _check_partition(g, p)
    entries = []
    total = Fraction(0)
    for idx, (size, e, ksum) in enumerate(_counts(g, p), start=1):
        numerator = 4 * e - ksum
        d = Fraction(numerator, size)
        total += d
        entries.append(
            CommunityEntry(
                index=idx,
                stats=CommunityStats(size=size, internal_edges=e, degree_sum=ksum, cut=ksum - 2 * e),
                density=d,
                weak_L0=numerator >= 0,
                weak_L1=numerator >= 1,
            )
        )
    q = modularity(g, p) if g.edge_count > 0 else None
    return CommunityReport(communities=tuple(entries), D=total, Q=q)
