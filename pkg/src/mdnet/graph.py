"""Immutable graph and partition types plus the text formats used for I/O.

Vertices are labelled 1..n in every public interface and file format.
Graphs are simple and unweighted: self-loops, duplicate edges, and weights
are rejected at parse time rather than silently repaired.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph.

    edges keep their construction order (each pair stored as (u, v) with
    u < v); adjacency lists are sorted. Instances are immutable and safe to
    share between workers.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    degree: tuple[int, ...]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> Graph:
        ordered: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        max_label = 0
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop on vertex {u}")
            if u < 1 or v < 1:
                raise InputError(f"vertex labels must be positive, got ({u}, {v})")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise InputError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
            ordered.append((a, b))
            max_label = max(max_label, b)
        if n is None:
            n = max_label
        elif n < max_label:
            raise InputError(f"declared n={n} smaller than largest vertex label {max_label}")
        if n < 1:
            raise InputError("graph needs at least one vertex")
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in ordered:
            adj[a - 1].append(b)
            adj[b - 1].append(a)
        adjacency = tuple(tuple(sorted(row)) for row in adj)
        degree = tuple(len(row) for row in adjacency)
        return cls(n=n, edges=tuple(ordered), adjacency=adjacency, degree=degree)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v - 1]

    def deg(self, v: int) -> int:
        return self.degree[v - 1]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return v in self.adjacency[u - 1]

    def to_edge_list_text(self) -> str:
        lines = [f"n={self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Partition:
    """Assignment of each vertex to one of the communities 1..m.

    Labels must cover 1..m with no empty community. ``canonicalize`` maps
    arbitrary positive labels to the canonical form, numbered by first
    appearance in vertex order (what all loaders and solvers return).
    """

    assign: tuple[int, ...]
    m: int

    @classmethod
    def from_assign(cls, assign: Iterable[int]) -> Partition:
        labels = tuple(assign)
        if not labels:
            raise InputError("empty partition")
        m = max(labels)
        if min(labels) < 1 or set(labels) != set(range(1, m + 1)):
            raise InputError("partition labels must cover 1..m with no empty community")
        return cls(assign=labels, m=m)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> Partition:
        assign = [0] * n
        for idx, block in enumerate(blocks, start=1):
            for v in block:
                if not 1 <= v <= n:
                    raise InputError(f"vertex {v} outside 1..{n}")
                if assign[v - 1] != 0:
                    raise InputError(f"vertex {v} listed twice")
                assign[v - 1] = idx
        for v, c in enumerate(assign, start=1):
            if c == 0:
                raise InputError(f"unassigned vertex {v}")
        return canonicalize(assign)

    def community_of(self, v: int) -> int:
        return self.assign[v - 1]

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.m)]
        for v, c in enumerate(self.assign, start=1):
            out[c - 1].append(v)
        return tuple(tuple(b) for b in out)

    def block_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(b) for b in self.blocks())

    def to_text(self) -> str:
        return "\n".join(f"{v} {c}" for v, c in enumerate(self.assign, start=1)) + "\n"


def _first_appearance_relabel(labels: tuple[int, ...]) -> tuple[int, ...]:
    remap: dict[int, int] = {}
    out = []
    for c in labels:
        if c not in remap:
            remap[c] = len(remap) + 1
        out.append(remap[c])
    return tuple(out)


def canonicalize(assign: Iterable[int] | Partition) -> Partition:
    """Relabel communities to 1..m by first appearance; idempotent."""
    labels = assign.assign if isinstance(assign, Partition) else tuple(assign)
    if not labels:
        raise InputError("empty partition")
    if min(labels) < 1:
        raise InputError("community labels must be positive")
    relabeled = _first_appearance_relabel(labels)
    return Partition(assign=relabeled, m=max(relabeled))


def _data_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def load_edge_list(text: str) -> Graph:
    """Parse "u v" lines into a Graph.

    Lines starting with '#' are comments. An optional first line "n=<int>"
    declares the vertex count, which allows isolated trailing vertices.
    """
    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    first = True
    for lineno, line in _data_lines(text):
        if first and line.replace(" ", "").startswith("n="):
            value = line.split("=", 1)[1].strip()
            try:
                declared_n = int(value)
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex count {value!r}") from None
            if declared_n < 1:
                raise InputError(f"line {lineno}: vertex count must be positive")
            first = False
            continue
        first = False
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected two vertex labels, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer vertex label in {line!r}") from None
        if u < 1 or v < 1:
            raise InputError(f"line {lineno}: vertex labels must be positive")
        if u == v:
            raise InputError(f"line {lineno}: self-loop on vertex {u}")
        a, b = (u, v) if u < v else (v, u)
        if (a, b) in seen:
            raise InputError(f"line {lineno}: duplicate edge ({a}, {b})")
        seen.add((a, b))
        edges.append((a, b))
    if not edges and declared_n is None:
        raise InputError("no edges found and no n=<int> header")
    return Graph.from_edges(edges, n=declared_n)


def load_partition(text: str, g: Graph) -> Partition:
    """Parse a partition as "vertex community" lines or a JSON label map.

    Every vertex of `g` must appear exactly once; labels are canonicalized
    by first appearance in vertex order.
    """
    raw: dict[int, int] = {}
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON partition: {exc}") from None
        if not isinstance(obj, dict):
            raise InputError("JSON partition must be an object mapping vertex to community")
        for key, value in obj.items():
            try:
                v, c = int(key), int(value)
            except (TypeError, ValueError):
                raise InputError(f"bad JSON partition entry {key!r}: {value!r}") from None
            _record_assignment(raw, v, c, g, where=f"key {key!r}")
    else:
        for lineno, line in _data_lines(text):
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected 'vertex community', got {line!r}")
            try:
                v, c = int(parts[0]), int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: non-integer token in {line!r}") from None
            _record_assignment(raw, v, c, g, where=f"line {lineno}")
    missing = [v for v in range(1, g.n + 1) if v not in raw]
    if missing:
        raise InputError(f"unassigned vertex {missing[0]}")
    return canonicalize([raw[v] for v in range(1, g.n + 1)])


def _record_assignment(raw: dict[int, int], v: int, c: int, g: Graph, where: str) -> None:
    if not 1 <= v <= g.n:
        raise InputError(f"{where}: vertex {v} outside 1..{g.n}")
    if c < 1:
        raise InputError(f"{where}: community index must be positive")
    if v in raw:
        raise InputError(f"{where}: vertex {v} listed twice")
    raw[v] = c
