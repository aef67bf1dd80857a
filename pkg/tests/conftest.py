from __future__ import annotations

import random

import pytest

from mdnet import Graph, gen_clique_star, gen_fig2, zachary


def make_random_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded G(n, p); guaranteed at least one edge."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    if not edges:
        edges = [(1, 2)]
    return Graph.from_edges(edges, n=n)


@pytest.fixture(scope="session")
def p3() -> Graph:
    return Graph.from_edges([(1, 2), (2, 3)])


@pytest.fixture(scope="session")
def k4() -> Graph:
    return Graph.from_edges([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


@pytest.fixture(scope="session")
def triangle() -> Graph:
    return Graph.from_edges([(1, 2), (1, 3), (2, 3)])


@pytest.fixture(scope="session")
def bridge8() -> Graph:
    """Two 4-cliques joined by the single edge (4, 5)."""
    return Graph.from_edges(
        [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
         (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8), (4, 5)]
    )


@pytest.fixture(scope="session")
def fig1_inst():
    return gen_clique_star(3, 7, 4)


@pytest.fixture(scope="session")
def fig2_inst():
    return gen_fig2()


@pytest.fixture(scope="session")
def zachary_inst():
    return zachary()
