from __future__ import annotations

import random

import pytest
from hypothesis import settings

from linkquery import Graph

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture
def triangle() -> Graph:
    return Graph(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def path3() -> Graph:
    return Graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def paw() -> Graph:
    # triangle 0-1-2 with pendant edge 2-3
    return Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


@pytest.fixture
def star5() -> Graph:
    # center 0, five leaves
    return Graph(6, [(0, leaf) for leaf in range(1, 6)])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def adjacency_sets(g: Graph) -> list[set[int]]:
    return [set(g.neighbors(v)) for v in g.nodes()]


def check_trace(cumulative: list[int], m: int, budget: int) -> None:
    """Assert the structural invariants every discovery trace must obey."""
    assert len(cumulative) <= budget
    previous = 0
    for i, value in enumerate(cumulative, start=1):
        assert value in (previous, previous + 1), f"step at query {i} is not 0/1"
        assert value <= min(i, m)
        previous = value
