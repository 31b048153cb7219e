"""Undirected simple graphs on dense integer ids, plus summary statistics.

The statistics follow the conventions used throughout the package:

* local clustering of a node with degree below 2 is undefined (``None``),
* the clustering coefficient averages local clustering over the nodes where
  it is defined (0.0 if there are none),
* transitivity is the ratio of closed wedges to all wedges, equivalently
  3 * triangles / wedges, and is 0.0 on wedge-free graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class GraphStats:
    """Bundle of whole-graph statistics."""

    node_count: int
    edge_count: int
    density: float
    avg_degree: float
    max_degree: int
    clustering: float
    transitivity: float


class Graph:
    """Immutable undirected simple graph on node ids 0..n-1.

    Neighbors are stored as per-node frozensets, so membership tests and
    degree lookups are O(1) and instances can be shared freely between
    threads or worker processes. Self-loops are rejected; duplicate edges
    collapse silently.
    """

    __slots__ = ("_adj", "_edge_count")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 1:
            raise ValueError("graph needs at least one node")
        adj: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(
                    f"edge ({u}, {v}) outside node range 0..{node_count - 1}"
                )
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self._edge_count = sum(len(s) for s in adj) // 2

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Per-node neighbor sets, indexable by node id."""
        return self._adj

    def nodes(self) -> range:
        return range(len(self._adj))

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_node(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_node(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in ascending order."""
        for u, nbrs in enumerate(self._adj):
            for v in sorted(nbrs):
                if u < v:
                    yield (u, v)

    def _check_node(self, v: int) -> None:
        if not (0 <= v < len(self._adj)):
            raise ValueError(f"node id {v} outside range 0..{len(self._adj) - 1}")

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


def density(g: Graph) -> float:
    """Fraction of node pairs that are linked: 2m / (n * (n - 1)).

    Returns 0.0 for a single-node graph, which has no pairs.
    """
    n = g.node_count
    if n < 2:
        return 0.0
    return 2.0 * g.edge_count / (n * (n - 1))


def _triangle_degree(g: Graph, v: int) -> int:
    # number of edges among the neighbors of v
    adj = g.adjacency
    nbrs = adj[v]
    return sum(len(nbrs & adj[w]) for w in nbrs) // 2


def local_clustering(g: Graph, v: int) -> float | None:
    """Fraction of neighbor pairs of v that are themselves linked.

    Returns None for nodes of degree < 2, where the quantity is undefined.
    """
    g._check_node(v)
    d = g.degree(v)
    if d < 2:
        return None
    return _triangle_degree(g, v) / (d * (d - 1) / 2)


def clustering_coefficient(g: Graph) -> float:
    """Mean local clustering over the nodes where it is defined.

    Nodes of degree < 2 are excluded from the average; a graph with no such
    node yields 0.0.
    """
    total = 0.0
    count = 0
    adj = g.adjacency
    for v in g.nodes():
        d = len(adj[v])
        if d < 2:
            continue
        total += _triangle_degree(g, v) / (d * (d - 1) / 2)
        count += 1
    return total / count if count else 0.0


def transitivity(g: Graph) -> float:
    """Closed wedges over all wedges: 3 * triangles / wedges.

    Every triangle closes three wedges, so this equals the sum over nodes of
    edges-among-neighbors divided by the total wedge count. Wedge-free
    graphs yield 0.0.
    """
    closed = 0
    wedges = 0
    adj = g.adjacency
    for v in g.nodes():
        d = len(adj[v])
        if d < 2:
            continue
        closed += _triangle_degree(g, v)
        wedges += d * (d - 1) // 2
    return closed / wedges if wedges else 0.0


def graph_stats(g: Graph) -> GraphStats:
    """Compute all summary statistics in one pass over the adjacency."""
    n = g.node_count
    adj = g.adjacency
    degrees = [len(adj[v]) for v in range(n)]
    closed = 0
    wedges = 0
    cc_total = 0.0
    cc_count = 0
    for v in range(n):
        d = degrees[v]
        if d < 2:
            continue
        tri = _triangle_degree(g, v)
        pairs = d * (d - 1) // 2
        closed += tri
        wedges += pairs
        cc_total += tri / pairs
        cc_count += 1
    return GraphStats(
        node_count=n,
        edge_count=g.edge_count,
        density=density(g),
        avg_degree=2.0 * g.edge_count / n,
        max_degree=max(degrees),
        clustering=cc_total / cc_count if cc_count else 0.0,
        transitivity=closed / wedges if wedges else 0.0,
    )
