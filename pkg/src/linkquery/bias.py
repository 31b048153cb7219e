"""Statistics of the observed sample and their bias against the truth.

The sample is the graph a measurement actually saw: the discovered links
and the nodes they touch. Its statistics use the same conventions as
whole-graph statistics, with density taken over the observed nodes, so a
strategy that concentrates queries on few nodes can report a sample far
denser than the hidden graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphStats, graph_stats
from .oracle import MeasurementState


@dataclass(frozen=True)
class SampleStats:
    """Summary statistics of the observed subgraph."""

    n_prime: int
    m_prime: int
    density: float
    avg_degree: float
    max_degree: int
    clustering: float
    transitivity: float


_RATIO_FIELDS = (
    ("nodes", "node_count", "n_prime"),
    ("links", "edge_count", "m_prime"),
    ("density", "density", "density"),
    ("avg_degree", "avg_degree", "avg_degree"),
    ("max_degree", "max_degree", "max_degree"),
    ("clustering", "clustering", "clustering"),
    ("transitivity", "transitivity", "transitivity"),
)


@dataclass(frozen=True)
class BiasReport:
    """Reference statistics, sample statistics, and their ratios.

    ``ratios[name]`` is sample / reference, or None where the reference
    value is zero and the ratio is undefined.
    """

    reference: GraphStats
    sample: SampleStats
    ratios: dict[str, float | None]


def observed_graph(state: MeasurementState) -> tuple[Graph | None, list[int]]:
    """The discovered links as a graph on dense ids, plus the id mapping.

    Returns (None, []) when nothing was discovered. ``mapping[i]`` is the
    original node id of sample node i; observed nodes are relabeled in
    ascending original order.
    """
    mapping = sorted(state.observed_nodes())
    if not mapping:
        return None, []
    index = {node: i for i, node in enumerate(mapping)}
    edges = [(index[u], index[v]) for u, v in state.discovered_edges()]
    return Graph(len(mapping), edges), mapping


def sample_stats(state: MeasurementState) -> SampleStats:
    """Statistics of the observed subgraph; all zero for an empty sample."""
    sub, _ = observed_graph(state)
    if sub is None:
        return SampleStats(0, 0, 0.0, 0.0, 0, 0.0, 0.0)
    stats = graph_stats(sub)
    return SampleStats(
        n_prime=stats.node_count,
        m_prime=stats.edge_count,
        density=stats.density,
        avg_degree=stats.avg_degree,
        max_degree=stats.max_degree,
        clustering=stats.clustering,
        transitivity=stats.transitivity,
    )


def bias_report(graph: Graph, state: MeasurementState) -> BiasReport:
    """Compare what a measurement saw against the full hidden graph."""
    reference = graph_stats(graph)
    sample = sample_stats(state)
    ratios: dict[str, float | None] = {}
    for name, ref_field, sample_field in _RATIO_FIELDS:
        ref_value = getattr(reference, ref_field)
        sample_value = getattr(sample, sample_field)
        ratios[name] = sample_value / ref_value if ref_value else None
    return BiasReport(reference=reference, sample=sample, ratios=ratios)
