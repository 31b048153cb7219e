"""Efficiency metrics for discovery traces.

The efficiency of a trace after q queries is the sum of the cumulative
discovery counts over the first q queries. It rewards finding links early:
a link found at query i contributes once per remaining query, so earlier
finds contribute more. All sums are exact integer arithmetic; floating
point enters only in the final ratios.

Normalization maps an efficiency onto [0, 1] between two closed-form
envelopes: the worst case (every negative pair tested before the first
link) and the best case (every query a hit until the links run out).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, density

_CLAMP_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EfficiencyReport:
    """Efficiency summary of one trace at a fixed query count."""

    q: int
    m_prime_final: int
    pct_pairs_tested: float
    pct_links_found: float
    efficiency: int
    normalized: float
    relative: float


def _cumulative(trace) -> Sequence[int]:
    return getattr(trace, "cumulative", trace)


def efficiency(trace, q: int) -> int:
    """Sum of the cumulative discovery counts over the first q queries."""
    cum = _cumulative(trace)
    if q < 0 or q > len(cum):
        raise ValueError(f"q={q} outside the trace length {len(cum)}")
    return sum(cum[:q])


def efficiency_min(n: int, m: int, q: int) -> int:
    """Worst-case efficiency: all negative pairs tested first.

    With P = n*(n-1)/2 total pairs, the first P - m queries find nothing
    and the remainder are all hits.
    """
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError(f"m={m} exceeds the {total} pairs of an n={n} graph")
    if q > total:
        raise ValueError(f"q={q} exceeds the {total} pairs of an n={n} graph")
    misses = total - m
    if q <= misses:
        return 0
    t = q - misses
    return t * (t + 1) // 2


def efficiency_max(m: int, q: int) -> int:
    """Best-case efficiency: every query hits until all m links are found."""
    if q <= m:
        return q * (q + 1) // 2
    return m * (m + 1) // 2 + (q - m) * m


def efficiency_random_expected(delta: float, q: int) -> float:
    """Expected efficiency of uniform random testing at link density delta.

    Each query finds a link with probability delta, so the expected
    cumulative count after i queries is i * delta and the expected
    efficiency is q * (q + 1) / 2 * delta.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0, 1]")
    return q * (q + 1) / 2 * delta


def efficiency_random_exact(n: int, m: int, q: int) -> float:
    """Exact expected efficiency of random testing without replacement.

    After i distinct uniformly chosen pairs the expected number of links
    seen is i * m / P, so the expectation coincides with
    efficiency_random_expected at delta = 2m / (n * (n - 1)). Provided as
    an independent diagnostic formulation.
    """
    total = n * (n - 1) // 2
    if m > total or q > total:
        raise ValueError("m and q must not exceed the pair count")
    return q * (q + 1) * m / (n * (n - 1))


def normalized_efficiency(e: float, n: int, m: int, q: int) -> float:
    """Map an efficiency onto [0, 1] between the worst and best envelopes.

    Raises when the envelopes coincide (the normalization is undefined,
    e.g. on a link-free graph) or when e lies outside them by more than
    rounding error; tiny overshoot from float arithmetic is clamped.
    """
    lo = efficiency_min(n, m, q)
    hi = efficiency_max(m, q)
    span = hi - lo
    if span <= 0:
        raise ValueError(
            f"normalization undefined for n={n}, m={m}, q={q}: envelope is a point"
        )
    value = (e - lo) / span
    if value < 0.0:
        if value < -_CLAMP_TOLERANCE:
            raise ValueError(f"efficiency {e} below the worst-case envelope {lo}")
        value = 0.0
    elif value > 1.0:
        if value > 1.0 + _CLAMP_TOLERANCE:
            raise ValueError(f"efficiency {e} above the best-case envelope {hi}")
        value = 1.0
    return value


def relative_efficiency(e_norm: float, delta: float, n: int, m: int, q: int) -> float:
    """Normalized efficiency divided by that of the random baseline."""
    baseline = normalized_efficiency(efficiency_random_expected(delta, q), n, m, q)
    if baseline == 0.0:
        raise ValueError("relative efficiency undefined: random baseline is at the minimum")
    return e_norm / baseline


def build_report(trace, graph: Graph, q: int) -> EfficiencyReport:
    """Efficiency summary of a trace against its graph at query count q."""
    cum = _cumulative(trace)
    if q < 1 or q > len(cum):
        raise ValueError(f"q={q} outside the trace length {len(cum)}")
    n = graph.node_count
    m = graph.edge_count
    total = n * (n - 1) // 2
    e = sum(cum[:q])
    norm = normalized_efficiency(e, n, m, q)
    rel = relative_efficiency(norm, density(graph), n, m, q)
    found = cum[q - 1]
    return EfficiencyReport(
        q=q,
        m_prime_final=found,
        pct_pairs_tested=q / total,
        pct_links_found=found / m,
        efficiency=e,
        normalized=norm,
        relative=rel,
    )
