"""Budgeted link-query oracle over a hidden graph.

A measurement knows the node set of the hidden graph but none of its links.
It learns about links one pair query at a time, paying one unit of budget
per query, and accumulates what it saw: which pairs were tested, which links
exist, and the observed degree of every node touched by a discovered link.

Strategies are expected to consult :meth:`MeasurementState.is_tested` and
the remaining budget before querying; a repeated query or a query past the
budget is a caller bug and raises.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .graph import Graph

_EMPTY: frozenset[int] = frozenset()


class MeasurementError(Exception):
    """Base class for misuse of the query oracle."""


class DuplicateQueryError(MeasurementError):
    """A pair was queried twice within one measurement."""


class BudgetExhaustedError(MeasurementError):
    """query() was called after the last allowed link query."""


class QueryEvent(NamedTuple):
    u: int
    v: int
    found: bool
    phase: str


@dataclass
class MeasurementTrace:
    """Cumulative discovery counts per query, plus an optional event log.

    ``cumulative[i]`` is the number of distinct links discovered by the end
    of query i+1. Events, when recorded, hold one (u, v, found, phase)
    entry per query in issue order.
    """

    cumulative: list[int] = field(default_factory=list)
    events: list[QueryEvent] | None = None

    @property
    def final_links(self) -> int:
        return self.cumulative[-1] if self.cumulative else 0

    def __len__(self) -> int:
        return len(self.cumulative)


class MeasurementState:
    """One measurement in progress against a hidden graph.

    Tested pairs are stored packed as ``min * n + max`` in a hash set, one
    entry per issued query, so memory grows with the query count rather
    than the pair count.

    Random pair selection consumes the supplied ``random.Random`` in a
    fixed pattern that reruns (and independent reimplementations) must
    reproduce exactly: while fewer than half of all pairs are tested, draw
    ``u = rng.randrange(n)`` then ``v = rng.randrange(n)``, rejecting
    ``u == v`` and already-tested pairs; once at least half are tested,
    list the untested pairs in ascending (u, v) order and pick the one at
    index ``rng.randrange(len(untested))``.
    """

    def __init__(self, graph: Graph, budget: int, record_events: bool = False):
        if budget < 1:
            raise ValueError("budget must be at least 1")
        self._graph = graph
        self._n = graph.node_count
        self._adj = graph.adjacency
        self._budget = budget
        self._tested: set[int] = set()
        self._discovered: dict[int, set[int]] = {}
        self._found = 0
        self.trace = MeasurementTrace(events=[] if record_events else None)
        #: label attached to recorded events; strategies set it at phase changes
        self.phase = ""

    # -- bookkeeping views -------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def budget(self) -> int:
        return self._budget

    @property
    def query_count(self) -> int:
        return len(self._tested)

    @property
    def remaining(self) -> int:
        return self._budget - len(self._tested)

    @property
    def discovered_links(self) -> int:
        """Number of distinct links found so far (m')."""
        return self._found

    def observed_nodes(self) -> set[int]:
        """Nodes touched by at least one discovered link (V')."""
        return set(self._discovered)

    @property
    def observed_count(self) -> int:
        return len(self._discovered)

    def observed_degree(self, v: int) -> int:
        """Number of discovered links incident to v (d'); 0 if unobserved."""
        s = self._discovered.get(v)
        return len(s) if s is not None else 0

    def observed_neighbors(self, v: int) -> set[int]:
        """Copy of the discovered neighbor set of v; empty if unobserved."""
        return set(self._discovered.get(v, _EMPTY))

    def discovered_edges(self) -> Iterator[tuple[int, int]]:
        """Yield each discovered link once as (u, v) with u < v."""
        for u in sorted(self._discovered):
            for v in sorted(self._discovered[u]):
                if u < v:
                    yield (u, v)

    def tested_pairs(self) -> set[tuple[int, int]]:
        """All tested pairs as (u, v) tuples with u < v."""
        n = self._n
        return {divmod(key, n) for key in self._tested}

    # -- the oracle --------------------------------------------------------

    def query(self, u: int, v: int) -> bool:
        """Ask whether the pair (u, v) is linked. Costs one unit of budget.

        Raises DuplicateQueryError on a repeated pair, BudgetExhaustedError
        when the budget is spent, and ValueError on u == v or an id outside
        the node range.
        """
        n = self._n
        if u == v:
            raise ValueError("cannot query a node against itself")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"pair ({u}, {v}) outside node range 0..{n - 1}")
        key = u * n + v if u < v else v * n + u
        tested = self._tested
        if key in tested:
            raise DuplicateQueryError(f"pair ({u}, {v}) was already queried")
        if len(tested) >= self._budget:
            raise BudgetExhaustedError(f"budget of {self._budget} queries is spent")
        tested.add(key)
        found = v in self._adj[u]
        if found:
            disc = self._discovered
            s = disc.get(u)
            if s is None:
                disc[u] = {v}
            else:
                s.add(v)
            s = disc.get(v)
            if s is None:
                disc[v] = {u}
            else:
                s.add(u)
            self._found += 1
        self.trace.cumulative.append(self._found)
        events = self.trace.events
        if events is not None:
            events.append(QueryEvent(u, v, found, self.phase))
        return found

    def is_tested(self, u: int, v: int) -> bool:
        """Whether the unordered pair (u, v) was queried already."""
        if u == v:
            raise ValueError("a node does not pair with itself")
        n = self._n
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"pair ({u}, {v}) outside node range 0..{n - 1}")
        key = u * n + v if u < v else v * n + u
        return key in self._tested

    def random_untested_pair(self, rng: random.Random) -> tuple[int, int] | None:
        """Uniformly random untested pair, or None once every pair is tested.

        Does not issue a query and does not mutate the state; only the rng
        advances. See the class docstring for the exact draw pattern.
        """
        n = self._n
        total = n * (n - 1) // 2
        tested = self._tested
        done = len(tested)
        if done >= total:
            return None
        if 2 * done < total:
            randrange = rng.randrange
            while True:
                u = randrange(n)
                v = randrange(n)
                if u == v:
                    continue
                if u > v:
                    u, v = v, u
                if u * n + v not in tested:
                    return (u, v)
        untested = []
        append = untested.append
        for u in range(n):
            base = u * n
            for v in range(u + 1, n):
                if base + v not in tested:
                    append((u, v))
        return untested[rng.randrange(len(untested))]
