"""Link-query measurement strategies.

Each strategy drives a :class:`~linkquery.oracle.MeasurementState` until its
own stopping rule fires, the query budget runs out, or no untested pair is
left. Budget exhaustion is a normal stop: the remaining budget is checked
before every single query and the strategy returns cleanly mid-phase.

Deterministic ordering conventions, shared by every strategy so that traces
are reproducible:

* ties in "decreasing observed degree" break toward the smaller node id,
* node pairs order lexicographically by (smaller id, larger id),
* sweeps over the whole node set visit ids in ascending order,
* iteration over observed neighbor sets is in ascending id order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph
from .oracle import MeasurementState, MeasurementTrace

KINDS = ("random", "v_random", "complete_simple", "complete", "tbf", "tbf_complete")
BOOTSTRAPS = ("random", "v_random")

#: command-line strategy name -> (kind, bootstrap kind)
STRATEGY_NAMES: dict[str, tuple[str, str]] = {
    "random": ("random", "random"),
    "v-random": ("v_random", "random"),
    "cs": ("complete_simple", "random"),
    "v-cs": ("complete_simple", "v_random"),
    "c": ("complete", "random"),
    "v-c": ("complete", "v_random"),
    "tbf": ("tbf", "random"),
    "v-tbf": ("tbf", "v_random"),
    "tbfc": ("tbf_complete", "random"),
    "v-tbfc": ("tbf_complete", "v_random"),
}

_NAME_BY_CONFIG = {v: k for k, v in STRATEGY_NAMES.items()}


@dataclass(frozen=True)
class StrategySpec:
    """Full description of one strategy run.

    ``k`` is the phase-1 target: random-family strategies stop once k links
    are discovered, two-phase strategies bootstrap to k links before their
    main phase. ``bootstrap`` selects the phase-1 flavor and is ignored by
    the random and v_random kinds. ``tbf_dynamic`` switches the
    test-between-found pair ordering from a frozen snapshot to live
    observed degrees; it affects only the tbf and tbf_complete kinds.
    """

    kind: str
    k: int
    budget: int
    seed: int = 0
    bootstrap: str = "random"
    tbf_dynamic: bool = False

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.bootstrap not in BOOTSTRAPS:
            raise ValueError(f"unknown bootstrap kind {self.bootstrap!r}")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")

    @property
    def label(self) -> str:
        """CLI-style name of this configuration, e.g. ``v-cs:100``."""
        if self.kind in ("random", "v_random"):
            name = _NAME_BY_CONFIG[(self.kind, "random")]
        else:
            name = _NAME_BY_CONFIG[(self.kind, self.bootstrap)]
        return f"{name}:{self.k}"


class _BudgetStop(Exception):
    # internal stop signal, never visible to callers
    pass


def _guarded_query(state: MeasurementState, u: int, v: int) -> bool:
    if state.remaining == 0:
        raise _BudgetStop
    return state.query(u, v)


# -- phase bodies ----------------------------------------------------------


def _random_phase(state: MeasurementState, k: int, rng: random.Random) -> None:
    state.phase = "random"
    while state.discovered_links < k:
        pair = state.random_untested_pair(rng)
        if pair is None:
            return
        _guarded_query(state, pair[0], pair[1])


def _v_random_phase(state: MeasurementState, k: int, rng: random.Random) -> None:
    """Random testing where every hit triggers closure tests.

    After a positive (u, v), all untested pairs between v and the observed
    neighbors of u are tested, then between u and the observed neighbors of
    v. Closure hits do not recurse; they count toward k like any other
    discovery, checked at the top of the loop.
    """
    while state.discovered_links < k:
        pair = state.random_untested_pair(rng)
        if pair is None:
            return
        u, v = pair
        state.phase = "random"
        if not _guarded_query(state, u, v):
            continue
        state.phase = "closure"
        for w in sorted(state.observed_neighbors(u)):
            if w != v and not state.is_tested(v, w):
                _guarded_query(state, v, w)
        for w in sorted(state.observed_neighbors(v)):
            if w != u and not state.is_tested(u, w):
                _guarded_query(state, u, w)


def _bootstrap(state: MeasurementState, kind: str, k: int, rng: random.Random) -> None:
    if kind == "v_random":
        _v_random_phase(state, k, rng)
    else:
        _random_phase(state, k, rng)


def _sweep(state: MeasurementState, u: int) -> None:
    # test u against every node it has not been paired with yet
    for v in range(state.node_count):
        if v == u or state.is_tested(u, v):
            continue
        _guarded_query(state, u, v)


def _complete_simple_phase(state: MeasurementState) -> None:
    snapshot = sorted(state.observed_nodes())
    deg = {v: state.observed_degree(v) for v in snapshot}
    for u in sorted(snapshot, key=lambda v: (-deg[v], v)):
        _sweep(state, u)


def _complete_phase(state: MeasurementState) -> None:
    """Sweep observed nodes by live observed degree, growing the work set.

    A positive query against a previously unobserved node puts that node in
    the work set, so the sweep expands into whatever the sweeps uncover.
    """
    work = state.observed_nodes()
    deg = state.observed_degree
    n = state.node_count
    while work:
        u = max(work, key=lambda v: (deg(v), -v))
        work.discard(u)
        for v in range(n):
            if v == u or state.is_tested(u, v):
                continue
            unseen = deg(v) == 0
            if _guarded_query(state, u, v) and unseen:
                work.add(v)


def _tbf_pair_order(nodes: list[int], deg: dict[int, int]) -> list[tuple[int, int]]:
    """All pairs within nodes, by decreasing degree sum, then ascending ids."""
    pairs = []
    for i, u in enumerate(nodes):
        for v in nodes[i + 1 :]:
            pairs.append((u, v))
    pairs.sort(key=lambda p: (-(deg[p[0]] + deg[p[1]]), p[0], p[1]))
    return pairs


def _tbf_phase(state: MeasurementState, dynamic: bool) -> None:
    nodes = sorted(state.observed_nodes())
    deg = {v: state.observed_degree(v) for v in nodes}
    if not dynamic:
        for u, v in _tbf_pair_order(nodes, deg):
            if state.is_tested(u, v):
                continue
            _guarded_query(state, u, v)
        return
    # live variant: re-rank the remaining pairs as observed degrees grow
    live = state.observed_degree
    pending = [(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1 :]]
    while pending:
        keep = []
        best = None
        best_key = None
        for p in pending:
            if state.is_tested(p[0], p[1]):
                continue
            keep.append(p)
            key = (live(p[0]) + live(p[1]), -p[0], -p[1])
            if best_key is None or key > best_key:
                best_key = key
                best = p
        if not keep:
            return
        _guarded_query(state, best[0], best[1])
        keep.remove(best)
        pending = keep


# -- public strategies -----------------------------------------------------


def strat_random(state: MeasurementState, k: int, rng: random.Random) -> None:
    """Test uniformly random untested pairs until k links are found."""
    try:
        _random_phase(state, k, rng)
    except _BudgetStop:
        pass


def strat_v_random(state: MeasurementState, k: int, rng: random.Random) -> None:
    """Random testing plus closure tests around every discovered link."""
    try:
        _v_random_phase(state, k, rng)
    except _BudgetStop:
        pass


def strat_complete_simple(
    state: MeasurementState, k: int, bootstrap: str, rng: random.Random
) -> None:
    """Bootstrap to k links, then sweep each observed node against all nodes.

    The sweep order is frozen when the bootstrap ends: observed nodes by
    decreasing observed degree at that moment.
    """
    try:
        _bootstrap(state, bootstrap, k, rng)
        state.phase = "sweep"
        _complete_simple_phase(state)
    except _BudgetStop:
        pass


def strat_complete(
    state: MeasurementState, k: int, bootstrap: str, rng: random.Random
) -> None:
    """Bootstrap to k links, then sweep by live degree with a growing work set."""
    try:
        _bootstrap(state, bootstrap, k, rng)
        state.phase = "sweep"
        _complete_phase(state)
    except _BudgetStop:
        pass


def strat_tbf(
    state: MeasurementState,
    k: int,
    bootstrap: str,
    rng: random.Random,
    dynamic: bool = False,
) -> None:
    """Bootstrap to k links, then test pairs among the observed nodes.

    Pairs are ranked by the sum of the endpoints' observed degrees at the
    end of the bootstrap (or live, with ``dynamic=True``).
    """
    try:
        _bootstrap(state, bootstrap, k, rng)
        state.phase = "pair"
        _tbf_phase(state, dynamic)
    except _BudgetStop:
        pass


def strat_tbf_complete(
    state: MeasurementState,
    k: int,
    bootstrap: str,
    rng: random.Random,
    dynamic: bool = False,
) -> None:
    """Pair testing among observed nodes, then a live-degree sweep phase.

    Both phases share the one budget; the sweep starts from the nodes
    observed at the end of the pair phase, with no fresh bootstrap.
    """
    try:
        _bootstrap(state, bootstrap, k, rng)
        state.phase = "pair"
        _tbf_phase(state, dynamic)
        state.phase = "sweep"
        _complete_phase(state)
    except _BudgetStop:
        pass


# -- running a spec --------------------------------------------------------


def run_measurement(
    graph: Graph, spec: StrategySpec, record_events: bool = False
) -> tuple[MeasurementState, MeasurementTrace]:
    """Run one strategy to completion and return (state, padded trace).

    The returned trace is padded with the final discovery count up to the
    budget length, so traces of different runs line up query-for-query.
    """
    spec.validate()
    rng = random.Random(spec.seed)
    state = MeasurementState(graph, spec.budget, record_events=record_events)
    kind = spec.kind
    if kind == "random":
        strat_random(state, spec.k, rng)
    elif kind == "v_random":
        strat_v_random(state, spec.k, rng)
    elif kind == "complete_simple":
        strat_complete_simple(state, spec.k, spec.bootstrap, rng)
    elif kind == "complete":
        strat_complete(state, spec.k, spec.bootstrap, rng)
    elif kind == "tbf":
        strat_tbf(state, spec.k, spec.bootstrap, rng, spec.tbf_dynamic)
    else:
        strat_tbf_complete(state, spec.k, spec.bootstrap, rng, spec.tbf_dynamic)
    cum = state.trace.cumulative
    padded = list(cum)
    padded.extend([state.discovered_links] * (spec.budget - len(cum)))
    return state, MeasurementTrace(cumulative=padded, events=state.trace.events)


def run_strategy(graph: Graph, spec: StrategySpec) -> MeasurementTrace:
    """Run one strategy and return its padded discovery trace."""
    _, trace = run_measurement(graph, spec)
    return trace
