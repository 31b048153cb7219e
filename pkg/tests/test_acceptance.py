"""End-to-end acceptance suite.

Nine criteria, one test each: exact trace equivalence against an
independent reference interpreter, brute-force statistical agreement,
analytic efficiency envelopes, and qualitative strategy behavior on
synthetic graphs at realistic scale. Each test prints a single
"ACCEPTANCE <n> <name>: PASS/FAIL" line (run pytest with -s to see them
on success; they also appear in the captured output of any failure).

Criteria 4 through 7 are heavyweight run grids. They are computed once
in a lazily filled module-level store that criterion 8 audits afterwards
(trace invariants plus full same-seed rerun identity), so the audit
covers exactly the runs the other criteria scored no matter which test
executes first.

Runtime limits are part of the criteria and are asserted. The budgets
are generous against measured times (the slowest grid runs in under
half its limit on a laptop-class core) but a severely loaded machine can
still trip them; that is a real failure of the criterion, not noise.
"""

from __future__ import annotations

import hashlib
import random
import statistics
from itertools import accumulate
from time import perf_counter

import numpy as np
import pytest

from brute import best_case_curve, brute_stats, worst_case_curve
from conftest import adjacency_sets
from linkquery import (
    Graph,
    StrategySpec,
    clustering_coefficient,
    erdos_renyi,
    graph_stats,
    preferential_attachment,
    run_measurement,
    sample_stats,
    small_world,
    transitivity,
)
from linkquery.metrics import (
    efficiency,
    efficiency_max,
    efficiency_min,
    efficiency_random_expected,
    normalized_efficiency,
    relative_efficiency,
)
from linkquery.strategies import STRATEGY_NAMES
from reference import reference_run

LIMITS = {1: 60.0, 2: 60.0, 3: 60.0, 4: 120.0, 5: 300.0, 6: 300.0, 7: 300.0}


def verdict(num: int, name: str, ok: bool, detail: str = "") -> bool:
    line = f"ACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line, flush=True)
    return ok


def _digest(state, trace) -> str:
    h = hashlib.sha256()
    h.update(np.asarray(trace.cumulative, dtype=np.int64).tobytes())
    h.update(repr(sorted(state.discovered_edges())).encode())
    return h.hexdigest()


def _audit(graph_key: str, g: Graph, spec: StrategySpec, state, trace) -> dict:
    raw = np.asarray(state.trace.cumulative, dtype=np.int64)
    if raw.size:
        steps = np.diff(raw, prepend=np.int64(0))
        steps_ok = bool(((steps == 0) | (steps == 1)).all())
        qs = np.arange(1, raw.size + 1, dtype=np.int64)
        bound_ok = bool((raw <= np.minimum(qs, g.edge_count)).all())
    else:
        steps_ok = bound_ok = True
    return {
        "graph_key": graph_key,
        "kind": spec.kind,
        "bootstrap": spec.bootstrap,
        "k": spec.k,
        "budget": spec.budget,
        "seed": spec.seed,
        "digest": _digest(state, trace),
        "steps_ok": steps_ok,
        "bound_ok": bound_ok,
        # every issued query consumed one budget unit and entered the
        # distinct-pair set exactly once, so no duplicate ever fired
        "dup_ok": state.query_count == raw.size,
    }


class _RunStore:
    """Lazily computed run grids shared between criteria 4-7 and 8."""

    _GRAPHS = {
        "er200": lambda: erdos_renyi(200, 0.05, seed=1),
        "pa5000": lambda: preferential_attachment(5000, 3, seed=1),
        "ws5000": lambda: small_world(5000, 10, 0.05, seed=1),
        "ws3000": lambda: small_world(3000, 10, 0.05, seed=1),
    }

    def __init__(self):
        self.records: list[dict] = []
        self._graphs: dict[str, Graph] = {}
        self._stats: dict = {}
        self._cache: dict[str, dict] = {}

    def graph(self, key: str) -> Graph:
        if key not in self._graphs:
            self._graphs[key] = self._GRAPHS[key]()
        return self._graphs[key]

    def stats(self, key: str):
        if key not in self._stats:
            self._stats[key] = graph_stats(self.graph(key))
        return self._stats[key]

    def run(self, graph_key, *, kind, k, budget, seed, bootstrap="random", record=True):
        g = self.graph(graph_key)
        spec = StrategySpec(kind=kind, bootstrap=bootstrap, k=k, budget=budget, seed=seed)
        state, trace = run_measurement(g, spec)
        if record:
            self.records.append(_audit(graph_key, g, spec, state, trace))
        return state, trace

    def rerun_digest(self, rec: dict) -> str:
        state, trace = self.run(
            rec["graph_key"],
            kind=rec["kind"],
            bootstrap=rec["bootstrap"],
            k=rec["k"],
            budget=rec["budget"],
            seed=rec["seed"],
            record=False,
        )
        return _digest(state, trace)

    def relative(self, graph_key: str, trace, q: int) -> float:
        g = self.graph(graph_key)
        e = efficiency(trace.cumulative, q)
        e_norm = normalized_efficiency(e, g.node_count, g.edge_count, q)
        return relative_efficiency(
            e_norm, self.stats(graph_key).density, g.node_count, g.edge_count, q
        )

    def c4(self) -> dict:
        """Mean efficiency of the random strategy on a mid-size uniform graph."""
        if "c4" not in self._cache:
            t0 = perf_counter()
            g = self.graph("er200")
            pair_count = g.node_count * (g.node_count - 1) // 2
            q = pair_count // 20
            expected = efficiency_random_expected(self.stats("er200").density, q)
            total = 0
            for seed in range(1000):
                _, trace = self.run("er200", kind="random", k=q, budget=q, seed=seed)
                total += efficiency(trace.cumulative, q)
            mean_e = total / 1000
            self._cache["c4"] = {
                "q": q,
                "mean": mean_e,
                "expected": expected,
                "rel_err": abs(mean_e - expected) / expected,
                "elapsed": perf_counter() - t0,
            }
        return self._cache["c4"]

    def c5(self) -> dict:
        """Mean relative efficiency per strategy on a heavy-tailed graph.

        k=100 parameterizes the two-phase strategy's bootstrap; the two
        random-family baselines get k equal to the budget, the documented
        way to let a stop-at-k strategy run its whole budget (the natural
        reading of a bounded-k run here, since a small k would freeze the
        baselines early and score them on padding instead of querying).
        """
        if "c5" not in self._cache:
            t0 = perf_counter()
            g = self.graph("pa5000")
            budget = g.node_count * (g.node_count - 1) // 2 // 50
            arms = {
                "complete": {"kind": "complete", "k": 100},
                "v_random": {"kind": "v_random", "k": budget},
                "random": {"kind": "random", "k": budget},
            }
            means = {}
            for label, args in arms.items():
                rs = []
                for seed in range(20):
                    _, trace = self.run("pa5000", budget=budget, seed=seed, **args)
                    rs.append(self.relative("pa5000", trace, budget))
                means[label] = statistics.fmean(rs)
            means["elapsed"] = perf_counter() - t0
            means["q"] = budget
            self._cache["c5"] = means
        return self._cache["c5"]

    def c6(self) -> dict:
        """Random vs v-random relative efficiency on a high-clustering graph."""
        if "c6" not in self._cache:
            t0 = perf_counter()
            budget = 1_500_000
            out = {"q": budget}
            min_links = None
            for label in ("v_random", "random"):
                rs = []
                for seed in range(20):
                    state, trace = self.run(
                        "ws5000", kind=label, k=budget, budget=budget, seed=seed
                    )
                    rs.append(self.relative("ws5000", trace, budget))
                    final = state.discovered_links
                    min_links = final if min_links is None else min(min_links, final)
                out[label] = statistics.fmean(rs)
            out["min_links"] = min_links
            out["elapsed"] = perf_counter() - t0
            self._cache["c6"] = out
        return self._cache["c6"]

    def c7(self) -> dict:
        """Median sample statistics per strategy on a high-clustering graph."""
        if "c7" not in self._cache:
            t0 = perf_counter()
            budget = 400_000
            tbf_cc, comp_cc, vrand_tr = [], [], []
            for seed in range(20):
                state, _ = self.run("ws3000", kind="tbf", k=300, budget=budget, seed=seed)
                tbf_cc.append(sample_stats(state).clustering)
                state, _ = self.run("ws3000", kind="complete", k=300, budget=budget, seed=seed)
                comp_cc.append(sample_stats(state).clustering)
                state, _ = self.run("ws3000", kind="v_random", k=budget, budget=budget, seed=seed)
                vrand_tr.append(sample_stats(state).transitivity)
            self._cache["c7"] = {
                "tbf_cc": statistics.median(tbf_cc),
                "complete_cc": statistics.median(comp_cc),
                "v_random_tr": statistics.median(vrand_tr),
                "elapsed": perf_counter() - t0,
            }
        return self._cache["c7"]

    def c9(self) -> dict:
        """Final discovery counts for the mixed strategy vs plain complete."""
        if "c9" not in self._cache:
            g = self.graph("pa5000")
            budget = g.node_count * (g.node_count - 1) // 2 // 50
            out = {"q": budget}
            for label, kind in (("tbfc", "tbf_complete"), ("complete", "complete")):
                finals, effs = [], []
                for seed in range(20):
                    state, trace = self.run(
                        "pa5000", kind=kind, k=50, budget=budget, seed=seed, record=False
                    )
                    finals.append(state.discovered_links)
                    effs.append(efficiency(trace.cumulative, budget))
                out[f"final_{label}"] = statistics.fmean(finals)
                out[f"eff_{label}"] = statistics.fmean(effs)
            self._cache["c9"] = out
        return self._cache["c9"]


STORE = _RunStore()


@pytest.fixture(scope="module")
def store() -> _RunStore:
    return STORE


def test_criterion_1_trace_equivalence_with_reference_interpreter():
    t0 = perf_counter()
    rng = random.Random(0)
    graphs = []
    for _ in range(500):
        n = rng.randint(2, 6)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        p = rng.choice([0.15, 0.3, 0.5, 0.8])
        edges = [e for e in pairs if rng.random() < p]
        graphs.append((Graph(n, edges), frozenset(edges), len(pairs)))

    runs = 0
    for gi, (g, edge_set, pair_count) in enumerate(graphs):
        for name, (kind, bootstrap) in STRATEGY_NAMES.items():
            for seed in range(10):
                k = (gi + seed) % 4 + 1
                budget = (pair_count, max(1, pair_count // 2), 3, max(1, pair_count - 1))[seed % 4]
                state, trace = run_measurement(
                    g,
                    StrategySpec(kind=kind, bootstrap=bootstrap, k=k, budget=budget, seed=seed),
                )
                ref = reference_run(g.node_count, edge_set, name, k, budget, seed)
                where = f"graph {gi}, {name}, k={k}, budget={budget}, seed={seed}"
                assert trace.cumulative == ref["cumulative"], where
                assert frozenset(state.discovered_edges()) == ref["links"], where
                assert frozenset(state.tested_pairs()) == ref["tested"], where
                assert state.query_count == ref["queries"], where
                runs += 1

    elapsed = perf_counter() - t0
    ok = runs == 500 * len(STRATEGY_NAMES) * 10 and elapsed < LIMITS[1]
    detail = f"{runs} paired runs over 500 graphs, {elapsed:.1f}s"
    assert verdict(1, "trace equivalence with reference interpreter", ok, detail), detail


def test_criterion_2_statistics_match_triple_enumeration():
    t0 = perf_counter()

    def close(a: float, b: float) -> bool:
        return a == b or abs(a - b) <= 1e-12 * max(abs(a), abs(b))

    rng = random.Random(1)
    checked = 0
    for _ in range(1000):
        n = rng.randint(2, 8)
        p = rng.uniform(0.05, 0.95)
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        cc_ref, tr_ref = brute_stats(adjacency_sets(g))
        where = f"n={n}, edges={edges}"
        assert close(clustering_coefficient(g), cc_ref), where
        assert close(transitivity(g), tr_ref), where
        checked += 1

    elapsed = perf_counter() - t0
    ok = checked == 1000 and elapsed < LIMITS[2]
    detail = f"{checked} graphs, tolerance 1e-12 relative, {elapsed:.1f}s"
    assert verdict(2, "statistics match triple enumeration", ok, detail), detail


def test_criterion_3_efficiency_envelopes_match_brute_curves():
    t0 = perf_counter()
    points = 0
    for n in range(2, 21):
        pair_count = n * (n - 1) // 2
        for m in range(pair_count + 1):
            worst_sums = [0, *accumulate(worst_case_curve(n, m))]
            best_sums = [0, *accumulate(best_case_curve(n, m))]
            for q in range(pair_count + 1):
                where = f"n={n}, m={m}, q={q}"
                assert efficiency_min(n, m, q) == worst_sums[q], where
                assert efficiency_max(m, q) == best_sums[q], where
                points += 1

    elapsed = perf_counter() - t0
    ok = points > 150_000 and elapsed < LIMITS[3]
    detail = f"{points} (n, m, q) points, exact integer equality, {elapsed:.1f}s"
    assert verdict(3, "efficiency envelopes match brute curves", ok, detail), detail


def test_criterion_4_random_baseline_calibration(store):
    r = store.c4()
    ok = r["rel_err"] < 0.05 and r["elapsed"] < LIMITS[4]
    detail = (
        f"mean E over 1000 seeds at q={r['q']}: {r['mean']:.1f} vs expected "
        f"{r['expected']:.1f} ({100 * r['rel_err']:.2f}% err), {r['elapsed']:.1f}s"
    )
    assert verdict(4, "random baseline calibration", ok, detail), detail


def test_criterion_5_degree_principle_dominance(store):
    r = store.c5()
    chain = (
        r["complete"] > 5
        and r["complete"] > r["v_random"]
        and r["v_random"] > 0.8 * r["random"]
    )
    ok = chain and r["elapsed"] < LIMITS[5]
    detail = (
        f"mean R at q={r['q']}: complete={r['complete']:.2f}, "
        f"v-random={r['v_random']:.2f}, random={r['random']:.2f}, {r['elapsed']:.1f}s"
    )
    assert verdict(5, "degree principle dominance", ok, detail), detail


def test_criterion_6_triangle_principle_gain(store):
    r = store.c6()
    ok = (
        r["min_links"] >= 200
        and r["v_random"] >= 1.3 * r["random"]
        and r["elapsed"] < LIMITS[6]
    )
    detail = (
        f"mean R at q={r['q']}: v-random={r['v_random']:.2f} vs random={r['random']:.2f} "
        f"(ratio {r['v_random'] / r['random']:.2f}), min links {r['min_links']}, "
        f"{r['elapsed']:.1f}s"
    )
    assert verdict(6, "triangle principle gain", ok, detail), detail


def test_criterion_7_bias_direction(store):
    r = store.c7()
    ref = store.stats("ws3000")
    tr_err = abs(r["v_random_tr"] - ref.transitivity) / ref.transitivity
    ok = (
        r["tbf_cc"] > ref.clustering
        and r["complete_cc"] < r["tbf_cc"]
        and tr_err <= 0.25
        and r["elapsed"] < LIMITS[7]
    )
    detail = (
        f"median cc: tbf={r['tbf_cc']:.4f} vs reference {ref.clustering:.4f}, "
        f"complete={r['complete_cc']:.4f}; median tr v-random={r['v_random_tr']:.4f} "
        f"vs {ref.transitivity:.4f} ({100 * tr_err:.1f}% off), {r['elapsed']:.1f}s"
    )
    assert verdict(7, "bias direction", ok, detail), detail


def test_criterion_8_trace_invariants_and_rerun_identity(store):
    store.c4()
    store.c5()
    store.c6()
    store.c7()
    records = store.records
    expected = 1000 + 3 * 20 + 2 * 20 + 3 * 20

    flags_ok = all(
        rec["steps_ok"] and rec["bound_ok"] and rec["dup_ok"] for rec in records
    )
    mismatches = sum(1 for rec in records if store.rerun_digest(rec) != rec["digest"])

    ok = len(records) == expected and flags_ok and mismatches == 0
    detail = (
        f"{len(records)} runs audited: unit steps, m'(q) <= min(q, m), "
        f"no duplicate queries, {mismatches} rerun mismatches"
    )
    assert verdict(8, "trace invariants and rerun identity", ok, detail), detail


def test_criterion_9_mixed_strategy_endgame(store):
    r = store.c9()
    ratio = r["final_tbfc"] / r["final_complete"]
    order = "tbfc >= complete" if r["eff_tbfc"] >= r["eff_complete"] else "complete > tbfc"
    ok = ratio >= 0.97
    detail = (
        f"mean final links at q={r['q']}: tbfc={r['final_tbfc']:.1f} vs "
        f"complete={r['final_complete']:.1f} (ratio {ratio:.4f}); mean E recorded, "
        f"not asserted: E(tbfc)={r['eff_tbfc']:.4g}, E(complete)={r['eff_complete']:.4g}, "
        f"ordering {order}"
    )
    assert verdict(9, "mixed strategy endgame", ok, detail), detail
