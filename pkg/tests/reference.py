"""Straight-line reference interpreter of the measurement strategies.

An independent re-implementation used as an oracle for trace equivalence:
plain tuple pairs, observed degrees recounted from scratch on every use,
stops signaled by boolean returns. It shares no code with the package,
only the documented determinism contracts (the random-pair draw pattern,
tie-breaking toward smaller ids, ascending sweeps).
"""

from __future__ import annotations

import random


def reference_run(
    n: int,
    edge_set: frozenset[tuple[int, int]],
    name: str,
    k: int,
    budget: int,
    seed: int,
) -> dict:
    """Run one named strategy and return its full observable outcome."""
    rng = random.Random(seed)
    tested: set[tuple[int, int]] = set()
    links: set[tuple[int, int]] = set()
    cumulative: list[int] = []
    queries = 0

    def canon(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def do_query(a: int, b: int) -> bool:
        nonlocal queries
        pair = canon(a, b)
        assert pair not in tested, "reference bug: duplicate query"
        assert queries < budget, "reference bug: budget overrun"
        tested.add(pair)
        queries += 1
        hit = pair in edge_set
        if hit:
            links.add(pair)
        cumulative.append(len(links))
        return hit

    def pick_random_untested() -> tuple[int, int] | None:
        total = n * (n - 1) // 2
        if len(tested) >= total:
            return None
        if 2 * len(tested) < total:
            while True:
                u = rng.randrange(n)
                v = rng.randrange(n)
                if u == v:
                    continue
                pair = canon(u, v)
                if pair not in tested:
                    return pair
        pairs = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if (u, v) not in tested
        ]
        return pairs[rng.randrange(len(pairs))]

    def degree_observed(x: int) -> int:
        return sum(1 for pair in links if x in pair)

    def neighbors_observed(x: int) -> list[int]:
        out = []
        for a, b in links:
            if a == x:
                out.append(b)
            elif b == x:
                out.append(a)
        return sorted(out)

    def nodes_observed() -> list[int]:
        seen = set()
        for a, b in links:
            seen.add(a)
            seen.add(b)
        return sorted(seen)

    # each phase returns True when the budget stopped it mid-way

    def phase_random(target: int) -> bool:
        while len(links) < target:
            pair = pick_random_untested()
            if pair is None:
                return False
            if queries >= budget:
                return True
            do_query(pair[0], pair[1])
        return False

    def phase_v_random(target: int) -> bool:
        while len(links) < target:
            pair = pick_random_untested()
            if pair is None:
                return False
            if queries >= budget:
                return True
            u, v = pair
            if not do_query(u, v):
                continue
            for w in neighbors_observed(u):
                if w != v and canon(v, w) not in tested:
                    if queries >= budget:
                        return True
                    do_query(v, w)
            for w in neighbors_observed(v):
                if w != u and canon(u, w) not in tested:
                    if queries >= budget:
                        return True
                    do_query(u, w)
        return False

    def bootstrap(flavor: str, target: int) -> bool:
        if flavor == "v":
            return phase_v_random(target)
        return phase_random(target)

    def sweep_node(u: int) -> bool:
        for v in range(n):
            if v == u:
                continue
            if canon(u, v) in tested:
                continue
            if queries >= budget:
                return True
            do_query(u, v)
        return False

    def phase_complete_simple() -> bool:
        snapshot = nodes_observed()
        frozen = {u: degree_observed(u) for u in snapshot}
        for u in sorted(snapshot, key=lambda x: (-frozen[x], x)):
            if sweep_node(u):
                return True
        return False

    def phase_complete() -> bool:
        work = set(nodes_observed())
        while work:
            u = sorted(work, key=lambda x: (-degree_observed(x), x))[0]
            work.remove(u)
            for v in range(n):
                if v == u:
                    continue
                if canon(u, v) in tested:
                    continue
                if queries >= budget:
                    return True
                fresh = degree_observed(v) == 0
                if do_query(u, v) and fresh:
                    work.add(v)
        return False

    def phase_tbf() -> bool:
        snapshot = nodes_observed()
        frozen = {u: degree_observed(u) for u in snapshot}
        pairs = []
        for i in range(len(snapshot)):
            for j in range(i + 1, len(snapshot)):
                pairs.append((snapshot[i], snapshot[j]))
        pairs.sort(key=lambda p: (-(frozen[p[0]] + frozen[p[1]]), p[0], p[1]))
        for u, v in pairs:
            if (u, v) in tested:
                continue
            if queries >= budget:
                return True
            do_query(u, v)
        return False

    flavor = "v" if name.startswith("v-") else "plain"
    base = name[2:] if name.startswith("v-") else name

    if base == "random":
        if flavor == "v":
            phase_v_random(k)
        else:
            phase_random(k)
    elif base == "cs":
        if not bootstrap(flavor, k):
            phase_complete_simple()
    elif base == "c":
        if not bootstrap(flavor, k):
            phase_complete()
    elif base == "tbf":
        if not bootstrap(flavor, k):
            phase_tbf()
    elif base == "tbfc":
        if not bootstrap(flavor, k):
            if not phase_tbf():
                phase_complete()
    else:
        raise ValueError(f"unknown strategy name {name!r}")

    degrees = {v: degree_observed(v) for v in nodes_observed()}
    final = cumulative[-1] if cumulative else 0
    padded = cumulative + [final] * (budget - len(cumulative))
    return {
        "cumulative": padded,
        "links": frozenset(links),
        "tested": frozenset(tested),
        "observed": nodes_observed(),
        "degrees": degrees,
        "queries": queries,
    }
