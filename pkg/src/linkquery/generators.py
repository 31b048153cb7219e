"""Random graph generators: uniform, degree-driven, and ring-based.

Every generator is deterministic for a fixed seed. The CLI reaches these
through compact spec strings such as ``er:n=200,p=0.05,seed=3``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .graph import Graph

_KIND_ALIASES = {
    "er": "erdos_renyi",
    "erdos_renyi": "erdos_renyi",
    "pa": "preferential_attachment",
    "ba": "preferential_attachment",
    "preferential_attachment": "preferential_attachment",
    "sw": "small_world",
    "ws": "small_world",
    "small_world": "small_world",
}

_REQUIRED_PARAMS = {
    "erdos_renyi": ("p",),
    "preferential_attachment": ("m0",),
    "small_world": ("k", "beta"),
}


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator kind with its size, parameters, and seed."""

    kind: str
    n: int
    params: dict[str, float] = field(default_factory=dict)
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in _REQUIRED_PARAMS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        for name in _REQUIRED_PARAMS[self.kind]:
            if name not in self.params:
                raise ValueError(f"generator {self.kind} needs parameter {name!r}")

    @property
    def label(self) -> str:
        parts = [f"n={self.n}"]
        parts += [f"{k}={v:g}" for k, v in sorted(self.params.items())]
        parts.append(f"seed={self.seed}")
        return f"{self.kind}:" + ",".join(parts)


def parse_generator_spec(text: str) -> GeneratorSpec:
    """Parse ``kind:key=value,...`` into a validated GeneratorSpec.

    Accepts the aliases er, pa, ba, sw, ws. ``n`` is required; ``seed``
    defaults to 0. Integer-valued parameters keep integer type.
    """
    kind_part, sep, params_part = text.partition(":")
    kind = _KIND_ALIASES.get(kind_part.strip().lower())
    if kind is None:
        raise ValueError(f"unknown generator kind {kind_part!r}")
    if not sep or not params_part.strip():
        raise ValueError(f"generator spec {text!r} has no parameters")
    values: dict[str, float] = {}
    for item in params_part.split(","):
        key, eq, raw = item.partition("=")
        key = key.strip()
        raw = raw.strip()
        if not eq or not key or not raw:
            raise ValueError(f"malformed generator parameter {item!r}")
        try:
            value = int(raw)
        except ValueError:
            try:
                value = float(raw)
            except ValueError:
                raise ValueError(f"non-numeric generator parameter {item!r}") from None
        values[key] = value
    if "n" not in values:
        raise ValueError(f"generator spec {text!r} is missing n")
    n = int(values.pop("n"))
    seed = int(values.pop("seed", 0))
    spec = GeneratorSpec(kind=kind, n=n, params=values, seed=seed)
    spec.validate()
    return spec


def build_graph(spec: GeneratorSpec) -> Graph:
    """Materialize the graph a GeneratorSpec describes."""
    spec.validate()
    if spec.kind == "erdos_renyi":
        return erdos_renyi(spec.n, spec.params["p"], spec.seed)
    if spec.kind == "preferential_attachment":
        return preferential_attachment(spec.n, int(spec.params["m0"]), spec.seed)
    return small_world(spec.n, int(spec.params["k"]), spec.params["beta"], spec.seed)


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    """Uniform random graph: each pair is linked independently with probability p.

    Uses geometric skipping over the pair sequence, so the running time is
    proportional to the number of edges rather than the number of pairs.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    edges: list[tuple[int, int]] = []
    if p >= 1.0:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return Graph(n, edges)
    if p > 0.0:
        rng = random.Random(seed)
        log_skip = math.log(1.0 - p)
        v = 1
        w = -1
        while v < n:
            r = rng.random()
            w += 1 + int(math.log(1.0 - r) / log_skip)
            while w >= v and v < n:
                w -= v
                v += 1
            if v < n:
                edges.append((w, v))
    return Graph(n, edges)


def preferential_attachment(n: int, m0: int, seed: int = 0) -> Graph:
    """Degree-driven growth from a complete seed clique.

    The seed is a clique on the first m0 + 1 nodes; every later node
    attaches to m0 distinct existing nodes chosen with probability
    proportional to current degree (uniform draws from a node list with
    one entry per unit of degree, repeats rejected). The edge count is
    exactly m0 * n - m0 * (m0 + 1) / 2.
    """
    if not 1 <= m0 < n:
        raise ValueError("need 1 <= m0 < n")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    pool: list[int] = []
    clique = m0 + 1
    for u in range(clique):
        for v in range(u + 1, clique):
            edges.append((u, v))
        pool.extend([u] * m0)
    for new in range(clique, n):
        targets: set[int] = set()
        while len(targets) < m0:
            targets.add(pool[rng.randrange(len(pool))])
        ordered = sorted(targets)
        for t in ordered:
            edges.append((t, new))
        pool.extend(ordered)
        pool.extend([new] * m0)
    return Graph(n, edges)


def small_world(n: int, k: int, beta: float, seed: int = 0) -> Graph:
    """Ring lattice with k neighbors per node and probability-beta rewiring.

    Nodes are visited in ascending order and each clockwise lattice edge is
    rewired with probability beta to a uniform random endpoint, rejecting
    self-loops and existing links; a node already linked to everyone keeps
    its lattice edge. The edge count stays n * k / 2.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if k % 2 != 0:
        raise ValueError("k must be even")
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    rng = random.Random(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    half = k // 2
    for i in range(n):
        for j in range(1, half + 1):
            t = (i + j) % n
            adj[i].add(t)
            adj[t].add(i)
    if beta > 0.0:
        for i in range(n):
            for j in range(1, half + 1):
                if rng.random() >= beta:
                    continue
                t = (i + j) % n
                if len(adj[i]) >= n - 1:
                    continue
                while True:
                    w = rng.randrange(n)
                    if w != i and w not in adj[i]:
                        break
                adj[i].remove(t)
                adj[t].remove(i)
                adj[i].add(w)
                adj[w].add(i)
    edges = [(i, j) for i in range(n) for j in adj[i] if i < j]
    return Graph(n, edges)
