"""Reading and writing whitespace edge lists.

A file holds one edge per line as two whitespace-separated node labels.
Blank lines and lines starting with '#' are skipped. Labels are arbitrary
tokens; they are remapped to dense integer ids in order of first
appearance and the label table travels with the loaded graph. Duplicate
edges and self-loops are dropped and counted rather than treated as fatal.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .graph import Graph


@dataclass(frozen=True)
class EdgeListResult:
    """A loaded graph, its label table, and the dropped-line counts.

    ``labels[i]`` is the original token of node id i.
    """

    graph: Graph
    labels: list[str]
    duplicate_count: int
    self_loop_count: int


def parse_edge_lines(lines: Iterable[str], source: str = "<memory>") -> EdgeListResult:
    """Parse edge-list lines; raises ValueError naming the offending line."""
    ids: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    duplicates = 0
    self_loops = 0

    def intern(token: str) -> int:
        node = ids.get(token)
        if node is None:
            node = len(labels)
            ids[token] = node
            labels.append(token)
        return node

    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.split()
        if len(tokens) != 2:
            raise ValueError(
                f"{source}:{lineno}: expected two node labels, got {len(tokens)}"
            )
        u = intern(tokens[0])
        v = intern(tokens[1])
        if u == v:
            self_loops += 1
            continue
        pair = (u, v) if u < v else (v, u)
        if pair in seen:
            duplicates += 1
            continue
        seen.add(pair)
        edges.append(pair)
    if not labels:
        raise ValueError(f"{source}: edge list contains no edges")
    return EdgeListResult(
        graph=Graph(len(labels), edges),
        labels=labels,
        duplicate_count=duplicates,
        self_loop_count=self_loops,
    )


def load_edge_list(path: str | Path) -> EdgeListResult:
    """Load an edge-list file. Missing files raise FileNotFoundError."""
    p = Path(path)
    with p.open("r", encoding="utf-8") as handle:
        return parse_edge_lines(handle, source=str(p))


def write_edge_list(graph: Graph, path: str | Path, labels: list[str] | None = None) -> None:
    """Write a graph as an edge list, one edge per line in ascending order.

    With no label table, node ids are written directly. Isolated nodes do
    not appear: the format carries linked nodes only.
    """
    if labels is not None and len(labels) != graph.node_count:
        raise ValueError("label table size does not match the node count")
    with Path(path).open("w", encoding="utf-8") as handle:
        for u, v in graph.edges():
            a = labels[u] if labels is not None else u
            b = labels[v] if labels is not None else v
            handle.write(f"{a} {b}\n")
