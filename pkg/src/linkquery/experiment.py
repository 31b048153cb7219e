"""Experiment orchestration: many strategy runs in, delimited files out.

A run request is a graph (file or generator), a list of strategy
configurations, a budget, and a seed list. Every (strategy, seed) pair
becomes one measurement; results land in the output directory as

* ``traces.csv``: downsampled discovery traces per run,
* ``means.csv``: per-strategy mean discovery curves over the seeds,
* ``report.csv``: efficiency summary per strategy at the full budget,
* ``bias.csv``: sample statistics per strategy next to the reference row,
* optionally ``events.csv`` (per-query logs) and a rendered figure.

Identical configurations produce byte-identical files, whatever the job
count: runs are dispatched and written back in a fixed order, and all
metrics are computed on the full in-memory trace before downsampling.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .bias import SampleStats, sample_stats
from .edgelist import load_edge_list
from .generators import GeneratorSpec, build_graph, parse_generator_spec
from .graph import Graph, graph_stats
from .metrics import build_report
from .oracle import QueryEvent
from .strategies import STRATEGY_NAMES, StrategySpec, run_measurement

TRACE_HEADER = ["strategy", "seed", "q", "m_prime"]
MEANS_HEADER = ["strategy", "q", "m_prime_mean"]
REPORT_HEADER = ["strategy", "k", "q", "m_prime", "pct_tested", "pct_found", "eff_norm", "eff_rel"]
BIAS_HEADER = ["strategy", "m_prime", "n_prime", "density", "avg_deg", "max_deg", "cc", "tr"]
EVENTS_HEADER = ["strategy", "seed", "q", "u", "v", "found", "phase"]


@dataclass
class ExperimentConfig:
    """Everything one ``run`` invocation needs."""

    graph_path: str | None = None
    generator: GeneratorSpec | None = None
    strategies: list[tuple[str, int]] = field(default_factory=list)
    budget: int = 0
    seeds: list[int] = field(default_factory=list)
    stride: int = 1
    jobs: int = 1
    out_dir: str = "."
    figure: str | None = None
    events: bool = False
    tbf_dynamic: bool = False

    def validate(self) -> None:
        if (self.graph_path is None) == (self.generator is None):
            raise ValueError("exactly one of graph path and generator must be set")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        for name, k in self.strategies:
            if name not in STRATEGY_NAMES:
                raise ValueError(f"unknown strategy name {name!r}")
            if k < 0:
                raise ValueError(f"strategy {name}: k must be >= 0")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.stride < 1:
            raise ValueError("stride must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def parse_seeds(text: str) -> list[int]:
    """Seed list grammar: ``base:count`` or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        base_part, _, count_part = text.partition(":")
        base = int(base_part)
        count = int(count_part)
        if count < 1:
            raise ValueError("seed count must be at least 1")
        return list(range(base, base + count))
    seeds = [int(part) for part in text.split(",") if part.strip()]
    if not seeds:
        raise ValueError(f"no seeds in {text!r}")
    return seeds


def parse_strategy_token(text: str) -> tuple[str, int]:
    """Strategy grammar: ``name:k`` with a known name and k >= 0."""
    name, sep, k_part = text.partition(":")
    name = name.strip()
    if name not in STRATEGY_NAMES:
        raise ValueError(f"unknown strategy name {name!r}")
    if not sep:
        raise ValueError(f"strategy {text!r} is missing its :k part")
    k = int(k_part)
    if k < 0:
        raise ValueError("k must be >= 0")
    return name, k


_CONFIG_KEYS = (
    "graph",
    "gen",
    "strategy",
    "budget",
    "seeds",
    "stride",
    "jobs",
    "out_dir",
    "svg",
    "events",
    "tbf_dynamic",
)

_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


def parse_config_file(path: str | Path) -> dict[str, object]:
    """Flat ``key = value`` file; '#' starts a comment, strategy repeats."""
    values: dict[str, object] = {}
    strategies: list[str] = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            key, eq, value = text.partition("=")
            key = key.strip()
            value = value.strip()
            if not eq or not key or not value:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key == "strategy":
                strategies.extend(part.strip() for part in value.split(",") if part.strip())
            else:
                values[key] = value
    if strategies:
        values["strategy"] = strategies
    return values


def _parse_bool(value: object) -> bool:
    if isinstance(value, bool):
        return value
    word = str(value).strip().lower()
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def config_from_values(values: dict[str, object]) -> ExperimentConfig:
    """Build an ExperimentConfig from merged file/flag values."""
    cfg = ExperimentConfig()
    if "graph" in values:
        cfg.graph_path = str(values["graph"])
    if "gen" in values:
        cfg.generator = parse_generator_spec(str(values["gen"]))
    raw_strategies = values.get("strategy", [])
    if isinstance(raw_strategies, str):
        raw_strategies = [raw_strategies]
    cfg.strategies = [parse_strategy_token(str(item)) for item in raw_strategies]
    if "budget" in values:
        cfg.budget = int(str(values["budget"]))
    if "seeds" in values:
        seeds = values["seeds"]
        cfg.seeds = seeds if isinstance(seeds, list) else parse_seeds(str(seeds))
    if "stride" in values:
        cfg.stride = int(str(values["stride"]))
    if "jobs" in values:
        cfg.jobs = int(str(values["jobs"]))
    if "out_dir" in values:
        cfg.out_dir = str(values["out_dir"])
    if "svg" in values:
        cfg.figure = str(values["svg"])
    if "events" in values:
        cfg.events = _parse_bool(values["events"])
    if "tbf_dynamic" in values:
        cfg.tbf_dynamic = _parse_bool(values["tbf_dynamic"])
    return cfg


def load_experiment_graph(cfg: ExperimentConfig) -> tuple[Graph, list[str] | None]:
    """The graph named by the config, plus its label table when file-based."""
    if cfg.graph_path is not None:
        result = load_edge_list(cfg.graph_path)
        return result.graph, result.labels
    assert cfg.generator is not None
    return build_graph(cfg.generator), None


@dataclass
class RunOutcome:
    """What one (strategy, seed) run hands back to the writer."""

    label: str
    seed: int
    samples: list[tuple[int, int]]
    m_prime_final: int
    pct_found: float
    normalized: float
    relative: float
    sample: SampleStats
    events: list[QueryEvent] | None


def _downsample(cumulative: Sequence[int], stride: int) -> list[tuple[int, int]]:
    q_total = len(cumulative)
    points = [(q, cumulative[q - 1]) for q in range(stride, q_total + 1, stride)]
    if not points or points[-1][0] != q_total:
        points.append((q_total, cumulative[q_total - 1]))
    return points


def _run_task(
    graph: Graph,
    name: str,
    k: int,
    budget: int,
    seed: int,
    stride: int,
    record_events: bool,
    tbf_dynamic: bool,
) -> RunOutcome:
    kind, bootstrap = STRATEGY_NAMES[name]
    spec = StrategySpec(
        kind=kind, k=k, budget=budget, seed=seed, bootstrap=bootstrap, tbf_dynamic=tbf_dynamic
    )
    state, trace = run_measurement(graph, spec, record_events=record_events)
    report = build_report(trace, graph, budget)
    return RunOutcome(
        label=f"{name}:{k}",
        seed=seed,
        samples=_downsample(trace.cumulative, stride),
        m_prime_final=report.m_prime_final,
        pct_found=report.pct_links_found,
        normalized=report.normalized,
        relative=report.relative,
        sample=sample_stats(state),
        events=trace.events,
    )


@dataclass
class ExperimentResult:
    """Row-level results of a run plus where they were written."""

    graph: Graph
    outcomes: list[RunOutcome]
    trace_rows: list[list[object]]
    mean_rows: list[list[object]]
    report_rows: list[list[object]]
    bias_rows: list[list[object]]
    paths: dict[str, Path]


def _mean(values: Iterable[float]) -> float:
    items = list(values)
    return sum(items) / len(items)


def _bias_rows_for(
    graph: Graph, labels: list[str], samples_by_label: dict[str, list[SampleStats]]
) -> list[list[object]]:
    ref = graph_stats(graph)
    rows: list[list[object]] = [
        [
            "reference",
            ref.edge_count,
            ref.node_count,
            ref.density,
            ref.avg_degree,
            ref.max_degree,
            ref.clustering,
            ref.transitivity,
        ]
    ]
    for label in labels:
        group = samples_by_label[label]
        rows.append(
            [
                label,
                _mean(s.m_prime for s in group),
                _mean(s.n_prime for s in group),
                _mean(s.density for s in group),
                _mean(s.avg_degree for s in group),
                _mean(s.max_degree for s in group),
                _mean(s.clustering for s in group),
                _mean(s.transitivity for s in group),
            ]
        )
    return rows


def _write_csv(path: Path, header: list[str], rows: Iterable[Iterable[object]]) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Execute every (strategy, seed) run and write the output files."""
    cfg.validate()
    graph, labels = load_experiment_graph(cfg)
    total_pairs = graph.node_count * (graph.node_count - 1) // 2
    if cfg.budget > total_pairs:
        raise ValueError(
            f"budget {cfg.budget} exceeds the {total_pairs} node pairs; "
            "efficiency reports are undefined past that point"
        )

    tasks = [
        (name, k, seed)
        for name, k in cfg.strategies
        for seed in cfg.seeds
    ]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = [
                pool.submit(
                    _run_task,
                    graph,
                    name,
                    k,
                    cfg.budget,
                    seed,
                    cfg.stride,
                    cfg.events,
                    cfg.tbf_dynamic,
                )
                for name, k, seed in tasks
            ]
            outcomes = [f.result() for f in futures]
    else:
        outcomes = [
            _run_task(
                graph, name, k, cfg.budget, seed, cfg.stride, cfg.events, cfg.tbf_dynamic
            )
            for name, k, seed in tasks
        ]

    label_order = [f"{name}:{k}" for name, k in cfg.strategies]
    by_label: dict[str, list[RunOutcome]] = {label: [] for label in label_order}
    for outcome in outcomes:
        by_label[outcome.label].append(outcome)

    trace_rows: list[list[object]] = []
    for outcome in outcomes:
        for q, m_prime in outcome.samples:
            trace_rows.append([outcome.label, outcome.seed, q, m_prime])

    mean_rows: list[list[object]] = []
    for label in label_order:
        group = by_label[label]
        grid = group[0].samples
        for idx, (q, _) in enumerate(grid):
            mean_rows.append([label, q, _mean(run.samples[idx][1] for run in group)])

    report_rows: list[list[object]] = []
    for (name, k), label in zip(cfg.strategies, label_order):
        group = by_label[label]
        report_rows.append(
            [
                name,
                k,
                cfg.budget,
                _mean(run.m_prime_final for run in group),
                cfg.budget / total_pairs,
                _mean(run.pct_found for run in group),
                _mean(run.normalized for run in group),
                _mean(run.relative for run in group),
            ]
        )

    bias_rows = _bias_rows_for(
        graph, label_order, {label: [run.sample for run in by_label[label]] for label in label_order}
    )

    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "traces": out_dir / "traces.csv",
        "means": out_dir / "means.csv",
        "report": out_dir / "report.csv",
        "bias": out_dir / "bias.csv",
    }
    _write_csv(paths["traces"], TRACE_HEADER, trace_rows)
    _write_csv(paths["means"], MEANS_HEADER, mean_rows)
    _write_csv(paths["report"], REPORT_HEADER, report_rows)
    _write_csv(paths["bias"], BIAS_HEADER, bias_rows)

    if labels is not None:
        paths["labels"] = out_dir / "labels.csv"
        _write_csv(paths["labels"], ["id", "label"], list(enumerate(labels)))

    if cfg.events:
        paths["events"] = out_dir / "events.csv"
        event_rows: list[list[object]] = []
        for outcome in outcomes:
            assert outcome.events is not None
            for idx, event in enumerate(outcome.events, start=1):
                event_rows.append(
                    [
                        outcome.label,
                        outcome.seed,
                        idx,
                        event.u,
                        event.v,
                        int(event.found),
                        event.phase,
                    ]
                )
        _write_csv(paths["events"], EVENTS_HEADER, event_rows)

    if cfg.figure is not None:
        figure_path = Path(cfg.figure)
        if not figure_path.is_absolute():
            figure_path = out_dir / figure_path
        curves = []
        for label in label_order:
            points = [
                (row[1], row[2]) for row in mean_rows if row[0] == label
            ]
            curves.append((label, points))
        from .figures import render_discovery_curves

        render_discovery_curves(curves, figure_path)
        paths["figure"] = figure_path

    return ExperimentResult(
        graph=graph,
        outcomes=outcomes,
        trace_rows=trace_rows,
        mean_rows=mean_rows,
        report_rows=report_rows,
        bias_rows=bias_rows,
        paths=paths,
    )


def replay_events(
    graph: Graph, rows: Iterable[Sequence[str]]
) -> tuple[list[str], dict[str, list[SampleStats]]]:
    """Rebuild per-run samples from an events log against its graph.

    Rows are (strategy, seed, q, u, v, found, phase) records in original
    order. Every replayed query outcome is checked against the graph, so a
    log from a different graph is rejected rather than silently produce
    wrong statistics. Returns the label order and per-label sample stats.
    """
    from .oracle import MeasurementState

    grouped: dict[tuple[str, str], list[tuple[int, int, bool]]] = {}
    order: list[tuple[str, str]] = []
    for row in rows:
        label, seed, _q, u, v, found, _phase = row
        key = (label, seed)
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append((int(u), int(v), bool(int(found))))

    label_order: list[str] = []
    samples: dict[str, list[SampleStats]] = {}
    for key in order:
        queries = grouped[key]
        state = MeasurementState(graph, budget=len(queries))
        for u, v, found in queries:
            if state.query(u, v) != found:
                raise ValueError(
                    f"event log disagrees with the graph on pair ({u}, {v}); "
                    "wrong graph for this log?"
                )
        label = key[0]
        if label not in samples:
            samples[label] = []
            label_order.append(label)
        samples[label].append(sample_stats(state))
    return label_order, samples
