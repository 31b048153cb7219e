"""Command-line interface.

Subcommands:
    run    execute strategies against a graph and write trace/report files
    stats  print the statistics of a graph
    gen    write a generated graph as an edge list
    bias   recompute sample-bias statistics from a saved event log

``run`` takes an optional flat key=value config file; flags override file
values.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .bias import bias_report
from .edgelist import load_edge_list, write_edge_list
from .experiment import (
    BIAS_HEADER,
    ExperimentConfig,
    config_from_values,
    parse_config_file,
    replay_events,
    run_experiment,
)
from .generators import build_graph, parse_generator_spec
from .graph import graph_stats


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkquery",
        description="Budgeted link-query measurement of hidden networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run strategies and write result files")
    run.add_argument("config", nargs="?", help="flat key=value config file")
    run.add_argument("--graph", help="edge-list file with the hidden graph")
    run.add_argument("--gen", help="generator spec, e.g. er:n=200,p=0.05,seed=1")
    run.add_argument(
        "--strategy",
        action="append",
        metavar="NAME:K",
        help="strategy with its phase-1 target, repeatable",
    )
    run.add_argument("--budget", type=int, help="total query budget per run")
    run.add_argument("--seeds", help="seed list: base:count or a,b,c")
    run.add_argument("--stride", type=int, help="trace downsampling step")
    run.add_argument("--jobs", type=int, help="concurrent runs")
    run.add_argument("--out-dir", help="output directory")
    run.add_argument("--svg", help="render mean curves to this figure file")
    run.add_argument("--events", action="store_true", default=None, help="write per-query event log")
    run.add_argument(
        "--tbf-dynamic",
        action="store_true",
        default=None,
        help="rank test-between-found pairs by live degrees",
    )

    stats = sub.add_parser("stats", help="print graph statistics")
    _add_graph_source(stats)

    gen = sub.add_parser("gen", help="write a generated graph as an edge list")
    gen.add_argument("--gen", required=True, help="generator spec")
    gen.add_argument("--out", help="output file (default: stdout)")

    bias = sub.add_parser("bias", help="recompute bias statistics from an event log")
    _add_graph_source(bias)
    bias.add_argument("--events", required=True, help="events.csv written by run --events")
    bias.add_argument("--out", help="output file (default: stdout)")
    return parser


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", help="edge-list file")
    parser.add_argument("--gen", help="generator spec")


def _graph_from_args(args: argparse.Namespace):
    if (args.graph is None) == (args.gen is None):
        raise ValueError("exactly one of --graph and --gen is required")
    if args.graph is not None:
        return load_edge_list(args.graph).graph
    return build_graph(parse_generator_spec(args.gen))


def _cmd_run(args: argparse.Namespace) -> int:
    values: dict[str, object] = {}
    if args.config:
        values.update(parse_config_file(args.config))
    overrides = {
        "graph": args.graph,
        "gen": args.gen,
        "strategy": args.strategy,
        "budget": args.budget,
        "seeds": args.seeds,
        "stride": args.stride,
        "jobs": args.jobs,
        "out_dir": args.out_dir,
        "svg": args.svg,
        "events": args.events,
        "tbf_dynamic": args.tbf_dynamic,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    cfg = config_from_values(values)
    result = run_experiment(cfg)
    for name in ("traces", "means", "report", "bias", "events", "labels", "figure"):
        if name in result.paths:
            print(f"wrote {result.paths[name]}")
    print()
    widths = [12, 8, 10, 10, 10, 10]
    head = ["strategy", "k", "m_prime", "pct_found", "eff_norm", "eff_rel"]
    print("  ".join(h.ljust(w) for h, w in zip(head, widths)))
    for row in result.report_rows:
        cells = [
            str(row[0]),
            str(row[1]),
            f"{row[3]:.1f}",
            f"{row[5]:.4f}",
            f"{row[6]:.4f}",
            f"{row[7]:.3f}",
        ]
        print("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    stats = graph_stats(_graph_from_args(args))
    print(f"nodes={stats.node_count}")
    print(f"edges={stats.edge_count}")
    print(f"density={stats.density:.6g}")
    print(f"avg_degree={stats.avg_degree:.6g}")
    print(f"max_degree={stats.max_degree}")
    print(f"clustering={stats.clustering:.6g}")
    print(f"transitivity={stats.transitivity:.6g}")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    graph = build_graph(parse_generator_spec(args.gen))
    if args.out:
        write_edge_list(graph, args.out)
        print(f"wrote {args.out} ({graph.node_count} nodes, {graph.edge_count} edges)")
    else:
        for u, v in graph.edges():
            print(f"{u} {v}")
    return 0


def _cmd_bias(args: argparse.Namespace) -> int:
    graph = _graph_from_args(args)
    with Path(args.events).open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{args.events}: empty events file")
        rows = list(reader)
    label_order, samples = replay_events(graph, rows)
    from .experiment import _bias_rows_for

    bias_rows = _bias_rows_for(graph, label_order, samples)
    out = Path(args.out).open("w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(BIAS_HEADER)
        writer.writerows(bias_rows)
    finally:
        if args.out:
            out.close()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "stats": _cmd_stats,
        "gen": _cmd_gen,
        "bias": _cmd_bias,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
