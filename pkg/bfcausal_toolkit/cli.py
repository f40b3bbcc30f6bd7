#!/usr/bin/env python3
"""
Command line interface for the BF causal discovery toolkit.

This provides a unified CLI for running BOSS/BF-BIC and PC-Max/BF-LRT
searches, simulating ground-truthed data, comparing graphs and running
benchmark grids.
"""

import argparse
import json
import logging
import os
import sys

from .api import CausalDiscoveryAPI
from .benchmark import default_grid, summarize
from .errors import CausalToolkitError
from .evaluation.metrics import compare_graphs, format_table
from .graph.algorithms import topological_order
from .graph.text import emit_graph
from .runner import ALGORITHMS, BOSS, RunConfig
from .search.pcmax import DEFAULT_MAX_DEPTH
from .simulation.scenario import parse_sim_spec

EXAMPLE_SIM = "nodes=6,edges=6,n=500,type=mixed,mprob=0.3"


def _names(text):
    return tuple(name.strip() for name in text.split(",") if name.strip()) if text else ()


def configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def create_example(directory):
    """Write an example dataset, its true graph, a tier file and a small grid."""
    api = CausalDiscoveryAPI()
    os.makedirs(directory, exist_ok=True)
    table, truth = api.simulate(EXAMPLE_SIM, seed=7)

    paths = {
        "data": os.path.join(directory, "example_data.csv"),
        "truth": os.path.join(directory, "example_truth.txt"),
        "knowledge": os.path.join(directory, "example_knowledge.txt"),
        "grid": os.path.join(directory, "example_grid.json"),
    }
    api.write_data(table, paths["data"])
    api.write_graph(truth, paths["truth"])

    # three tiers that respect the true causal order
    order = [truth.name(node) for node in topological_order(truth)]
    size = -(-len(order) // 3)
    with open(paths["knowledge"], "w", encoding="utf-8") as handle:
        handle.write("# tier number followed by variable names; later tiers cannot cause earlier ones\n")
        for tier in range(3):
            members = order[tier * size:(tier + 1) * size]
            if members:
                handle.write(f"{tier + 1} {' '.join(members)}\n")

    grid = default_grid(seeds=(1, 2))
    boss, pcmax = grid["scenarios"]
    boss.update(truncations=[1, 3], penalties=[1, 2])
    pcmax.update(truncations=[1, 3], alphas=[0.01, 0.05])
    with open(paths["grid"], "w", encoding="utf-8") as handle:
        json.dump(grid, handle, indent=2)

    print(f"Created example files in {directory}")
    for kind, path in paths.items():
        print(f"  {kind:<10} {path}")
    print("\nFile Format Description:")
    print("- Data: comma-separated with a header row; integer columns with at most")
    print("  5 levels are read as categorical, everything else as continuous")
    print("- Graphs: a 'Nodes: A,B,C' line followed by 'A --> B' or 'A --- B' lines")
    print("- Knowledge: '<tier> NAME NAME ...' lines, 'forbid A B' / 'require A B' lines")
    print("- Grid: JSON with a 'scenarios' list for the benchmark command")
    return paths


def _add_search_arguments(parser):
    parser.add_argument("--algorithm", choices=ALGORITHMS, default=BOSS, help="Search algorithm (default: boss)")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--data", help="Input CSV file")
    source.add_argument("--sim", help="Simulate input, e.g. nodes=10,edges=20,n=1000,type=mixed,mprob=0.2")
    parser.add_argument("--truth", help="True graph file for metrics")
    parser.add_argument("--knowledge", help="Knowledge (tier) file")
    parser.add_argument("--truncation", type=int, default=3, help="Legendre terms per continuous variable (default: 3)")
    parser.add_argument("--penalty", type=float, help="Penalty discount c for BOSS")
    parser.add_argument("--alpha", type=float, help="Significance level for PC-Max")
    parser.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH,
                        help=f"PC-Max conditioning depth (default: {DEFAULT_MAX_DEPTH})")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    parser.add_argument("--timeout", type=float, help="Abort the search after this many seconds")
    parser.add_argument("--out-graph", help="Write the estimated graph here")
    parser.add_argument("--out-metrics", help="Write metrics JSON here")
    parser.add_argument("--exclude", help="Comma-separated variables to leave out")
    parser.add_argument("--workers", type=int, default=1, help="Threads for PC-Max tests (default: 1)")


def build_parser():
    parser = argparse.ArgumentParser(
        description="BF causal discovery toolkit - BOSS/BF-BIC and PC-Max/BF-LRT on mixed data"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    example_parser = subparsers.add_parser("create-example", help="Create example data, graph, knowledge and grid files")
    example_parser.add_argument("--dir", default="bfcausal_example", help="Output directory (default: bfcausal_example)")

    search_parser = subparsers.add_parser("search", help="Run one search")
    _add_search_arguments(search_parser)

    bench_parser = subparsers.add_parser("benchmark", help="Run a benchmark grid")
    bench_parser.add_argument("--grid", required=True, help="JSON grid file")
    bench_parser.add_argument("--out", required=True, help="Output directory for runs.csv, cells.csv, best.csv")
    bench_parser.add_argument("--workers", type=int, default=1, help="Worker processes (default: 1)")
    bench_parser.add_argument("--plot", help="Write a metric plot (PNG) of the best cells")

    sim_parser = subparsers.add_parser("simulate", help="Simulate a dataset and its true graph")
    sim_parser.add_argument("--sim", required=True, help="Simulation spec, e.g. nodes=10,edges=10,n=1000,type=continuous")
    sim_parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    sim_parser.add_argument("--out-data", required=True, help="Output CSV file")
    sim_parser.add_argument("--out-graph", required=True, help="Output true graph file")

    compare_parser = subparsers.add_parser("compare", help="Compare an estimated graph with the truth")
    compare_parser.add_argument("--estimated", required=True, help="Estimated graph file")
    compare_parser.add_argument("--truth", required=True, help="True graph file")
    compare_parser.add_argument("--out-metrics", help="Write metrics JSON here")
    return parser


def run_config_from_args(args) -> RunConfig:
    return RunConfig(
        algorithm=args.algorithm,
        truncation_limit=args.truncation,
        penalty_discount=args.penalty,
        alpha=args.alpha,
        max_depth=args.max_depth,
        seed=args.seed,
        knowledge_path=args.knowledge,
        input_path=args.data,
        truth_path=args.truth,
        simulation=parse_sim_spec(args.sim) if args.sim else None,
        out_graph=args.out_graph,
        out_metrics=args.out_metrics,
        timeout=args.timeout,
        exclude=_names(args.exclude),
        workers=args.workers,
    )


def main(argv=None):
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    api = CausalDiscoveryAPI()

    if args.command is None:
        parser.print_help()
        sys.exit(1)

    try:
        if args.command == "create-example":
            create_example(args.dir)

        elif args.command == "search":
            result = api.run(run_config_from_args(args))
            print(f"\nEstimated graph ({result.graph.num_edges} edges, {result.elapsed:.2f} s):")
            print(emit_graph(result.graph), end="")
            if result.metrics is not None:
                print("\nMetrics:")
                print(format_table([result.metrics], [args.algorithm]))
            if args.out_graph:
                print(f"\nGraph saved to {args.out_graph}")
            if args.out_metrics:
                print(f"Metrics saved to {args.out_metrics}")

        elif args.command == "benchmark":
            report = api.benchmark(args.grid, args.out, args.workers, args.plot)
            print(f"\nRan {len(report.runs)} searches in {len(report.cells)} cells")
            print("\nBest cells by F1Adj:")
            print(summarize(report.best))
            for name, path in report.paths.items():
                print(f"  {name}: {path}")

        elif args.command == "simulate":
            table, truth = api.simulate(args.sim, args.seed)
            api.write_data(table, args.out_data)
            api.write_graph(truth, args.out_graph)
            categorical = sum(v.is_categorical for v in table.variables)
            print(f"Simulated {table.num_rows} rows of {table.num_columns} variables "
                  f"({categorical} categorical), true graph with {truth.num_edges} edges")
            print(f"Data saved to {args.out_data}")
            print(f"True graph saved to {args.out_graph}")

        elif args.command == "compare":
            estimated = api.read_graph(args.estimated)
            truth = api.read_graph(args.truth)
            report = compare_graphs(estimated, truth)
            print(format_table([report], ["estimated"]))
            if args.out_metrics:
                with open(args.out_metrics, "w", encoding="utf-8") as handle:
                    handle.write(report.to_json())
                print(f"\nMetrics saved to {args.out_metrics}")

    except (CausalToolkitError, ValueError, OSError) as e:
        print(f"Error: {str(e)}")
        sys.exit(1)


if __name__ == "__main__":
    main()
