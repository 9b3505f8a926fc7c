"""Command-line interface.

Subcommands:

* ``solve``: run one solver on one edge-list file, print a one-line
  JSON record (method, set size, exact and float density, wall time).
* ``bench``: run the comparison experiment over a corpus directory,
  writing results.csv, timings.csv, and summary.json.
* ``verify``: audit the density guarantees on seeded random instances.
* ``features``: print (or write) the per-node feature CSV.
* ``corrupt``: corrupt the exact optimum into a prediction CSV.

Exit codes: 0 success; 1 parse or contract errors (bad input, bad
flags, refused sizes); 2 structurally empty results (no edges, empty
prediction); 3 verify found a violated guarantee.
"""

from __future__ import annotations

import argparse
import sys

from .augmented import (
    augment_clique,
    augment_directed,
    augment_undirected,
)
from .bench import (
    DEFAULT_EPS,
    DEFAULT_MIN_EDGES,
    RunRecord,
    bench_corpus,
)
from .errors import (
    DensekitError,
    EmptyPredictionError,
    NoEdgesError,
)
from .exact import (
    brute_force_densest,
    brute_force_directed_densest,
    exact_densest_subgraph,
)
from .graph import (
    Density,
    Graph,
    clique_density,
    cross_edge_count,
    density,
    load_graph,
)
from .peeling import charikar_peel
from .predictions import (
    DEFAULT_THRESHOLD,
    corrupt_directed_solution,
    corrupt_solution,
    export_features,
    load_predictions,
    serialize_features,
    serialize_predictions,
)
from .verify import DEFAULT_EPS_GRID, run_property_suite

SOLVE_METHODS = (
    "exact", "peel", "brute", "predictor",
    "augmented", "augmented_clique", "augmented_directed",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densekit",
        description="Densest-subgraph solvers, learning-augmented variants, "
        "and a comparison harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one solver on one edge-list file")
    solve.add_argument("graph", help="edge-list file")
    solve.add_argument("--method", required=True, choices=SOLVE_METHODS)
    solve.add_argument("--eps", help="trust parameter (also the corruption rate)")
    solve.add_argument("--eps1", help="directed trust parameter, side 1")
    solve.add_argument("--eps2", help="directed trust parameter, side 2")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--directed", action="store_true")
    solve.add_argument("--predictions", help="prediction CSV (node,score)")
    solve.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)

    bench = sub.add_parser("bench", help="compare solvers over a corpus directory")
    bench.add_argument("corpus", help="directory of edge-list files")
    bench.add_argument("--eps", default=DEFAULT_EPS)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--min-edges", type=int, default=DEFAULT_MIN_EDGES)
    bench.add_argument("--out", default="bench_out", help="output directory")
    bench.add_argument("--workers", type=int, default=1)
    bench.add_argument(
        "--predictions",
        help="directory of per-graph prediction CSVs (default: synthetic corruption)",
    )
    bench.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)

    verify = sub.add_parser("verify", help="audit guarantees on random instances")
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--min-n", type=int, default=4)
    verify.add_argument("--max-n", type=int, default=12)
    verify.add_argument(
        "--eps",
        default=",".join(DEFAULT_EPS_GRID),
        help="comma-separated epsilon grid",
    )
    verify.add_argument("--seed", type=int, default=0)

    features = sub.add_parser("features", help="emit the per-node feature CSV")
    features.add_argument("graph", help="edge-list file")
    features.add_argument(
        "--label-exact",
        action="store_true",
        help="label each node by membership in the exact densest set",
    )
    features.add_argument("--out", help="directory to write <graph>.features.csv")

    corrupt = sub.add_parser(
        "corrupt", help="corrupt the exact optimum into a prediction CSV"
    )
    corrupt.add_argument("graph", help="edge-list file")
    corrupt.add_argument("--eps", required=True, help="corruption rate in [0, 1)")
    corrupt.add_argument("--seed", type=int, default=0)
    corrupt.add_argument("--out", help="directory to write <graph>.predictions.csv")

    return parser


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DensekitError(message)


def _prediction_nodes(g: Graph, args):
    """Prediction set for solve: external CSV, else corrupted exact optimum."""
    if args.predictions:
        return load_predictions(args.predictions, g, args.threshold).nodes
    _require(args.eps is not None, "synthetic predictions need --eps")
    return corrupt_solution(g, exact_densest_subgraph(g), args.eps, args.seed).nodes


def _solve_record(args) -> RunRecord:
    method = args.method
    directed = args.directed or method == "augmented_directed"
    g = load_graph(args.graph, directed=directed)
    graph_id = args.graph

    if method in ("exact", "peel", "predictor", "augmented", "augmented_clique"):
        _require(not directed, f"--method {method} expects an undirected graph")

    if method == "exact":
        s = exact_densest_subgraph(g)
        return RunRecord(graph_id, "exact", len(s), density(g, s))
    if method == "peel":
        s, _ = charikar_peel(g)
        return RunRecord(graph_id, "peel", len(s), density(g, s))
    if method == "brute":
        if directed:
            s1, s2 = brute_force_directed_densest(g)
            value = Density.directed_form(cross_edge_count(g, s1, s2), len(s1), len(s2))
            return RunRecord(graph_id, "brute", len(s1) + len(s2), value)
        s = brute_force_densest(g)
        return RunRecord(graph_id, "brute", len(s), density(g, s))
    if method == "predictor":
        s = _prediction_nodes(g, args)
        eps = "" if args.predictions else str(args.eps)
        return RunRecord(
            graph_id, "predictor", len(s), density(g, s),
            eps=eps, seed=None if args.predictions else args.seed,
            threshold=args.threshold if args.predictions else None,
        )
    if method == "augmented":
        _require(args.eps is not None, "--method augmented needs --eps")
        s = _prediction_nodes(g, args)
        grown = augment_undirected(g, s, args.eps)
        return RunRecord(
            graph_id, "augmented", len(grown), density(g, grown),
            eps=str(args.eps), seed=None if args.predictions else args.seed,
        )
    if method == "augmented_clique":
        _require(args.eps is not None, "--method augmented_clique needs --eps")
        if args.predictions:
            s = load_predictions(args.predictions, g, args.threshold).nodes
        else:
            optimum = brute_force_densest(g, objective="clique")
            s = corrupt_solution(g, optimum, args.eps, args.seed).nodes
        grown = augment_clique(g, s, args.eps)
        return RunRecord(
            graph_id, "augmented_clique", len(grown), clique_density(g, grown),
            eps=str(args.eps), seed=None if args.predictions else args.seed,
        )
    # augmented_directed: synthetic corruption of the brute-force optimum
    # (an external prediction CSV cannot carry the two sides separately)
    _require(
        args.eps1 is not None and args.eps2 is not None,
        "--method augmented_directed needs --eps1 and --eps2",
    )
    s1_opt, s2_opt = brute_force_directed_densest(g)
    p1, p2 = corrupt_directed_solution(
        g, s1_opt, s2_opt, args.eps1, args.eps2, args.seed
    )
    out1, out2 = augment_directed(g, p1.nodes, p2.nodes, args.eps1, args.eps2)
    value = Density.directed_form(cross_edge_count(g, out1, out2), len(out1), len(out2))
    return RunRecord(
        graph_id, "augmented_directed", len(out1) + len(out2), value,
        eps=f"{args.eps1};{args.eps2}", seed=args.seed,
    )


def _cmd_solve(args) -> int:
    import time

    start = time.perf_counter()
    record = _solve_record(args)
    wall_ms = (time.perf_counter() - start) * 1000.0
    record = RunRecord(
        record.graph_id, record.method, record.size, record.value,
        wall_ms=wall_ms, eps=record.eps, seed=record.seed,
        threshold=record.threshold,
    )
    print(record.to_json())
    return 0


def _cmd_bench(args) -> int:
    summary = bench_corpus(
        args.corpus,
        args.out,
        eps=args.eps,
        seed=args.seed,
        min_edges=args.min_edges,
        predictions_dir=args.predictions,
        threshold=args.threshold,
        workers=args.workers,
        log=sys.stderr,
    )
    sys.stdout.write(summary.to_json())
    return 0


def _cmd_verify(args) -> int:
    grid = tuple(part.strip() for part in args.eps.split(",") if part.strip())
    _require(bool(grid), "--eps grid must name at least one value")
    report = run_property_suite(
        trials=args.trials,
        min_n=args.min_n,
        max_n=args.max_n,
        eps_grid=grid,
        seed=args.seed,
    )
    for line in report.lines():
        print(line)
    return 0 if report.ok else 3


def _write_or_print(text: str, out_dir: str | None, filename: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
        return
    from pathlib import Path

    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    (target / filename).write_text(text, encoding="utf-8")


def _cmd_features(args) -> int:
    from pathlib import Path

    g = load_graph(args.graph)
    labels = exact_densest_subgraph(g) if args.label_exact else None
    text = serialize_features(export_features(g, labels))
    _write_or_print(text, args.out, Path(args.graph).stem + ".features.csv")
    return 0


def _cmd_corrupt(args) -> int:
    from pathlib import Path

    g = load_graph(args.graph)
    pred = corrupt_solution(g, exact_densest_subgraph(g), args.eps, args.seed)
    text = serialize_predictions(g, pred.nodes)
    _write_or_print(text, args.out, Path(args.graph).stem + ".predictions.csv")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "verify": _cmd_verify,
    "features": _cmd_features,
    "corrupt": _cmd_corrupt,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (NoEdgesError, EmptyPredictionError) as exc:
        print(f"densekit: {exc}", file=sys.stderr)
        return 2
    except (DensekitError, OSError) as exc:
        print(f"densekit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
