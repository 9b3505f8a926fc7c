"""Corpus benchmark: exact reference vs predictor vs peeling vs augmented.

For every edge-list file in a corpus directory (with at least
``min_edges`` edges), the harness computes a reference optimum, obtains
a prediction (synthetic corruption of the reference, or an external
score CSV), and records the densities of the prediction itself, the
peeling baseline, and the augmented output. Results land in three files
under the output directory:

* ``results.csv``: one row per (graph, method). The ``wall_ms`` column
  is left empty so the file is byte-identical across runs of the same
  seed; real timings go to the sidecar.
* ``timings.csv``: (graph, method, wall_ms) with measured walltimes.
* ``summary.json``: aggregate win rates and improvement percentages.

Density encoding per row: ``density_num / density_den`` is the exact
density for undirected rows and the squared form's components for
directed rows, i.e. ``density = density_num / sqrt(density_den)`` when
the method is ``augmented_directed`` or a directed ``brute``. The
``density`` column is the float rendering either way. Directed rows
encode their epsilon pair as ``eps1;eps2``.

Improvement percentages are ``100 * (d_aug - d_base) / d_base``; rows
with a zero-density baseline are counted separately as infinite instead
of polluting the means. Win rates use a non-strict comparison (the
augmented output matches or beats the baseline), computed exactly.
"""

from __future__ import annotations

import csv
import io
import json
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .augmented import as_epsilon, augment_undirected
from .errors import DensekitError
from .exact import exact_densest_subgraph
from .graph import Density, Graph, NodeSet, density, load_graph
from .peeling import charikar_peel
from .predictions import DEFAULT_THRESHOLD, corrupt_solution, load_predictions

RESULTS_HEADER = [
    "graph", "method", "size", "density", "density_num", "density_den",
    "wall_ms", "eps", "seed",
]
TIMINGS_HEADER = ["graph", "method", "wall_ms"]
SUMMARY_KEYS = [
    "n_graphs", "win_rate_vs_predictor", "win_rate_vs_peel",
    "mean_impr_vs_predictor_pct", "mean_impr_vs_peel_pct",
    "min_impr_pct", "max_impr_pct", "skipped",
    "n_infinite_vs_predictor", "n_infinite_vs_peel",
]
EXACT_REFERENCE_MAX_NODES = 5000
DEFAULT_MIN_EDGES = 100
DEFAULT_EPS = "0.2"

METHODS = (
    "exact", "peel", "predictor", "augmented",
    "augmented_directed", "augmented_clique", "brute",
)


@dataclass(frozen=True)
class RunRecord:
    """One solver invocation: what ran, what it found, how dense it was."""

    graph_id: str
    method: str
    size: int
    value: Density
    wall_ms: float | None = None
    eps: str = ""
    seed: int | None = None
    threshold: float | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise DensekitError(f"unknown method name: {self.method!r}")

    def results_row(self) -> list[str]:
        """CSV row with the wall_ms column blanked for reproducibility."""
        return [
            self.graph_id,
            self.method,
            str(self.size),
            repr(float(self.value)),
            str(self.value.numerator),
            str(self.value.denominator),
            "",
            self.eps,
            "" if self.seed is None else str(self.seed),
        ]

    def to_json(self) -> str:
        payload = {
            "graph": self.graph_id,
            "method": self.method,
            "size": self.size,
            "density": float(self.value),
            "density_num": self.value.numerator,
            "density_den": self.value.denominator,
            "sqrt_denominator": self.value.sqrt_denominator,
            "wall_ms": self.wall_ms,
            "eps": self.eps or None,
            "seed": self.seed,
            "threshold": self.threshold,
        }
        return json.dumps(payload, sort_keys=True)


@dataclass(frozen=True)
class ComparisonSummary:
    """Aggregate view of augmented-vs-baseline results over a corpus."""

    n_graphs: int
    win_rate_vs_predictor: float | None
    win_rate_vs_peel: float | None
    mean_impr_vs_predictor_pct: float | None
    mean_impr_vs_peel_pct: float | None
    min_impr_pct: float | None
    max_impr_pct: float | None
    skipped: int
    n_infinite_vs_predictor: int
    n_infinite_vs_peel: int

    def to_json(self) -> str:
        payload = {key: getattr(self, key) for key in SUMMARY_KEYS}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


@dataclass
class GraphOutcome:
    graph_id: str
    records: list[RunRecord]
    impr_vs_predictor: Fraction | None  # None = infinite (zero baseline)
    impr_vs_peel: Fraction | None
    win_vs_predictor: bool
    win_vs_peel: bool


def corruption_seed(seed: int, graph_id: str) -> int:
    """Per-graph corruption seed, stable under corpus reordering."""
    mix = np.random.SeedSequence([seed, zlib.crc32(graph_id.encode("utf-8"))])
    return int(mix.generate_state(1, np.uint64)[0])


def _timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, (time.perf_counter() - start) * 1000.0


def _improvement(d_new: Fraction, d_base: Fraction) -> Fraction | None:
    if d_base == 0:
        return None
    return 100 * (d_new - d_base) / d_base


def bench_one_graph(
    path: str,
    graph_id: str,
    eps: str,
    seed: int,
    min_edges: int,
    predictions_path: str | None,
    threshold: float,
) -> GraphOutcome | None:
    """Run the four-way comparison on one graph; None = filtered out."""
    g = load_graph(path)
    if g.m < min_edges:
        return None
    eps_fraction = as_epsilon(eps)
    records = []

    if g.n <= EXACT_REFERENCE_MAX_NODES:
        reference, ref_ms = _timed(exact_densest_subgraph, g)
        ref_method = "exact"
    else:
        (reference, _), ref_ms = _timed(charikar_peel, g)
        ref_method = "peel"
    d_ref = density(g, reference)
    records.append(
        RunRecord(graph_id, ref_method, len(reference), d_ref, wall_ms=ref_ms)
    )

    if predictions_path is not None:
        pred, pred_ms = _timed(load_predictions, predictions_path, g, threshold)
        pred_eps, pred_seed = "", None
    else:
        pred_seed = corruption_seed(seed, graph_id)
        pred, pred_ms = _timed(corrupt_solution, g, reference, eps_fraction, pred_seed)
        pred_eps = str(eps_fraction)
    d_pred = density(g, pred.nodes)
    records.append(
        RunRecord(
            graph_id, "predictor", len(pred.nodes), d_pred,
            wall_ms=pred_ms, eps=pred_eps, seed=pred_seed,
            threshold=threshold if predictions_path is not None else None,
        )
    )

    (peel_set, _), peel_ms = _timed(charikar_peel, g)
    d_peel = density(g, peel_set)
    records.append(RunRecord(graph_id, "peel", len(peel_set), d_peel, wall_ms=peel_ms))

    if eps_fraction == 0:
        # a fully trusted prediction gets no top-up budget: identity
        grown, aug_ms = pred.nodes, 0.0
    else:
        grown, aug_ms = _timed(augment_undirected, g, pred.nodes, eps_fraction)
    d_aug = density(g, grown)
    records.append(
        RunRecord(
            graph_id, "augmented", len(grown), d_aug,
            wall_ms=aug_ms, eps=str(eps_fraction), seed=pred_seed,
        )
    )

    return GraphOutcome(
        graph_id=graph_id,
        records=records,
        impr_vs_predictor=_improvement(d_aug.as_fraction(), d_pred.as_fraction()),
        impr_vs_peel=_improvement(d_aug.as_fraction(), d_peel.as_fraction()),
        win_vs_predictor=d_aug.as_fraction() >= d_pred.as_fraction(),
        win_vs_peel=d_aug.as_fraction() >= d_peel.as_fraction(),
    )


def _bench_job(args: tuple) -> tuple[str, str, GraphOutcome | None]:
    """Process-pool entry point: returns (graph_id, error, outcome)."""
    graph_id = args[1]
    try:
        return graph_id, "", bench_one_graph(*args)
    except DensekitError as exc:
        return graph_id, f"{type(exc).__name__}: {exc}", None


def summarize(outcomes: Sequence[GraphOutcome], skipped: int) -> ComparisonSummary:
    """Aggregate per-graph outcomes; recomputable from results.csv rows."""
    n = len(outcomes)
    finite_pred = [o.impr_vs_predictor for o in outcomes if o.impr_vs_predictor is not None]
    finite_peel = [o.impr_vs_peel for o in outcomes if o.impr_vs_peel is not None]
    pooled = finite_pred + finite_peel

    def rate(flags: Iterable[bool]) -> float | None:
        return (sum(flags) / n) if n else None

    def mean(values: list[Fraction]) -> float | None:
        return float(sum(values) / len(values)) if values else None

    return ComparisonSummary(
        n_graphs=n,
        win_rate_vs_predictor=rate(o.win_vs_predictor for o in outcomes),
        win_rate_vs_peel=rate(o.win_vs_peel for o in outcomes),
        mean_impr_vs_predictor_pct=mean(finite_pred),
        mean_impr_vs_peel_pct=mean(finite_peel),
        min_impr_pct=float(min(pooled)) if pooled else None,
        max_impr_pct=float(max(pooled)) if pooled else None,
        skipped=skipped,
        n_infinite_vs_predictor=sum(
            1 for o in outcomes if o.impr_vs_predictor is None
        ),
        n_infinite_vs_peel=sum(1 for o in outcomes if o.impr_vs_peel is None),
    )


def render_results_csv(outcomes: Sequence[GraphOutcome]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULTS_HEADER)
    for outcome in outcomes:
        for record in outcome.records:
            writer.writerow(record.results_row())
    return buf.getvalue()


def render_timings_csv(outcomes: Sequence[GraphOutcome]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TIMINGS_HEADER)
    for outcome in outcomes:
        for record in outcome.records:
            if record.wall_ms is not None:
                writer.writerow(
                    [record.graph_id, record.method, f"{record.wall_ms:.3f}"]
                )
    return buf.getvalue()


def bench_corpus(
    corpus_dir: str,
    out_dir: str,
    eps: str = DEFAULT_EPS,
    seed: int = 0,
    min_edges: int = DEFAULT_MIN_EDGES,
    predictions_dir: str | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    workers: int = 1,
    log=None,
) -> ComparisonSummary:
    """Benchmark every graph file in a directory; write the three outputs.

    Graphs are processed independently (optionally by a process pool) and
    merged in sorted graph-id order, so the output bytes do not depend on
    scheduling. Per-graph failures are logged and counted as skipped.
    """
    corpus = Path(corpus_dir)
    if not corpus.is_dir():
        raise DensekitError(f"not a corpus directory: {corpus_dir}")
    files = sorted(
        p for p in corpus.iterdir() if p.is_file() and not p.name.startswith(".")
    )
    jobs = []
    for p in files:
        predictions_path = None
        if predictions_dir is not None:
            candidate = Path(predictions_dir) / (p.stem + ".csv")
            predictions_path = str(candidate)
        jobs.append(
            (str(p), p.name, eps, seed, min_edges, predictions_path, threshold)
        )

    results: dict[str, tuple[str, GraphOutcome | None]] = {}
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for graph_id, error, outcome in pool.map(_bench_job, jobs):
                results[graph_id] = (error, outcome)
    else:
        for job in jobs:
            graph_id, error, outcome = _bench_job(job)
            results[graph_id] = (error, outcome)

    outcomes: list[GraphOutcome] = []
    skipped = 0
    for graph_id in sorted(results):
        error, outcome = results[graph_id]
        if error:
            skipped += 1
            if log is not None:
                log.write(f"skipped {graph_id}: {error}\n")
        elif outcome is not None:
            outcomes.append(outcome)

    summary = summarize(outcomes, skipped)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "results.csv").write_text(render_results_csv(outcomes), encoding="utf-8")
    (out / "timings.csv").write_text(render_timings_csv(outcomes), encoding="utf-8")
    (out / "summary.json").write_text(summary.to_json(), encoding="utf-8")
    return summary
