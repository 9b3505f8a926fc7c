"""Bench harness: record encoding, aggregation, determinism, skip logic."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from densekit.bench import (
    RESULTS_HEADER,
    ComparisonSummary,
    GraphOutcome,
    RunRecord,
    bench_corpus,
    bench_one_graph,
    corruption_seed,
    summarize,
)
from densekit.errors import DensekitError
from densekit.generators import gnp_graph
from densekit.graph import Density, load_graph, serialize_edge_list
from densekit.peeling import charikar_peel
from densekit.predictions import corrupt_solution


def _make_corpus(tmp_path, count=4, n=40, p=0.3) -> Path:
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for k in range(count):
        g = gnp_graph(n, p, seed=k)
        (corpus / f"g{k:02d}.txt").write_text(serialize_edge_list(g))
    return corpus


# ------------------------------------------------------------ records


def test_run_record_row_shapes():
    rec = RunRecord("g.txt", "exact", 3, Density.ratio(3, 3), wall_ms=1.25)
    row = rec.results_row()
    assert len(row) == len(RESULTS_HEADER)
    assert row[6] == ""  # wall_ms blanked in results.csv
    payload = json.loads(rec.to_json())
    assert payload["density"] == 1.0 and payload["wall_ms"] == 1.25


def test_run_record_directed_encoding():
    rec = RunRecord(
        "g.txt", "augmented_directed", 5, Density.directed_form(4, 2, 3), eps="0.1;0.2"
    )
    payload = json.loads(rec.to_json())
    assert payload["sqrt_denominator"] is True
    assert payload["density"] == pytest.approx(4 / 6**0.5)
    assert rec.results_row()[4:6] == ["4", "6"]


def test_run_record_rejects_unknown_method():
    with pytest.raises(DensekitError):
        RunRecord("g", "magic", 1, Density.ratio(1, 1))


def test_density_column_consistency():
    rec = RunRecord("g", "peel", 7, Density.ratio(10, 7))
    row = rec.results_row()
    assert abs(float(row[3]) - int(row[4]) / int(row[5])) < 1e-12


# ------------------------------------------------------------ aggregation


def _outcome(gid, impr_pred, impr_peel, win_pred=True, win_peel=True):
    return GraphOutcome(
        graph_id=gid,
        records=[],
        impr_vs_predictor=impr_pred,
        impr_vs_peel=impr_peel,
        win_vs_predictor=win_pred,
        win_vs_peel=win_peel,
    )


def test_summarize_means_exclude_infinite_rows():
    outcomes = [
        _outcome("a", Fraction(20), Fraction(10)),
        _outcome("b", None, Fraction(-10), win_peel=False),  # infinite vs predictor
    ]
    s = summarize(outcomes, skipped=1)
    assert s.n_graphs == 2 and s.skipped == 1
    assert s.mean_impr_vs_predictor_pct == 20.0
    assert s.mean_impr_vs_peel_pct == 0.0
    assert s.n_infinite_vs_predictor == 1 and s.n_infinite_vs_peel == 0
    assert s.min_impr_pct == -10.0 and s.max_impr_pct == 20.0
    assert s.win_rate_vs_predictor == 1.0 and s.win_rate_vs_peel == 0.5


def test_summarize_empty_corpus():
    s = summarize([], skipped=0)
    assert s.n_graphs == 0
    assert s.win_rate_vs_predictor is None and s.mean_impr_vs_peel_pct is None
    payload = json.loads(s.to_json())
    assert payload["win_rate_vs_predictor"] is None


# ------------------------------------------------------------ single graph


def test_bench_one_graph_rows_recompute(tmp_path):
    corpus = _make_corpus(tmp_path, count=1)
    path = next(corpus.iterdir())
    outcome = bench_one_graph(
        str(path), path.name, "0.2", seed=7, min_edges=1,
        predictions_path=None, threshold=0.5,
    )
    methods = [r.method for r in outcome.records]
    assert methods == ["exact", "predictor", "peel", "augmented"]
    g = load_graph(path)
    # every recorded density must reproduce from an independent recomputation
    peel_row = outcome.records[2]
    peel_set, _ = charikar_peel(g)
    assert peel_row.value.as_fraction() == Fraction(
        int(peel_row.results_row()[4]), int(peel_row.results_row()[5])
    )
    assert len(peel_set) == peel_row.size
    # predictor row reproduces from the recorded seed
    pred_row = outcome.records[1]
    from densekit.exact import exact_densest_subgraph

    again = corrupt_solution(g, exact_densest_subgraph(g), "0.2", pred_row.seed)
    assert len(again.nodes) == pred_row.size


def test_min_edges_filter(tmp_path):
    corpus = _make_corpus(tmp_path, count=1, n=10, p=0.3)
    path = next(corpus.iterdir())
    assert (
        bench_one_graph(
            str(path), path.name, "0.2", 0, min_edges=10**6,
            predictions_path=None, threshold=0.5,
        )
        is None
    )


def test_zero_eps_improvement_is_zero(tmp_path):
    corpus = _make_corpus(tmp_path, count=1)
    path = next(corpus.iterdir())
    outcome = bench_one_graph(
        str(path), path.name, "0", seed=0, min_edges=1,
        predictions_path=None, threshold=0.5,
    )
    assert outcome.impr_vs_predictor == 0  # predictor handed the optimum back


# ------------------------------------------------------------ corpus runs


def test_bench_corpus_outputs_and_determinism(tmp_path):
    corpus = _make_corpus(tmp_path, count=5)
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    s1 = bench_corpus(str(corpus), str(out1), eps="0.2", seed=3, min_edges=1)
    s2 = bench_corpus(
        str(corpus), str(out2), eps="0.2", seed=3, min_edges=1, workers=3
    )
    assert (out1 / "results.csv").read_bytes() == (out2 / "results.csv").read_bytes()
    assert (out1 / "summary.json").read_bytes() == (out2 / "summary.json").read_bytes()
    assert s1 == s2 and s1.n_graphs == 5 and s1.skipped == 0

    rows = list(csv.reader(io.StringIO((out1 / "results.csv").read_text())))
    assert rows[0] == RESULTS_HEADER
    assert len(rows) == 1 + 5 * 4
    # summary statistics recompute exactly from the CSV rows
    by_graph = {}
    for row in rows[1:]:
        by_graph.setdefault(row[0], {})[row[1]] = Fraction(int(row[4]), int(row[5]))
    wins = sum(
        1 for d in by_graph.values() if d["augmented"] >= d["predictor"]
    )
    assert wins / len(by_graph) == s1.win_rate_vs_predictor

    timing_rows = (out1 / "timings.csv").read_text().splitlines()
    assert timing_rows[0] == "graph,method,wall_ms"
    assert len(timing_rows) == 1 + 5 * 4


def test_bench_skips_broken_graphs(tmp_path):
    corpus = _make_corpus(tmp_path, count=2)
    (corpus / "broken.txt").write_text("a b c d\n")
    log = io.StringIO()
    summary = bench_corpus(
        str(corpus), str(tmp_path / "out"), eps="0.2", seed=0, min_edges=1, log=log
    )
    assert summary.skipped == 1 and summary.n_graphs == 2
    assert "broken.txt" in log.getvalue()


def test_bench_external_predictions(tmp_path):
    corpus = _make_corpus(tmp_path, count=2)
    preds = tmp_path / "preds"
    preds.mkdir()
    for path in corpus.iterdir():
        g = load_graph(path)
        peel_set, _ = charikar_peel(g)
        lines = ["node,score"]
        chosen = set(peel_set.members)
        for v, token in enumerate(g.labels):
            lines.append(f"{token},{'0.9' if v in chosen else '0.1'}")
        (preds / (path.stem + ".csv")).write_text("\n".join(lines) + "\n")
    summary = bench_corpus(
        str(corpus), str(tmp_path / "out"), eps="0.2", seed=0,
        min_edges=1, predictions_dir=str(preds),
    )
    assert summary.n_graphs == 2 and summary.skipped == 0
    rows = list(
        csv.reader(io.StringIO((tmp_path / "out" / "results.csv").read_text()))
    )
    pred_rows = [r for r in rows[1:] if r[1] == "predictor"]
    assert all(r[7] == "" and r[8] == "" for r in pred_rows)  # no eps, no seed


def test_corruption_seed_is_stable():
    assert corruption_seed(3, "g.txt") == corruption_seed(3, "g.txt")
    assert corruption_seed(3, "g.txt") != corruption_seed(4, "g.txt")
    assert corruption_seed(3, "g.txt") != corruption_seed(3, "h.txt")


def test_bench_rejects_missing_directory(tmp_path):
    with pytest.raises(DensekitError):
        bench_corpus(str(tmp_path / "nope"), str(tmp_path / "out"))
