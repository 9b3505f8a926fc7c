"""End-to-end checks against the main toolkit, via its CLI and CSV formats only.

The trainer never imports the main package; these tests exercise the full
loop the same way: generate edge lists, label features with
``densekit features --label-exact``, train, then feed the emitted prediction
CSVs back through ``densekit solve``.
"""

import json
import os
import random
import subprocess
import sys
from pathlib import Path

import pytest

from trainer import TrainConfig, train_and_predict

DENSEKIT = (sys.executable, "-m", "densekit.cli")
EPS = "0.2"


def run_densekit(*args):
    return subprocess.run([*DENSEKIT, *args], capture_output=True, text=True)


def write_random_graph(path: Path, n: int, p: float, seed: int) -> int:
    """Write a seeded G(n, p) edge list; returns the edge count."""
    rng = random.Random(seed)
    lines = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                lines.append(f"v{i} v{j}\n")
    if not lines:
        lines = [f"v0 v1\n"]
    path.write_text("".join(lines))
    return len(lines)


def build_labeled_corpus(root: Path, count: int, seed0: int):
    """Edge lists plus exact-labeled feature files, one pair per graph.

    Graphs cycle through three density regimes at overlapping sizes, so
    the same feature values carry different labels in different graphs
    and a forest trained on a few of them generalizes imperfectly.
    """
    graph_dir = root / "graphs"
    feat_dir = root / "features"
    graph_dir.mkdir()
    feat_dir.mkdir()
    graphs = []
    for i in range(count):
        n = 20 + (i * 7) % 11
        p = (0.13, 0.30, 0.50)[i % 3]
        g_path = graph_dir / f"g{i:02d}.txt"
        write_random_graph(g_path, n, p, seed=seed0 + i)
        proc = run_densekit("features", "--label-exact", str(g_path), "--out", str(feat_dir))
        assert proc.returncode == 0, proc.stderr
        graphs.append((g_path, feat_dir / f"g{i:02d}.features.csv"))
    return graphs


def solve_density(method: str, graph: Path, predictions: Path):
    """Density via the toolkit CLI; None when the prediction set is empty."""
    args = ["solve", "--method", method, "--predictions", str(predictions), str(graph)]
    if method == "augmented":
        args += ["--eps", EPS]
    proc = run_densekit(*args)
    if proc.returncode == 2:
        return None
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)["density"]


def test_augmentation_beats_trained_predictor_on_most_graphs(tmp_path):
    """Top-up with eps=0.2 should not lose to the raw trained prediction.

    Training uses a deliberately small slice of the corpus, and a middle
    slice is held out entirely, so the forest's membership rule reaches
    the evaluation graphs imperfect: it misses some members and admits
    some outsiders. Those gaps are what the augmentation can recover;
    graphs with an empty prediction count as losses.
    """
    graphs = build_labeled_corpus(tmp_path, count=36, seed0=8800)
    train = [feat for _, feat in graphs[:8]]
    test = graphs[16:]
    cfg = TrainConfig(train_files=train, test_files=[feat for _, feat in test], trees=10, seed=0)
    result = train_and_predict(cfg, tmp_path / "out")

    wins = 0
    for (g_path, _), pred_path in zip(test, result.prediction_paths):
        d_pred = solve_density("predictor", g_path, pred_path)
        d_aug = solve_density("augmented", g_path, pred_path)
        if d_pred is None or d_aug is None:
            continue
        wins += d_aug >= d_pred
    total = len(test)
    assert total == 20
    ok = wins / total >= 0.9
    print(
        f"SECONDARY {'PASS' if ok else 'FAIL'} -- augmented density >= trained-predictor "
        f"density on {wins}/{total} test graphs (needs >= 90%)"
    )
    assert ok


def test_emitted_predictions_parse_through_the_toolkit(tmp_path):
    graphs = build_labeled_corpus(tmp_path, count=6, seed0=900)
    cfg = TrainConfig(
        train_files=[feat for _, feat in graphs[:4]],
        test_files=[feat for _, feat in graphs[4:]],
        trees=10,
        seed=0,
    )
    result = train_and_predict(cfg, tmp_path / "out")
    for (g_path, _), pred_path in zip(graphs[4:], result.prediction_paths):
        proc = run_densekit(
            "solve", "--method", "predictor", "--predictions", str(pred_path), str(g_path)
        )
        assert proc.returncode in (0, 2), proc.stderr
        assert "ParseError" not in proc.stderr


def test_twitch_corpus_metrics_band():
    corpus = os.environ.get("DENSEKIT_TWITCH_DIR")
    if not corpus or not Path(corpus).is_dir():
        pytest.skip(
            "Twitch ego-net corpus not present; set DENSEKIT_TWITCH_DIR to a directory "
            "of per-ego edge-list files to run this check"
        )
    files = sorted(Path(corpus).iterdir())
    eligible = []
    for path in files:
        if not path.is_file():
            continue
        with open(path) as fp:
            edges = sum(1 for line in fp if line.strip() and not line.startswith(("#", "%")))
        if edges >= 100:
            eligible.append(path)
        if len(eligible) >= 350:
            break
    if len(eligible) < 320:
        pytest.skip(f"need at least 320 eligible graphs with >= 100 edges, found {len(eligible)}")
    feat_dir = Path(corpus).parent / "densekit_twitch_features"
    feat_dir.mkdir(exist_ok=True)
    feats = []
    for path in eligible:
        out = feat_dir / (path.stem + ".features.csv")
        if not out.is_file():
            proc = run_densekit("features", "--label-exact", str(path), "--out", str(feat_dir))
            assert proc.returncode == 0, proc.stderr
        feats.append(out)
    cfg = TrainConfig(train_files=feats[:300], test_files=feats[300:], trees=10, seed=0)
    result = train_and_predict(cfg, feat_dir / "run")
    recall = result.metrics["per_class"]["1"]["recall"]
    accuracy = result.metrics["accuracy"]
    print(
        f"SECONDARY {'PASS' if abs(recall - 0.89) <= 0.10 and abs(accuracy - 0.64) <= 0.10 else 'FAIL'}"
        f" -- class-1 recall {recall:.3f} (reference 0.89 +/- 0.10), "
        f"accuracy {accuracy:.3f} (reference 0.64 +/- 0.10)"
    )
    assert abs(recall - 0.89) <= 0.10
    assert abs(accuracy - 0.64) <= 0.10
