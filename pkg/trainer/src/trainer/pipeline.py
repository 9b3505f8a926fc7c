"""Random-forest training over feature CSVs, prediction emission, metrics.

The pipeline consumes the toolkit's per-graph feature CSVs, fits a random
forest on (degree, avg_neighbor_degree, graph_n), and writes one prediction
CSV per test graph in the toolkit's ``node,score`` format, where score is
the fitted probability of belonging to the densest subgraph. The split is
by whole graph, never by node: node-level splits would leak the graph-size
feature between train and test.

The metrics report is recomputed from the prediction files actually written
to disk, not from in-memory arrays, so the report and the artifacts can
never drift apart.
"""

from __future__ import annotations

import csv
import json
import pickle
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sklearn.ensemble import RandomForestClassifier

from .errors import FormatError, SingleClassError, TrainerError
from .features import FeatureTable, prediction_name, read_feature_csv

PREDICTION_HEADER = ["node", "score"]
DEFAULT_TREES = 10
DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class TrainConfig:
    """Inputs of one training run.

    ``trees`` and ``seed`` feed the forest; ``threshold`` turns emitted
    scores back into class labels for the metrics report (the prediction
    CSVs themselves carry raw scores so downstream consumers can re-threshold).
    """

    train_files: tuple[Path, ...]
    test_files: tuple[Path, ...]
    trees: int = DEFAULT_TREES
    threshold: float = DEFAULT_THRESHOLD
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "train_files", tuple(Path(p) for p in self.train_files))
        object.__setattr__(self, "test_files", tuple(Path(p) for p in self.test_files))
        if self.trees < 1:
            raise TrainerError(f"tree count must be >= 1, got {self.trees}")
        if not 0.0 <= self.threshold <= 1.0:
            raise TrainerError(f"threshold must lie in [0, 1], got {self.threshold}")
        if not self.train_files:
            raise TrainerError("no training files")
        if not self.test_files:
            raise TrainerError("no test files")
        for p in (*self.train_files, *self.test_files):
            if not p.is_file():
                raise TrainerError(f"feature file not found: {p}")


@dataclass(frozen=True)
class TrainResult:
    """Artifacts of one run: model file, prediction CSVs, metrics report."""

    model_path: Path
    prediction_paths: tuple[Path, ...]
    metrics: dict
    metrics_path: Path
    table_path: Path


def _fit_forest(cfg: TrainConfig) -> RandomForestClassifier:
    tables = [read_feature_csv(p, require_labels=True) for p in cfg.train_files]
    matrix = np.vstack([t.matrix for t in tables])
    labels = np.concatenate([t.labels for t in tables])
    classes = np.unique(labels)
    if classes.size < 2:
        raise SingleClassError(
            f"all {labels.size} training rows across {len(tables)} graphs carry label "
            f"{int(classes[0])}; need both classes to fit a classifier"
        )
    model = RandomForestClassifier(n_estimators=cfg.trees, random_state=cfg.seed)
    model.fit(matrix, labels)
    return model


def _write_predictions(model, table: FeatureTable, out_path: Path) -> None:
    column = list(model.classes_).index(1)
    scores = model.predict_proba(table.matrix)[:, column]
    with open(out_path, "w", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(PREDICTION_HEADER)
        for node, score in zip(table.nodes, scores):
            writer.writerow([node, repr(float(score))])


def _read_scores(path: Path) -> dict[str, float]:
    with open(path, newline="") as fp:
        reader = csv.reader(fp)
        header = next(reader)
        if header != PREDICTION_HEADER:
            raise FormatError(f"expected header node,score, got {','.join(header)!r}", path=path)
        return {row[0]: float(row[1]) for row in reader if row}


def _per_class(true: np.ndarray, predicted: np.ndarray, label: int) -> dict:
    tp = int(np.sum((true == label) & (predicted == label)))
    fp = int(np.sum((true != label) & (predicted == label)))
    fn = int(np.sum((true == label) & (predicted != label)))
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return {
        "precision": precision,
        "recall": recall,
        "f1": f1,
        "support": int(np.sum(true == label)),
    }


def _metrics_table(metrics: dict) -> str:
    lines = [f"{'class':<10}{'precision':>10}{'recall':>10}{'f1':>10}{'support':>10}"]
    for label in ("0", "1"):
        row = metrics["per_class"][label]
        lines.append(
            f"{label:<10}{row['precision']:>10.4f}{row['recall']:>10.4f}"
            f"{row['f1']:>10.4f}{row['support']:>10d}"
        )
    lines.append(f"{'accuracy':<10}{'':>10}{'':>10}{metrics['accuracy']:>10.4f}"
                 f"{metrics['n_labeled_rows']:>10d}")
    return "\n".join(lines) + "\n"


def train_and_predict(cfg: TrainConfig, out_dir) -> TrainResult:
    """Fit the forest, write per-graph prediction CSVs, report metrics.

    Writes into ``out_dir``: ``model.pkl``, one ``<graph>.csv`` per test
    feature file, ``metrics.json``, and ``metrics.txt`` (the same numbers as
    a fixed-width table). Metrics are computed from the emitted CSVs read
    back from disk, restricted to test rows that carry labels.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model = _fit_forest(cfg)

    model_path = out_dir / "model.pkl"
    with open(model_path, "wb") as fp:
        pickle.dump(model, fp)

    tables = [read_feature_csv(p) for p in cfg.test_files]
    names = [prediction_name(p) for p in cfg.test_files]
    if len(set(names)) != len(names):
        raise TrainerError(f"test files collide after stem normalization: {sorted(names)}")
    prediction_paths = []
    for table, name in zip(tables, names):
        out_path = out_dir / name
        _write_predictions(model, table, out_path)
        prediction_paths.append(out_path)

    true_labels: list[np.ndarray] = []
    predicted_labels: list[np.ndarray] = []
    n_labeled = 0
    for table, out_path in zip(tables, prediction_paths):
        if table.labels is None:
            continue
        scores = _read_scores(out_path)
        predicted = np.asarray(
            [1 if scores[node] >= cfg.threshold else 0 for node in table.nodes], dtype=np.int64
        )
        true_labels.append(table.labels)
        predicted_labels.append(predicted)
        n_labeled += table.n_rows

    metrics = {
        "trees": cfg.trees,
        "threshold": cfg.threshold,
        "seed": cfg.seed,
        "n_train_graphs": len(cfg.train_files),
        "n_test_graphs": len(cfg.test_files),
        "n_test_rows": sum(t.n_rows for t in tables),
        "n_labeled_rows": n_labeled,
    }
    if n_labeled:
        true = np.concatenate(true_labels)
        predicted = np.concatenate(predicted_labels)
        metrics["accuracy"] = float(np.mean(true == predicted))
        metrics["per_class"] = {
            "0": _per_class(true, predicted, 0),
            "1": _per_class(true, predicted, 1),
        }
    else:
        metrics["accuracy"] = None
        metrics["per_class"] = None

    metrics_path = out_dir / "metrics.json"
    metrics_path.write_text(json.dumps(metrics, indent=2, sort_keys=True) + "\n")
    table_path = out_dir / "metrics.txt"
    table_path.write_text(
        _metrics_table(metrics) if n_labeled else "no labeled test rows\n"
    )
    return TrainResult(
        model_path=model_path,
        prediction_paths=tuple(prediction_paths),
        metrics=metrics,
        metrics_path=metrics_path,
        table_path=table_path,
    )
