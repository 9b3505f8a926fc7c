"""Feature-CSV reading for the membership predictor.

The toolkit's ``features`` command emits one CSV per graph with header
``node,degree,avg_neighbor_degree,graph_n,label``; the label column holds
1 for nodes inside the exact densest set, 0 outside, or is empty when the
graph is unlabeled. This module parses that format into numpy arrays and
enforces the row invariants (every node once, labels binary when present).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import FormatError

FEATURE_HEADER = ["node", "degree", "avg_neighbor_degree", "graph_n", "label"]
FEATURE_COLUMNS = ("degree", "avg_neighbor_degree", "graph_n")


@dataclass(frozen=True)
class FeatureTable:
    """Per-node rows of one graph's feature file, in file order."""

    path: Path
    nodes: list[str]
    matrix: np.ndarray
    labels: np.ndarray | None

    @property
    def n_rows(self) -> int:
        return len(self.nodes)


def read_feature_csv(path, require_labels: bool = False) -> FeatureTable:
    """Parse one feature CSV into a FeatureTable.

    Rejects a wrong header, duplicate nodes, non-numeric feature values,
    and labels outside {0, 1}. With ``require_labels`` every row must carry
    a label; otherwise the file must be labeled all-or-nothing (a partially
    labeled graph is a format error either way).
    """
    path = Path(path)
    with open(path, newline="") as fp:
        reader = csv.reader(fp)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("empty file, expected a feature header", path=path) from None
        if header != FEATURE_HEADER:
            raise FormatError(
                f"expected header {','.join(FEATURE_HEADER)!r}, got {','.join(header)!r}",
                path=path,
            )
        nodes: list[str] = []
        seen: set[str] = set()
        values: list[tuple[float, float, float]] = []
        labels: list[int] = []
        blank_labels = 0
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(FEATURE_HEADER):
                raise FormatError(
                    f"expected {len(FEATURE_HEADER)} fields, got {len(row)}",
                    path=path,
                    line=lineno,
                )
            node, raw_label = row[0], row[4].strip()
            if node in seen:
                raise FormatError(f"duplicate node {node!r}", path=path, line=lineno)
            seen.add(node)
            try:
                values.append((float(row[1]), float(row[2]), float(row[3])))
            except ValueError:
                raise FormatError(
                    f"non-numeric feature value in {row[1:4]!r}", path=path, line=lineno
                ) from None
            if raw_label == "":
                blank_labels += 1
            elif raw_label in ("0", "1"):
                labels.append(int(raw_label))
            else:
                raise FormatError(
                    f"label must be 0, 1, or empty, got {raw_label!r}", path=path, line=lineno
                )
            nodes.append(node)
    if not nodes:
        raise FormatError("no data rows", path=path)
    if blank_labels and labels:
        raise FormatError(
            f"{blank_labels} unlabeled rows next to {len(labels)} labeled ones; "
            "label a graph fully or not at all",
            path=path,
        )
    if require_labels and blank_labels:
        raise FormatError("training rows must carry 0/1 labels", path=path)
    matrix = np.asarray(values, dtype=np.float64)
    label_arr = np.asarray(labels, dtype=np.int64) if labels else None
    return FeatureTable(path=path, nodes=nodes, matrix=matrix, labels=label_arr)


def collect_feature_files(directory) -> list[Path]:
    """Sorted feature CSVs directly inside ``directory`` (one per graph)."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FormatError(f"not a directory: {directory}")
    files = sorted(p for p in directory.iterdir() if p.suffix == ".csv" and not p.name.startswith("."))
    if not files:
        raise FormatError(f"no .csv files in {directory}")
    return files


def prediction_name(feature_path) -> str:
    """Output filename for a feature file's prediction CSV.

    The benchmark harness looks predictions up as ``<graph stem>.csv``, and
    the ``features`` command names its output ``<graph stem>.features.csv``,
    so a trailing ``.features`` is stripped from the stem.
    """
    stem = Path(feature_path).stem
    if stem.endswith(".features"):
        stem = stem[: -len(".features")]
    return stem + ".csv"
