"""Prediction sets: synthetic corruption, feature export, CSV ingestion.

The augmentation algorithms consume a predicted node set from anywhere.
This module supplies the two concrete sources:

* ``corrupt_solution`` fabricates a prediction from a known optimum by
  removing and adding a seeded random ``floor(eps * |optimum|)`` nodes,
  which provably satisfies the overlap preconditions the density
  guarantees assume (checked at generation time, not merely hoped for).
* ``load_predictions`` reads the score CSV an external classifier emits
  and thresholds it into a node set.

``export_features`` writes the per-node table such a classifier trains
on: degree, average neighbor degree, and graph size, optionally labeled
by membership in the exact densest set.

File formats (UTF-8, comma-separated, tokens never quoted):

* feature CSV header: ``node,degree,avg_neighbor_degree,graph_n,label``
  with label in {0, 1, ""} ("" = unlabeled);
* prediction CSV header: ``node,score`` with score in [0, 1].

Randomness comes from numpy's PCG64 so fixtures reproduce across runs,
platforms, and reimplementations.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .augmented import as_epsilon
from .errors import (
    ContractViolation,
    EmptyPredictionError,
    EmptySetError,
    ParseError,
    UnknownNodeError,
)
from .graph import Graph, NodeSet, _check_set

FEATURE_HEADER = ["node", "degree", "avg_neighbor_degree", "graph_n", "label"]
PREDICTION_HEADER = ["node", "score"]
DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class SyntheticSource:
    """Provenance of a corruption-generated prediction."""

    eps: Fraction
    seed: int


@dataclass(frozen=True)
class ExternalSource:
    """Provenance of a prediction loaded from a classifier's CSV."""

    path: str


@dataclass(frozen=True)
class PredictionSet:
    """A predicted node set plus where it came from."""

    nodes: NodeSet
    source: SyntheticSource | ExternalSource

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class FeatureRow:
    """Per-node classifier features; ``in_densest`` is None when unlabeled."""

    node: str
    degree: int
    avg_neighbor_degree: float
    graph_n: int
    in_densest: int | None


def _corruption_eps(eps) -> Fraction:
    value = as_epsilon(eps)
    if not 0 <= value < 1:
        raise ContractViolation(f"corruption rate must lie in [0, 1), got {value}")
    return value


def _corrupt_members(
    g: Graph, optimum: NodeSet, eps: Fraction, rng: np.random.Generator
) -> NodeSet:
    count = math.floor(eps * len(optimum))
    inside = optimum.to_array()
    removed = rng.permutation(inside)[:count]
    outside = np.flatnonzero(~optimum.mask(g.n))
    added = rng.permutation(outside)[: min(count, len(outside))]
    keep = np.setdiff1d(inside, removed, assume_unique=True)
    return NodeSet.from_iterable(np.concatenate([keep, added]).tolist())


def _assert_preconditions(result: NodeSet, optimum: NodeSet, eps: Fraction) -> None:
    h = len(optimum)
    overlap = len(set(result.members) & set(optimum.members))
    stray = len(result) - overlap
    if Fraction(overlap) < (1 - eps) * h or Fraction(stray) > eps * h:
        raise ContractViolation(
            "corruption produced a set outside its own overlap guarantees"
        )


def corrupt_solution(g: Graph, h_star: NodeSet, eps, seed: int) -> PredictionSet:
    """Perturb a known optimum into a prediction with bounded error.

    Removes ``floor(eps * |h_star|)`` uniformly random members and adds
    the same number of uniformly random outsiders (fewer if the graph
    runs out). Flooring keeps both overlap preconditions true for every
    input, and also keeps the result no larger than the optimum, which
    the directed guarantee leans on for trust levels above 1/3.
    """
    eps = _corruption_eps(eps)
    _check_set(g, h_star, "h_star")
    if not h_star.members:
        raise EmptySetError("cannot corrupt an empty optimum")
    rng = np.random.Generator(np.random.PCG64(seed))
    nodes = _corrupt_members(g, h_star, eps, rng)
    _assert_preconditions(nodes, h_star, eps)
    return PredictionSet(nodes=nodes, source=SyntheticSource(eps=eps, seed=seed))


def corrupt_directed_solution(
    g: Graph, s1_star: NodeSet, s2_star: NodeSet, eps1, eps2, seed: int
) -> tuple[PredictionSet, PredictionSet]:
    """Corrupt both sides of a directed optimum independently.

    Each side gets its own child generator spawned from ``seed``, so the
    sides are decorrelated yet the pair is reproducible from one number.
    """
    eps1, eps2 = _corruption_eps(eps1), _corruption_eps(eps2)
    _check_set(g, s1_star, "s1_star")
    _check_set(g, s2_star, "s2_star")
    if not s1_star.members or not s2_star.members:
        raise EmptySetError("cannot corrupt an empty optimum side")
    children = np.random.SeedSequence(seed).spawn(2)
    results = []
    for side, eps, child in ((s1_star, eps1, children[0]), (s2_star, eps2, children[1])):
        rng = np.random.Generator(np.random.PCG64(child))
        nodes = _corrupt_members(g, side, eps, rng)
        _assert_preconditions(nodes, side, eps)
        results.append(
            PredictionSet(nodes=nodes, source=SyntheticSource(eps=eps, seed=seed))
        )
    return results[0], results[1]


def export_features(g: Graph, labels: NodeSet | None = None) -> list[FeatureRow]:
    """One feature row per node, in node-index order, in O(m) total.

    ``avg_neighbor_degree`` is 0 for isolated nodes by convention.
    """
    if g.directed:
        raise ContractViolation("feature export is defined for undirected graphs")
    if labels is not None:
        _check_set(g, labels, "labels")
    degrees = g.degrees()
    neighbor_sum = np.bincount(
        g._edge_src, weights=degrees[g.indices].astype(np.float64), minlength=g.n
    )
    avg = np.where(degrees > 0, neighbor_sum / np.maximum(degrees, 1), 0.0)
    member_mask = labels.mask(g.n) if labels is not None else None
    rows = []
    for v in range(g.n):
        rows.append(
            FeatureRow(
                node=g.labels[v],
                degree=int(degrees[v]),
                avg_neighbor_degree=float(avg[v]),
                graph_n=g.n,
                in_densest=None if member_mask is None else int(member_mask[v]),
            )
        )
    return rows


def write_feature_csv(rows: Iterable[FeatureRow], fp) -> None:
    """Write feature rows in the documented CSV format."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(FEATURE_HEADER)
    for row in rows:
        label = "" if row.in_densest is None else str(row.in_densest)
        writer.writerow(
            [row.node, row.degree, repr(row.avg_neighbor_degree), row.graph_n, label]
        )


def serialize_features(rows: Iterable[FeatureRow]) -> str:
    buf = io.StringIO()
    write_feature_csv(rows, buf)
    return buf.getvalue()


def _open_rows(path: str, expected_header: Sequence[str]):
    """Yield (line_number, row) pairs after validating the header."""
    with open(path, "r", encoding="utf-8", newline="") as fp:
        reader = csv.reader(fp)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("missing CSV header", line=1) from None
        if header != list(expected_header):
            raise ParseError(
                f"expected header {','.join(expected_header)!r}, got {','.join(header)!r}",
                line=1,
            )
        for number, row in enumerate(reader, start=2):
            if not row:
                continue
            yield number, row


def load_predictions(
    path: str, g: Graph, threshold: float = DEFAULT_THRESHOLD
) -> PredictionSet:
    """Threshold a classifier's score CSV into a PredictionSet.

    Keeps every node whose score is at least ``threshold``. Unknown
    tokens, duplicate tokens, out-of-range scores, and short rows are
    rejected with the offending line number; an empty result raises
    EmptyPredictionError because augmentation needs a non-empty seed set.
    """
    index = g.label_index
    chosen: list[int] = []
    seen: set[str] = set()
    for number, row in _open_rows(path, PREDICTION_HEADER):
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=number)
        token, raw_score = row
        if token in seen:
            raise ParseError(f"duplicate node token: {token!r}", line=number)
        seen.add(token)
        if token not in index:
            raise UnknownNodeError(f"unknown node token: {token!r} (line {number})")
        try:
            score = float(raw_score)
        except ValueError:
            raise ParseError(f"malformed score: {raw_score!r}", line=number) from None
        if not 0.0 <= score <= 1.0:
            raise ParseError(f"score out of [0, 1]: {raw_score}", line=number)
        if score >= threshold:
            chosen.append(index[token])
    if not chosen:
        raise EmptyPredictionError(
            f"no node in {path} scored at or above {threshold}"
        )
    return PredictionSet(
        nodes=NodeSet.from_iterable(chosen), source=ExternalSource(path=path)
    )


def serialize_predictions(g: Graph, nodes: NodeSet, score: float = 1.0) -> str:
    """Render a node set as a loadable prediction CSV (members only)."""
    _check_set(g, nodes)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PREDICTION_HEADER)
    for token in g.tokens_of(nodes):
        writer.writerow([token, repr(score)])
    return buf.getvalue()


def load_feature_labels(path: str, g: Graph) -> NodeSet:
    """Recover the labeled member set from a feature CSV (round trip)."""
    index = g.label_index
    members: list[int] = []
    for number, row in _open_rows(path, FEATURE_HEADER):
        if len(row) != len(FEATURE_HEADER):
            raise ParseError(
                f"expected {len(FEATURE_HEADER)} fields, got {len(row)}", line=number
            )
        token, label = row[0], row[4]
        if token not in index:
            raise UnknownNodeError(f"unknown node token: {token!r} (line {number})")
        if label == "1":
            members.append(index[token])
        elif label not in ("", "0"):
            raise ParseError(f"label must be 0, 1, or empty, got {label!r}", line=number)
    return NodeSet.from_iterable(members)
