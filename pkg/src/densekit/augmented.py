"""Learning-augmented densest-subgraph algorithms.

Each algorithm receives a predicted partial solution and greedily tops it
up: score every outside node by how strongly it attaches to the predicted
set, then add the highest-scoring ones, with the budget
``floor(eps/(1-eps) * |S|)`` controlled by the trust parameter ``eps``
(smaller eps = more trusted prediction = smaller top-up).

Epsilon values are normalized to exact fractions up front, so budgets and
guarantee thresholds never depend on float rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractViolation, EmptySetError
from .graph import Graph, NodeSet, _check_set

EPSILON_FLOAT_DENOMINATOR_LIMIT = 10**6


def as_epsilon(value) -> Fraction:
    """Normalize a trust parameter to an exact Fraction.

    Strings parse exactly ("0.2" -> 1/5, "2/7" -> 2/7). Floats snap to the
    nearest fraction with denominator <= 10^6, which recovers the intended
    rational for any decimal or small-ratio input; budgets computed from
    the result are then exact integer arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ContractViolation(f"cannot parse epsilon: {value!r}") from exc
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ContractViolation("epsilon must be finite")
        return Fraction(value).limit_denominator(EPSILON_FLOAT_DENOMINATOR_LIMIT)
    raise ContractViolation(f"unsupported epsilon type: {type(value).__name__}")


def _validated_epsilon(value, upper: Fraction, inclusive: bool, what: str) -> Fraction:
    eps = as_epsilon(value)
    ok = (eps <= upper) if inclusive else (eps < upper)
    if eps <= 0 or not ok:
        bracket = "]" if inclusive else ")"
        raise ContractViolation(f"{what} must lie in (0, {upper}{bracket}, got {eps}")
    return eps


@dataclass(frozen=True)
class AugmentParams:
    """Validated trust parameters for the guarantee-carrying ranges.

    ``epsilon`` is the undirected/clique parameter, capped at 1/2 where the
    additive guarantees stay meaningful; ``epsilon1``/``epsilon2`` are the
    directed pair, strictly below 1/2 as the directed proof requires. The
    algorithms themselves accept some wider per-call ranges; this type is
    what pipelines (CLI, verification) construct.
    """

    epsilon: Fraction | None = None
    epsilon1: Fraction | None = None
    epsilon2: Fraction | None = None

    def __post_init__(self):
        if self.epsilon is not None:
            object.__setattr__(
                self,
                "epsilon",
                _validated_epsilon(self.epsilon, Fraction(1, 2), True, "epsilon"),
            )
        for name in ("epsilon1", "epsilon2"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(
                    self, name, _validated_epsilon(val, Fraction(1, 2), False, name)
                )
        if (self.epsilon1 is None) != (self.epsilon2 is None):
            raise ContractViolation("epsilon1 and epsilon2 must be given together")


def augmentation_budget(set_size: int, eps: Fraction) -> int:
    """Number of nodes the augmentation may add: floor(eps/(1-eps) * size).

    The guarantees need the budget to cover every optimum node the
    prediction missed, and that count is an integer bounded by the exact
    fraction eps/(1-eps)*size, hence by its floor. Rounding down (never
    up) also keeps the grown set inside the size allowance the density
    proofs charge against, so the bounds hold even on tiny sets where one
    extra node would visibly dilute the density.
    """
    return math.floor(eps / (1 - eps) * set_size)


def attachment_counts(g: Graph, s: NodeSet) -> np.ndarray:
    """Per-node count of neighbors inside ``s``; zero for members of ``s``.

    One vectorized pass over the adjacency arrays.
    """
    if g.directed:
        raise ContractViolation("attachment_counts needs an undirected graph")
    _check_set(g, s)
    inside = s.mask(g.n)
    hits = inside[g.indices]
    counts = np.bincount(g._edge_src[hits], minlength=g.n)
    counts[inside] = 0
    return counts


def directed_attachment_counts(
    g: Graph, s1: NodeSet, s2: NodeSet
) -> tuple[np.ndarray, np.ndarray]:
    """Scores for growing each side of a directed solution.

    First array: per-node count of out-arcs into ``s2`` (zero inside
    ``s1``), the merit of adding the node to the source side. Second:
    count of in-arcs from ``s1`` (zero inside ``s2``), the merit for the
    target side.
    """
    if not g.directed:
        raise ContractViolation("directed_attachment_counts needs a directed graph")
    _check_set(g, s1, "s1")
    _check_set(g, s2, "s2")
    in1 = s1.mask(g.n)
    in2 = s2.mask(g.n)
    into_s2 = np.bincount(g._edge_src[in2[g.indices]], minlength=g.n)
    into_s2[in1] = 0
    in_targets = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.in_indptr))
    from_s1 = np.bincount(in_targets[in1[g.in_indices]], minlength=g.n)
    from_s1[in2] = 0
    return into_s2, from_s1


def _top_outside(scores: np.ndarray, inside: np.ndarray, budget: int) -> np.ndarray:
    """Indices of the ``budget`` best outside nodes: higher score, then lower index."""
    candidates = np.flatnonzero(~inside)
    if budget >= len(candidates):
        return candidates
    order = np.lexsort((candidates, -scores[candidates]))
    return candidates[order[:budget]]


def augment_undirected(g: Graph, s: NodeSet, eps) -> NodeSet:
    """Grow a predicted set with its best-attached outside nodes.

    Adds the ``floor(eps/(1-eps)*|s|)`` outside nodes with the most
    neighbors inside ``s`` (all outside nodes if fewer exist). Zero-score
    nodes still fill the quota; ties prefer the smaller index.

    Raises:
        EmptySetError: ``s`` is empty.
        ContractViolation: directed graph, or eps outside (0, 1).
    """
    eps = _validated_epsilon(eps, Fraction(1), False, "eps")
    if not s.members:
        raise EmptySetError("augmentation needs a non-empty predicted set")
    scores = attachment_counts(g, s)  # validates graph kind and range
    chosen = _top_outside(scores, s.mask(g.n), augmentation_budget(len(s), eps))
    return s.union(NodeSet.from_iterable(chosen))


def augment_clique(g: Graph, s: NodeSet, eps) -> NodeSet:
    """Clique-objective variant: same greedy top-up, eps capped at 1/2.

    Selection mechanics are identical to :func:`augment_undirected`; only
    the guarantee (and hence the admissible eps range) differs.
    """
    eps = _validated_epsilon(eps, Fraction(1, 2), True, "eps")
    if not s.members:
        raise EmptySetError("augmentation needs a non-empty predicted set")
    scores = attachment_counts(g, s)
    chosen = _top_outside(scores, s.mask(g.n), augmentation_budget(len(s), eps))
    return s.union(NodeSet.from_iterable(chosen))


def augment_directed(
    g: Graph, s1: NodeSet, s2: NodeSet, eps1, eps2
) -> tuple[NodeSet, NodeSet]:
    """Grow both sides of a predicted directed solution independently.

    Side 1 gains the nodes sending the most arcs into ``s2``; side 2 gains
    the nodes receiving the most arcs from ``s1``. Budgets are computed
    per side from (eps1, eps2), both required in (0, 1/2).

    Raises:
        EmptySetError: either side is empty.
        ContractViolation: undirected graph, or an eps out of range.
    """
    eps1 = _validated_epsilon(eps1, Fraction(1, 2), False, "eps1")
    eps2 = _validated_epsilon(eps2, Fraction(1, 2), False, "eps2")
    if not s1.members or not s2.members:
        raise EmptySetError("augmentation needs non-empty predicted sets")
    scores1, scores2 = directed_attachment_counts(g, s1, s2)
    grown1 = _top_outside(scores1, s1.mask(g.n), augmentation_budget(len(s1), eps1))
    grown2 = _top_outside(scores2, s2.mask(g.n), augmentation_budget(len(s2), eps2))
    return (
        s1.union(NodeSet.from_iterable(grown1)),
        s2.union(NodeSet.from_iterable(grown2)),
    )
