"""Ground-truth solvers: flow-based exact densest subgraph and small-n brute force.

The exact solver binary-searches a density guess and asks a max-flow
instance whether any subgraph beats it; the witness side of each improving
cut snaps the lower bound to an actual subgraph density, so the search
always terminates holding a set that achieves the final bound.

The brute-force functions are deliberately simple oracles for tests and
for tiny inputs; they refuse instances large enough to be a footgun.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ContractViolation, EmptySetError, NoEdgesError, RefusedError
from .flow import FlowNetwork, max_flow
from .graph import Graph, NodeSet, induced_edge_count

BRUTE_FORCE_MAX_NODES = 22
BRUTE_FORCE_DIRECTED_MAX_NODES = 11


def _guess_network(g: Graph) -> tuple[FlowNetwork, list[int], list[int], list[int]]:
    """Flow topology for the density decision problem, capacities unset.

    Returns (network, per-node source arc ids, per-node sink arc ids,
    forward arc ids of the edge gadgets). Capacities are filled per guess
    by :func:`_fill_capacities`.
    """
    n = g.n
    net = FlowNetwork(n + 2, source=n, sink=n + 1)
    source_arcs = [net.add_arc(n, v, 0) for v in range(n)]
    sink_arcs = [net.add_arc(v, n + 1, 0) for v in range(n)]
    edge_arcs: list[int] = []
    for u, v in g.edge_pairs():
        edge_arcs.append(net.add_arc(int(u), int(v), 0))
        edge_arcs.append(net.add_arc(int(v), int(u), 0))
    return net, source_arcs, sink_arcs, edge_arcs


def _fill_capacities(
    net: FlowNetwork,
    deg: list[int],
    m: int,
    guess: Fraction,
    source_arcs: list[int],
    sink_arcs: list[int],
    edge_arcs: list[int],
) -> int:
    """Set capacities for density guess a/b; returns the saturation value m*n*b.

    Scaling every capacity by the guess's denominator keeps them integral:
    source->v carries m*b, v->sink carries m*b + 2a - deg(v)*b, and each
    edge gadget carries b per direction. The min cut drops below m*n*b
    exactly when some subgraph is denser than the guess.
    """
    a, b = guess.numerator, guess.denominator
    cap = net.cap
    mb = m * b
    for v, (sa, ta) in enumerate(zip(source_arcs, sink_arcs)):
        cap[sa] = mb
        cap[sa + 1] = 0
        cap[ta] = mb + 2 * a - deg[v] * b
        cap[ta + 1] = 0
    for aid in edge_arcs:
        cap[aid] = b
        cap[aid + 1] = 0
    return mb * len(source_arcs)  # all n source arcs saturated


def _goldberg_search(g: Graph) -> tuple[NodeSet, Fraction, int]:
    """Exact densest subgraph; returns (set, its density, flow computations).

    The flow count is exposed so tests can pin the termination bound.
    """
    if g.directed:
        raise ContractViolation("exact solver handles undirected graphs only")
    m = g.m
    if m == 0:
        raise NoEdgesError("exact densest subgraph needs at least one edge")
    n = g.n
    deg = g.degrees().tolist()
    net, source_arcs, sink_arcs, edge_arcs = _guess_network(g)

    lo = Fraction(m, n)  # achieved by the full node set
    hi = Fraction(n - 1, 2)  # no simple graph is denser
    best = NodeSet.from_iterable(range(n))
    granularity = Fraction(1, n * (n - 1))
    flows = 0
    while hi - lo >= granularity:
        guess = (lo + hi) / 2
        saturation = _fill_capacities(
            net, deg, m, guess, source_arcs, sink_arcs, edge_arcs
        )
        value, side = max_flow(net)
        flows += 1
        if value < saturation:
            members = [v for v in side if v < n]
            if not members:
                raise ContractViolation("improving cut with an empty node side")
            witness = NodeSet.from_iterable(members)
            achieved = Fraction(induced_edge_count(g, witness), len(witness))
            if achieved <= guess:
                raise ContractViolation("cut witness is no denser than the guess")
            lo = achieved  # snap to a real density; at least halves the interval
            best = witness
        else:
            hi = guess
    return best, lo, flows


def exact_densest_subgraph(g: Graph) -> NodeSet:
    """Subgraph maximizing |E(S)|/|S|, found by max-flow binary search.

    Which maximizer is returned when several exist is cut-determined;
    only the density value is contractual.

    Raises:
        NoEdgesError: the graph has no edges.
        ContractViolation: the graph is directed.
    """
    best, _, _ = _goldberg_search(g)
    return best


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _adjacency_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for v in range(g.n):
        acc = 0
        for u in g.neighbors(v).tolist():
            acc |= 1 << u
        masks[v] = acc
    return masks


def brute_force_densest(g: Graph, objective: str = "standard") -> NodeSet:
    """Exhaustive maximizer of |E(S)|/|S| ("standard") or |E(S)|^2/|S| ("clique").

    Subsets are enumerated in Gray-code order with an incrementally
    maintained edge count. Ties prefer the smaller set, then the
    lexicographically smaller member tuple.

    Raises:
        RefusedError: n exceeds BRUTE_FORCE_MAX_NODES.
    """
    if g.directed:
        raise ContractViolation("brute_force_densest handles undirected graphs only")
    if objective not in ("standard", "clique"):
        raise ContractViolation(f"unknown objective: {objective!r}")
    if g.n > BRUTE_FORCE_MAX_NODES:
        raise RefusedError(
            f"brute force is capped at n <= {BRUTE_FORCE_MAX_NODES}, got {g.n}"
        )
    if g.n == 0:
        raise EmptySetError("graph has no nodes")
    squared = objective == "clique"
    adj = _adjacency_masks(g)
    best_e = 0
    best_size = 1
    best_mask = 1  # subset {0}: every objective scores 0 on it unless beaten
    prev = 0
    e = 0
    for k in range(1, 1 << g.n):
        gray = k ^ (k >> 1)
        changed = (gray ^ prev).bit_length() - 1
        if gray & (1 << changed):
            e += (adj[changed] & prev).bit_count()
        else:
            e -= (adj[changed] & gray).bit_count()
        prev = gray
        size = gray.bit_count()
        lhs = (e * e if squared else e) * best_size
        rhs = (best_e * best_e if squared else best_e) * size
        if lhs > rhs:
            best_e, best_size, best_mask = e, size, gray
        elif lhs == rhs:
            if size < best_size or (
                size == best_size
                and _mask_members(gray) < _mask_members(best_mask)
            ):
                best_e, best_size, best_mask = e, size, gray
    return NodeSet.from_iterable(_mask_members(best_mask))


def brute_force_directed_densest(g: Graph) -> tuple[NodeSet, NodeSet]:
    """Exhaustive maximizer of |E(S1,S2)|/sqrt(|S1||S2|) over non-empty pairs.

    Works on the squared objective so all decisive comparisons are between
    integers. The cross-edge table for all 4^n pairs is built with one
    matrix product; float scoring only shortlists candidates, which are
    then re-compared exactly. Ties prefer smaller (size, members) keys,
    on S1 first, then S2.

    Raises:
        RefusedError: n exceeds BRUTE_FORCE_DIRECTED_MAX_NODES.
    """
    if not g.directed:
        raise ContractViolation("brute_force_directed_densest needs a directed graph")
    if g.n > BRUTE_FORCE_DIRECTED_MAX_NODES:
        raise RefusedError(
            f"directed brute force is capped at n <= "
            f"{BRUTE_FORCE_DIRECTED_MAX_NODES}, got {g.n}"
        )
    if g.n == 0:
        raise EmptySetError("graph has no nodes")
    n = g.n
    size = 1 << n
    in_masks = np.zeros(n, dtype=np.uint32)
    for v in range(n):
        acc = 0
        for u in g.in_neighbors(v).tolist():
            acc |= 1 << u
        in_masks[v] = acc
    masks = np.arange(size, dtype=np.uint32)
    # arcs_into[i, v] = number of arcs from set(mask i) into node v
    arcs_into = np.bitwise_count(masks[:, None] & in_masks[None, :]).astype(np.float64)
    membership = ((masks[None, :] >> np.arange(n)[:, None]) & 1).astype(np.float64)
    cross = arcs_into @ membership  # exact small integers in float64
    pop = np.bitwise_count(masks).astype(np.float64)
    denom = pop[:, None] * pop[None, :]
    denom[0, :] = np.inf
    denom[:, 0] = np.inf
    score = (cross * cross) / denom
    top = float(score.max())
    if top <= 0.0:
        # no arcs at all: every pair scores 0, the tie-break picks ({0},{0})
        single = NodeSet.from_iterable([0])
        return single, single

    candidates = np.argwhere(score >= top * (1.0 - 1e-9))
    best = None  # (e, p, key1, key2, mask1, mask2)
    for i, j in candidates.tolist():
        e = int(cross[i, j])
        p = int(pop[i]) * int(pop[j])
        if best is not None:
            lhs = e * e * best[1]
            rhs = best[0] * best[0] * p
            if lhs < rhs:
                continue
            if lhs == rhs:
                key = (
                    (int(pop[i]), _mask_members(i)),
                    (int(pop[j]), _mask_members(j)),
                )
                if key >= (best[2], best[3]):
                    continue
        key1 = (int(pop[i]), _mask_members(i))
        key2 = (int(pop[j]), _mask_members(j))
        best = (e, p, key1, key2, i, j)
    return (
        NodeSet.from_iterable(_mask_members(best[4])),
        NodeSet.from_iterable(_mask_members(best[5])),
    )
