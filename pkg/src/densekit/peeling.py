"""Greedy min-degree peeling: the linear-time 1/2-approximation baseline.

Nodes are removed one at a time, always a currently-minimum-degree node
(smallest index on ties), and the densest remaining subgraph seen along
the way is returned. A bucket queue keyed by degree keeps the whole run
O(n + m); density comparisons are exact integer cross-multiplications.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import ContractViolation, NoEdgesError
from .graph import Density, Graph, NodeSet


@dataclass(frozen=True)
class PeelTrace:
    """Full record of one peeling run.

    ``removal_order`` is the permutation of all node indices in the order
    they were removed. ``best_prefix_size`` is how many nodes were still
    present when the best density was observed, so the winning set is the
    last ``best_prefix_size`` entries of ``removal_order``.
    """

    removal_order: tuple[int, ...]
    best_prefix_size: int
    best_density: Density


def charikar_peel(g: Graph) -> tuple[NodeSet, PeelTrace]:
    """Peel to empty, return the densest suffix subgraph encountered.

    Among equal-density candidates the earliest (largest) one wins, so the
    full node set is the fallback when nothing beats m/n.

    Raises:
        NoEdgesError: the graph has no edges.
        ContractViolation: the graph is directed.
    """
    if g.directed:
        raise ContractViolation("peeling handles undirected graphs only")
    m = g.m
    if m == 0:
        raise NoEdgesError("peeling needs at least one edge")
    n = g.n
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]

    # one heap per degree value; stale entries are skipped lazily
    buckets: list[list[int]] = [[] for _ in range(max(deg) + 1)]
    for v in range(n):
        buckets[deg[v]].append(v)
    for bucket in buckets:
        heapq.heapify(bucket)
    pop, push = heapq.heappop, heapq.heappush

    alive = bytearray([1]) * n
    live_edges = m
    best_edges, best_size = m, n
    order: list[int] = []
    remaining = n
    cur = 0
    while remaining:
        while True:
            bucket = buckets[cur]
            if not bucket:
                cur += 1
                continue
            v = bucket[0]
            if alive[v] and deg[v] == cur:
                pop(bucket)
                break
            pop(bucket)  # dead or outdated entry
        alive[v] = 0
        removed_degree = deg[v]
        live_edges -= removed_degree
        for u in indices[indptr[v]:indptr[v + 1]]:
            if alive[u]:
                d = deg[u] - 1
                deg[u] = d
                push(buckets[d], u)
        order.append(v)
        remaining -= 1
        if removed_degree > 0:
            # neighbors lost one edge each; nothing dropped further than that
            cur = removed_degree - 1
        if remaining and live_edges * best_size > best_edges * remaining:
            best_edges, best_size = live_edges, remaining
    trace = PeelTrace(
        removal_order=tuple(order),
        best_prefix_size=best_size,
        best_density=Density.ratio(best_edges, best_size),
    )
    return NodeSet.from_iterable(order[n - best_size:]), trace
