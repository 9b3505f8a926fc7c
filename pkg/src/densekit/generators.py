"""Seeded random graph generation for tests and benchmarks.

All randomness flows through ``numpy.random.Generator`` seeded with PCG64,
so any graph here is reproducible from (shape parameters, seed) on every
platform. Node labels are the decimal indices ``"0" .. "n-1"``.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractViolation
from .graph import Graph


def _labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def gnp_graph(n: int, p: float, seed: int, directed: bool = False) -> Graph:
    """Erdos-Renyi G(n, p), suitable for small and mid-size n.

    Materializes the full candidate-pair grid, so keep n in the thousands
    at most; use :func:`gnm_graph` for perf-scale instances.
    """
    if n < 1:
        raise ContractViolation("gnp_graph needs n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ContractViolation("gnp_graph needs p in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    if directed:
        src, dst = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        keep = src != dst
        src, dst = src[keep], dst[keep]
    else:
        src, dst = np.triu_indices(n, k=1)
    chosen = rng.random(len(src)) < p
    edges = np.column_stack([src[chosen], dst[chosen]]).astype(np.int64)
    return Graph.from_edges(_labels(n), edges, directed=directed)


def gnm_graph(n: int, m: int, seed: int, directed: bool = False) -> Graph:
    """Uniform-ish G(n, m): sample with replacement, dedup, top up until m edges.

    Meant for large sparse instances where the pair grid of ``gnp_graph``
    would not fit. Exact edge count is guaranteed; the distribution is the
    usual dedup-and-resample approximation.
    """
    if n < 2:
        raise ContractViolation("gnm_graph needs n >= 2")
    limit = n * (n - 1) if directed else n * (n - 1) // 2
    if not 0 <= m <= limit:
        raise ContractViolation(f"gnm_graph needs 0 <= m <= {limit}")
    rng = np.random.Generator(np.random.PCG64(seed))
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    while len(edges) < m:
        want = m - len(edges)
        src = rng.integers(0, n, size=2 * want + 16)
        dst = rng.integers(0, n, size=2 * want + 16)
        for u, v in zip(src.tolist(), dst.tolist()):
            if u == v:
                continue
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            edges.append(key)
            if len(edges) == m:
                break
    return Graph.from_edges(_labels(n), edges, directed=directed)


def planted_dense_graph(
    n: int,
    k: int,
    p_in: float,
    p_out: float,
    seed: int,
) -> tuple[Graph, "np.ndarray"]:
    """G(n, p_out) background with a planted G(k, p_in) block on nodes 0..k-1.

    Returns (graph, boolean membership mask of the planted block). Handy for
    building prediction-pipeline fixtures where the dense region is known.
    """
    if not 1 <= k <= n:
        raise ContractViolation("planted_dense_graph needs 1 <= k <= n")
    if not (0.0 <= p_out <= p_in <= 1.0):
        raise ContractViolation("planted_dense_graph needs 0 <= p_out <= p_in <= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    src, dst = np.triu_indices(n, k=1)
    inside = (src < k) & (dst < k)
    prob = np.where(inside, p_in, p_out)
    chosen = rng.random(len(src)) < prob
    edges = np.column_stack([src[chosen], dst[chosen]]).astype(np.int64)
    mask = np.zeros(n, dtype=bool)
    mask[:k] = True
    return Graph.from_edges(_labels(n), edges, directed=False), mask
