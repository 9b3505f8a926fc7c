"""Determinism and shape checks for the seeded graph generators."""

from __future__ import annotations

import numpy as np
import pytest

from densekit.errors import ContractViolation
from densekit.generators import gnm_graph, gnp_graph, planted_dense_graph


def test_gnp_is_deterministic_per_seed():
    a = gnp_graph(30, 0.3, seed=7)
    b = gnp_graph(30, 0.3, seed=7)
    c = gnp_graph(30, 0.3, seed=8)
    assert a == b
    assert a != c


def test_gnp_extremes():
    empty = gnp_graph(10, 0.0, seed=1)
    full = gnp_graph(10, 1.0, seed=1)
    assert empty.m == 0
    assert full.m == 45


def test_gnp_directed_excludes_self_loops():
    g = gnp_graph(8, 1.0, seed=3, directed=True)
    assert g.m == 8 * 7
    pairs = g.edge_pairs()
    assert np.all(pairs[:, 0] != pairs[:, 1])


def test_gnm_exact_edge_count_and_determinism():
    a = gnm_graph(50, 120, seed=11)
    b = gnm_graph(50, 120, seed=11)
    assert a.m == 120 and a == b
    d = gnm_graph(50, 120, seed=11, directed=True)
    assert d.m == 120 and d.directed


def test_gnm_rejects_impossible_counts():
    with pytest.raises(ContractViolation):
        gnm_graph(4, 7, seed=0)  # max undirected is 6
    assert gnm_graph(4, 6, seed=0).m == 6


def test_planted_dense_block_is_denser():
    g, mask = planted_dense_graph(40, 10, p_in=0.9, p_out=0.05, seed=5)
    assert mask.sum() == 10
    deg = g.degrees()
    assert deg[mask].mean() > deg[~mask].mean()
