"""Shared fixtures and slow-but-obviously-correct reference oracles.

The oracles here deliberately avoid the package's own data structures and
algorithms: they enumerate subsets with itertools and count edges from a
plain set of pairs, so agreement with the library is meaningful evidence.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from densekit.graph import Graph, parse_edge_list


# ---------------------------------------------------------------- oracles


def edge_set(g: Graph) -> set[tuple[int, int]]:
    """Plain set of index pairs: (min,max) undirected, (src,dst) directed."""
    return {(int(u), int(v)) for u, v in g.edge_pairs()}


def oracle_induced_edges(edges: set[tuple[int, int]], s: set[int]) -> int:
    return sum(1 for u, v in edges if u in s and v in s)


def oracle_cross_edges(edges: set[tuple[int, int]], s1: set[int], s2: set[int]) -> int:
    return sum(1 for u, v in edges if u in s1 and v in s2)


def oracle_densest(g: Graph) -> tuple[Fraction, frozenset[int]]:
    """Max of |E(S)|/|S| over non-empty S, by full enumeration.

    Ties prefer the smaller set, then lexicographically smaller members,
    mirroring the library's documented tie policy.
    """
    edges = edge_set(g)
    best: Fraction | None = None
    best_set: frozenset[int] | None = None
    for r in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), r):
            s = set(combo)
            d = Fraction(oracle_induced_edges(edges, s), r)
            if best is None or d > best:
                best, best_set = d, frozenset(s)
    return best, best_set


def oracle_clique_densest(g: Graph) -> tuple[Fraction, frozenset[int]]:
    """Max of |E(S)|^2/|S| over non-empty S, by full enumeration."""
    edges = edge_set(g)
    best: Fraction | None = None
    best_set: frozenset[int] | None = None
    for r in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), r):
            s = set(combo)
            e = oracle_induced_edges(edges, s)
            d = Fraction(e * e, r)
            if best is None or d > best:
                best, best_set = d, frozenset(s)
    return best, best_set


def oracle_directed_densest(g: Graph) -> tuple[Fraction, frozenset[int], frozenset[int]]:
    """Max of |E(S1,S2)|^2/(|S1||S2|) over non-empty S1, S2 (squared form).

    Returns the squared objective so everything stays rational.
    """
    edges = edge_set(g)
    nodes = range(g.n)
    best: Fraction | None = None
    best_pair = None
    for r1 in range(1, g.n + 1):
        for c1 in itertools.combinations(nodes, r1):
            s1 = set(c1)
            for r2 in range(1, g.n + 1):
                for c2 in itertools.combinations(nodes, r2):
                    s2 = set(c2)
                    e = oracle_cross_edges(edges, s1, s2)
                    d = Fraction(e * e, r1 * r2)
                    if best is None or d > best:
                        best, best_pair = d, (frozenset(s1), frozenset(s2))
    return best, best_pair[0], best_pair[1]


# ---------------------------------------------------------------- fixtures


BIPARTITE_2x5_TEXT = """\
# complete bipartite graph: left {a1,a2}, right {b1..b5}
a1 b1
a1 b2
a1 b3
a1 b4
a1 b5
a2 b1
a2 b2
a2 b3
a2 b4
a2 b5
"""


@pytest.fixture
def bipartite_2x5() -> Graph:
    """K_{2,5}: densest subgraph is the whole graph at 10/7."""
    return parse_edge_list(BIPARTITE_2x5_TEXT)


@pytest.fixture
def triangle_pendant() -> Graph:
    """Triangle 0-1-2 plus pendant 3 attached to 0.

    Both the triangle and the full graph have density 1, so set-valued
    assertions must respect each algorithm's documented tie policy.
    """
    return parse_edge_list("0 1\n1 2\n2 0\n0 3\n")


@pytest.fixture
def two_triangles_directed() -> Graph:
    """Directed 6-cycle 0..5 plus chords making 0->1->2->0 a dicycle."""
    return parse_edge_list(
        "0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 0\n", directed=True
    )
