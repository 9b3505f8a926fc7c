"""Exact solver vs enumeration oracles, plus brute-force contract checks."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from densekit.errors import ContractViolation, NoEdgesError, RefusedError
from densekit.exact import (
    _goldberg_search,
    brute_force_densest,
    brute_force_directed_densest,
    exact_densest_subgraph,
)
from densekit.generators import gnp_graph
from densekit.graph import NodeSet, density, directed_density, parse_edge_list

from conftest import oracle_clique_densest, oracle_densest, oracle_directed_densest


# ------------------------------------------------------- exact solver


def test_triangle_with_pendant(triangle_pendant):
    # triangle and full graph tie at density 1; the returned set is
    # cut-determined, so only the density value is contractual
    best = exact_densest_subgraph(triangle_pendant)
    assert density(triangle_pendant, best).as_fraction() == 1


def test_complete_bipartite_whole_graph(bipartite_2x5):
    best = exact_densest_subgraph(bipartite_2x5)
    assert len(best) == 7
    assert density(bipartite_2x5, best).as_fraction() == Fraction(10, 7)


def test_two_disjoint_triangles():
    g = parse_edge_list("a b\nb c\nc a\nx y\ny z\nz x\n")
    best = exact_densest_subgraph(g)
    assert density(g, best).as_fraction() == 1


def test_single_edge():
    g = parse_edge_list("a b\n")
    best = exact_densest_subgraph(g)
    assert density(g, best).as_fraction() == Fraction(1, 2)


def test_rejects_edgeless_and_directed():
    edgeless = parse_edge_list("# nothing\n")
    with pytest.raises(NoEdgesError):
        exact_densest_subgraph(edgeless)
    with pytest.raises(ContractViolation):
        exact_densest_subgraph(parse_edge_list("a b\n", directed=True))


def test_matches_enumeration_on_random_graphs():
    for trial in range(24):
        g = gnp_graph(4 + trial % 9, [0.2, 0.4, 0.7][trial % 3], seed=100 + trial)
        if g.m == 0:
            continue
        value, _ = oracle_densest(g)
        best, achieved, _ = _goldberg_search(g)
        assert achieved == value
        assert density(g, best).as_fraction() == value


def test_lower_bounds_and_flow_budget():
    for seed in range(12):
        g = gnp_graph(10, 0.4, seed=seed)
        if g.m == 0:
            continue
        best, achieved, flows = _goldberg_search(g)
        assert achieved >= Fraction(g.m, g.n)
        # a degree-k node and its neighbors already reach k/(k+1)
        k = int(g.degrees().max())
        assert achieved >= Fraction(k, k + 1)
        budget = math.ceil(math.log2(g.n * (g.n - 1) * g.n / 2)) + 2
        assert flows <= budget


# ------------------------------------------------------- brute force, undirected


def test_brute_single_edge():
    g = parse_edge_list("u v\n")
    assert brute_force_densest(g).members == (0, 1)


def test_brute_path_takes_everything():
    g = parse_edge_list("a b\nb c\n")
    best = brute_force_densest(g)
    assert best.members == (0, 1, 2)
    assert density(g, best).as_fraction() == Fraction(2, 3)


def test_brute_clique_objective_k4_variants():
    from densekit.graph import Graph

    k4_edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    # K4 plus an isolated fifth node: the K4 wins, 6^2/4 = 9
    g = Graph.from_edges(["a", "b", "c", "d", "e"], k4_edges)
    best = brute_force_densest(g, objective="clique")
    assert best.members == (0, 1, 2, 3)
    # a pendant edge instead changes the answer: 7^2/5 beats 9
    g2 = Graph.from_edges(["a", "b", "c", "d", "e"], k4_edges + [(3, 4)])
    best2 = brute_force_densest(g2, objective="clique")
    assert best2.members == (0, 1, 2, 3, 4)
    assert Fraction(7 * 7, 5) > Fraction(9)


def test_brute_tie_prefers_smallest_then_lexicographic():
    g = parse_edge_list("a b\nc d\n")  # two disjoint edges, all candidates 1/2
    assert brute_force_densest(g).members == (0, 1)


def test_brute_refuses_large_and_bad_objective():
    big = gnp_graph(23, 0.1, seed=1)
    with pytest.raises(RefusedError):
        brute_force_densest(big)
    with pytest.raises(ContractViolation):
        brute_force_densest(gnp_graph(4, 0.5, seed=1), objective="huh")


def test_brute_matches_independent_oracle():
    for trial in range(12):
        g = gnp_graph(4 + trial % 7, 0.5, seed=300 + trial)
        value, _ = oracle_densest(g)
        best = brute_force_densest(g)
        assert density(g, best).as_fraction() == value
        cvalue, _ = oracle_clique_densest(g)
        cbest = brute_force_densest(g, objective="clique")
        e = density(g, cbest).numerator  # numerator of e/|S| is e itself
        assert Fraction(e * e, len(cbest)) == cvalue


def test_exact_agrees_with_brute_on_small_corpus():
    for trial in range(20):
        g = gnp_graph(5 + trial % 10, [0.3, 0.6][trial % 2], seed=700 + trial)
        if g.m == 0:
            continue
        via_flow = exact_densest_subgraph(g)
        via_brute = brute_force_densest(g)
        assert density(g, via_flow) == density(g, via_brute)


# ------------------------------------------------------- brute force, directed


def test_directed_single_arc():
    g = parse_edge_list("u v\n", directed=True)
    s1, s2 = brute_force_directed_densest(g)
    assert s1.members == (0,) and s2.members == (1,)
    assert float(directed_density(g, s1, s2)) == 1.0


def test_directed_complete_bipartite():
    # appearance order gives indices a=0, c=1, d=2, b=3
    g = parse_edge_list("a c\na d\nb c\nb d\n", directed=True)
    s1, s2 = brute_force_directed_densest(g)
    assert g.tokens_of(s1) == ["a", "b"] and g.tokens_of(s2) == ["c", "d"]
    assert float(directed_density(g, s1, s2)) == pytest.approx(2.0)


def test_directed_three_cycle_density_one():
    g = parse_edge_list("a b\nb c\nc a\n", directed=True)
    s1, s2 = brute_force_directed_densest(g)
    d = directed_density(g, s1, s2)
    assert d.numerator * d.numerator == d.denominator  # value exactly 1


def test_directed_no_arcs_degenerate():
    g = parse_edge_list("a a\nb b\n", directed=True)
    assert g.n == 0  # loop-only lines never create nodes
    g2 = parse_edge_list("a b\n", directed=True)
    # graph with arcs is the normal path; the no-arc path needs a real node
    from densekit.graph import Graph

    g3 = Graph.from_edges(["a", "b"], [], directed=True)
    s1, s2 = brute_force_directed_densest(g3)
    assert s1.members == (0,) and s2.members == (0,)
    assert g2.m == 1


def test_directed_refuses_large():
    with pytest.raises(RefusedError):
        brute_force_directed_densest(gnp_graph(12, 0.3, seed=2, directed=True))
    with pytest.raises(ContractViolation):
        brute_force_directed_densest(gnp_graph(4, 0.5, seed=2, directed=False))


def test_directed_matches_independent_oracle():
    for trial in range(10):
        g = gnp_graph(3 + trial % 4, 0.5, seed=900 + trial, directed=True)
        squared, o1, o2 = oracle_directed_densest(g)
        s1, s2 = brute_force_directed_densest(g)
        e = directed_density(g, s1, s2).numerator if (s1.members and s2.members) else 0
        assert Fraction(e * e, len(s1) * len(s2)) == squared
