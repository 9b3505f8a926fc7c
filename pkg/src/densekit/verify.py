"""Exact checks of the density guarantees, plus a randomized audit suite.

Every guarantee the augmentation algorithms advertise is decidable in
exact arithmetic, even the ones whose constants involve square roots:
compare in squared form after isolating the radical, so a check never
passes or fails by float luck. The ``run_property_suite`` driver smokes
these checks (and the solver cross-validations) over seeded random
graphs and reports replayable counterexamples if anything breaks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .augmented import (
    as_epsilon,
    augment_clique,
    augment_directed,
    augment_undirected,
)
from .exact import (
    BRUTE_FORCE_DIRECTED_MAX_NODES,
    BRUTE_FORCE_MAX_NODES,
    brute_force_densest,
    brute_force_directed_densest,
    exact_densest_subgraph,
)
from .generators import gnp_graph
from .graph import (
    Graph,
    NodeSet,
    clique_density,
    cross_edge_count,
    density,
    induced_edge_count,
    serialize_edge_list,
)
from .peeling import charikar_peel
from .predictions import corrupt_directed_solution, corrupt_solution

EDGE_PROBABILITIES = (0.2, 0.4, 0.7)
DEFAULT_EPS_GRID = ("0.05", "0.1", "0.2", "0.3")


# ------------------------------------------------------------ bound checks


def undirected_bound_holds(d_aug: Fraction, d_opt: Fraction, eps) -> bool:
    """Augmented density reaches (1 - 3*eps) of the optimum, exactly."""
    eps = as_epsilon(eps)
    if 1 - 3 * eps <= 0:
        return True
    return d_aug >= (1 - 3 * eps) * d_opt


def missing_slice_share_holds(g: Graph, prediction: NodeSet, optimum: NodeSet, eps) -> bool:
    """The optimum's nodes missing from the prediction span few edges.

    Counts edges of the subgraph induced by optimum-minus-prediction and
    compares against eps times the optimum's own edge count.
    """
    eps = as_epsilon(eps)
    missing = [v for v in optimum.members if v not in prediction]
    if not missing:
        return True
    stray = induced_edge_count(g, NodeSet.from_iterable(missing))
    return Fraction(stray) <= eps * induced_edge_count(g, optimum)


def directed_bound_holds(e_out: int, p_out: int, e_opt: int, p_opt: int, eps1, eps2) -> bool:
    """Directed bound, decided in squared-integer form.

    The claim e_out/sqrt(p_out) >= (1-sqrt(a))/sqrt(B) * e_opt/sqrt(p_opt)
    with a = eps1*eps2 and B = (1+3*eps1)(1+3*eps2) squares into
    L >= -2*sqrt(a)*e_opt^2*p_out for L = e_out^2*B*p_opt - (1+a)*e_opt^2*p_out,
    which holds iff L >= 0, or L^2 <= 4*a*(e_opt^2*p_out)^2 otherwise.
    """
    eps1, eps2 = as_epsilon(eps1), as_epsilon(eps2)
    alpha = eps1 * eps2
    big_b = (1 + 3 * eps1) * (1 + 3 * eps2)
    left = Fraction(e_out * e_out) * big_b * p_opt - (1 + alpha) * e_opt * e_opt * p_out
    if left >= 0:
        return True
    return left * left <= 4 * alpha * Fraction(e_opt * e_opt * p_out) ** 2


def missing_pair_share_holds(stray_arcs: int, optimum_arcs: int, eps1, eps2) -> bool:
    """Arcs between the two missing slices stay below sqrt(eps1*eps2) share."""
    eps1, eps2 = as_epsilon(eps1), as_epsilon(eps2)
    return Fraction(stray_arcs) ** 2 <= eps1 * eps2 * Fraction(optimum_arcs) ** 2


def clique_bound_holds(g_aug: Fraction, g_opt: Fraction, eps) -> bool:
    """Clique-density bound (1 - 3*sqrt(eps)), decided in squared form."""
    eps = as_epsilon(eps)
    if g_opt <= 0:
        return True
    gap = 1 - Fraction(g_aug) / g_opt
    if gap <= 0:
        return True
    return gap * gap <= 9 * eps


def charikar_bound_holds(d_peel: Fraction, d_opt: Fraction) -> bool:
    """Peeling is a 1/2-approximation of the exact optimum."""
    return 2 * d_peel >= d_opt


# ------------------------------------------------------------ audit suite


@dataclass
class FailureExample:
    """Everything needed to replay one violated check."""

    check: str
    seed: int
    eps: str
    edges: str

    def describe(self) -> str:
        return (
            f"{self.check} violated (seed {self.seed}, eps {self.eps}); "
            f"replay edges:\n{self.edges}"
        )


@dataclass
class CheckCounter:
    name: str
    passed: int = 0
    failed: int = 0
    failure: FailureExample | None = None

    def record(self, ok: bool, example: FailureExample) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.failure is None:
                self.failure = example


@dataclass
class VerifyReport:
    trials: int
    checks: list[CheckCounter] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.failed == 0 for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "ok" if c.failed == 0 else "FAIL"
            out.append(f"{c.name}: {c.passed} passed, {c.failed} failed [{status}]")
        out.append(
            f"verify: {'all checks passed' if self.ok else 'VIOLATIONS FOUND'} "
            f"over {self.trials} trials"
        )
        if not self.ok:
            for c in self.checks:
                if c.failure is not None:
                    out.append(c.failure.describe())
        return out


def _nonempty_gnp(n: int, p: float, seed: int, directed: bool) -> tuple[Graph, int]:
    """Seeded random graph with at least one edge (bumping the seed if empty)."""
    g = gnp_graph(n, p, seed=seed, directed=directed)
    while g.m == 0:
        seed += 1
        g = gnp_graph(n, p, seed=seed, directed=directed)
    return g, seed


def run_property_suite(
    trials: int,
    min_n: int = 4,
    max_n: int = 12,
    eps_grid: tuple = DEFAULT_EPS_GRID,
    seed: int = 0,
) -> VerifyReport:
    """Cross-validate solvers and guarantee bounds on random instances.

    Per trial: exact-vs-brute density equality, the peeling guarantee,
    and for every epsilon on the grid the undirected and clique bounds
    under synthetic corruption. A matching number of directed trials
    exercises the two-sided bound. All instance parameters derive from
    ``seed`` so a report is reproducible, and each counterexample is
    serialized for replay. ``trials=0`` passes vacuously.
    """
    grid = [as_epsilon(e) for e in eps_grid]
    counters = {
        name: CheckCounter(name)
        for name in (
            "exact equals brute force",
            "peeling half-approximation",
            "undirected density bound",
            "missing-slice edge share",
            "clique density bound",
            "directed density bound",
            "missing-pair arc share",
        )
    }
    root = np.random.SeedSequence(seed)
    undirected_seeds, directed_seeds = root.spawn(2)

    for trial_seq in undirected_seeds.spawn(max(trials, 0)):
        rng = np.random.Generator(np.random.PCG64(trial_seq))
        n = int(rng.integers(min_n, max_n + 1))
        p = float(rng.choice(EDGE_PROBABILITIES))
        graph_seed = int(rng.integers(0, 2**31))
        corrupt_seed = int(rng.integers(0, 2**31))
        g, graph_seed = _nonempty_gnp(n, p, graph_seed, directed=False)
        edges = serialize_edge_list(g)

        def example(check: str, eps: str = "-") -> FailureExample:
            return FailureExample(check=check, seed=graph_seed, eps=eps, edges=edges)

        optimum = exact_densest_subgraph(g)
        d_opt = density(g, optimum).as_fraction()
        if g.n <= BRUTE_FORCE_MAX_NODES:
            d_brute = density(g, brute_force_densest(g)).as_fraction()
            counters["exact equals brute force"].record(
                d_opt == d_brute, example("exact equals brute force")
            )
        peel_set, _ = charikar_peel(g)
        counters["peeling half-approximation"].record(
            charikar_bound_holds(density(g, peel_set).as_fraction(), d_opt),
            example("peeling half-approximation"),
        )
        for eps in grid:
            pred = corrupt_solution(g, optimum, eps, seed=corrupt_seed)
            grown = augment_undirected(g, pred.nodes, eps)
            counters["undirected density bound"].record(
                undirected_bound_holds(density(g, grown).as_fraction(), d_opt, eps),
                example("undirected density bound", str(eps)),
            )
            counters["missing-slice edge share"].record(
                missing_slice_share_holds(g, pred.nodes, optimum, eps),
                example("missing-slice edge share", str(eps)),
            )
        if g.n <= 16:
            clique_opt = brute_force_densest(g, objective="clique")
            g_opt = clique_density(g, clique_opt).as_fraction()
            for eps in grid:
                if eps > Fraction(1, 2):
                    continue
                pred = corrupt_solution(g, clique_opt, eps, seed=corrupt_seed)
                grown = augment_clique(g, pred.nodes, eps)
                counters["clique density bound"].record(
                    clique_bound_holds(clique_density(g, grown).as_fraction(), g_opt, eps),
                    example("clique density bound", str(eps)),
                )

    directed_pairs = [(e, e) for e in grid if e < Fraction(1, 2)]
    if len(grid) >= 2 and grid[0] < Fraction(1, 2) and grid[-1] < Fraction(1, 2):
        directed_pairs.append((grid[0], grid[-1]))
    for trial_seq in directed_seeds.spawn(max(trials, 0)):
        rng = np.random.Generator(np.random.PCG64(trial_seq))
        n = int(rng.integers(2, min(max_n, BRUTE_FORCE_DIRECTED_MAX_NODES) + 1))
        p = float(rng.choice(EDGE_PROBABILITIES))
        graph_seed = int(rng.integers(0, 2**31))
        corrupt_seed = int(rng.integers(0, 2**31))
        g, graph_seed = _nonempty_gnp(n, p, graph_seed, directed=True)
        edges = serialize_edge_list(g)
        s1_opt, s2_opt = brute_force_directed_densest(g)
        e_opt = cross_edge_count(g, s1_opt, s2_opt)
        p_opt = len(s1_opt) * len(s2_opt)
        for eps1, eps2 in directed_pairs:
            pred1, pred2 = corrupt_directed_solution(
                g, s1_opt, s2_opt, eps1, eps2, seed=corrupt_seed
            )
            out1, out2 = augment_directed(g, pred1.nodes, pred2.nodes, eps1, eps2)
            ok = directed_bound_holds(
                cross_edge_count(g, out1, out2),
                len(out1) * len(out2),
                e_opt,
                p_opt,
                eps1,
                eps2,
            )
            fail = FailureExample(
                check="directed density bound",
                seed=graph_seed,
                eps=f"{eps1};{eps2}",
                edges=edges,
            )
            counters["directed density bound"].record(ok, fail)
            miss1 = [v for v in s1_opt.members if v not in pred1.nodes]
            miss2 = [v for v in s2_opt.members if v not in pred2.nodes]
            stray = (
                cross_edge_count(
                    g, NodeSet.from_iterable(miss1), NodeSet.from_iterable(miss2)
                )
                if miss1 and miss2
                else 0
            )
            counters["missing-pair arc share"].record(
                missing_pair_share_holds(stray, e_opt, eps1, eps2),
                FailureExample(
                    check="missing-pair arc share",
                    seed=graph_seed,
                    eps=f"{eps1};{eps2}",
                    edges=edges,
                ),
            )

    report = VerifyReport(trials=trials)
    report.checks = [c for c in counters.values() if c.passed or c.failed]
    return report
