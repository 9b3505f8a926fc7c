"""Graph representation, edge-list parsing, and the three density functionals.

Graphs are simple (no self-loops, no parallel edges) and immutable after
construction. Node tokens from input files are mapped to dense integer
indices in first-appearance order; adjacency is stored CSR-style in numpy
arrays so the solvers can work vectorized.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable

import numpy as np

from .errors import ContractViolation, EmptySetError, ParseError, UnknownNodeError

COMMENT_PREFIXES = ("#", "%")


def _build_csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays (indptr, indices) with each node's neighbor list sorted."""
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    indptr = np.cumsum(indptr)
    indptr.setflags(write=False)
    dst = np.ascontiguousarray(dst)
    dst.setflags(write=False)
    return indptr, dst


@dataclass(eq=False)
class Graph:
    """Immutable simple graph with dense indices and an external label map.

    ``indices[indptr[v]:indptr[v+1]]`` are the sorted neighbors of ``v``
    (out-neighbors when directed). Directed graphs additionally carry the
    reverse adjacency in ``in_indptr``/``in_indices``. Undirected graphs
    store each edge in both endpoint lists, so ``len(indices) == 2*m``.

    Treat instances as read-only; the numpy buffers are locked but the
    Python attributes are not enforced frozen.
    """

    directed: bool
    n: int
    labels: tuple[str, ...]
    indptr: np.ndarray
    indices: np.ndarray
    in_indptr: np.ndarray | None = None
    in_indices: np.ndarray | None = None
    self_loops_dropped: int = field(default=0, compare=False)
    duplicate_edges_dropped: int = field(default=0, compare=False)

    @classmethod
    def from_edges(
        cls,
        labels: Iterable[str],
        edges: Iterable[tuple[int, int]],
        directed: bool = False,
        self_loops_dropped: int = 0,
        duplicate_edges_dropped: int = 0,
    ) -> "Graph":
        """Build a graph from deduplicated index pairs (no self-loops).

        For undirected graphs each edge appears once, in either orientation.
        """
        labels = tuple(labels)
        n = len(labels)
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise ContractViolation("edge endpoint out of range")
        if directed:
            indptr, indices = _build_csr(n, pairs[:, 0], pairs[:, 1])
            in_indptr, in_indices = _build_csr(n, pairs[:, 1], pairs[:, 0])
            return cls(True, n, labels, indptr, indices, in_indptr, in_indices,
                       self_loops_dropped, duplicate_edges_dropped)
        src = np.concatenate([pairs[:, 0], pairs[:, 1]])
        dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
        indptr, indices = _build_csr(n, src, dst)
        return cls(False, n, labels, indptr, indices, None, None,
                   self_loops_dropped, duplicate_edges_dropped)

    @property
    def m(self) -> int:
        """Number of edges (arcs when directed), each counted once."""
        if self.directed:
            return int(len(self.indices))
        return int(len(self.indices)) // 2

    @functools.cached_property
    def label_index(self) -> dict[str, int]:
        return {tok: i for i, tok in enumerate(self.labels)}

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        if not self.directed:
            raise ContractViolation("in_neighbors is only defined for directed graphs")
        return self.in_indices[self.in_indptr[v]:self.in_indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        """Per-node degree (out-degree when directed)."""
        return np.diff(self.indptr)

    def in_degrees(self) -> np.ndarray:
        if not self.directed:
            raise ContractViolation("in_degrees is only defined for directed graphs")
        return np.diff(self.in_indptr)

    @functools.cached_property
    def _edge_src(self) -> np.ndarray:
        # source endpoint of every adjacency slot, aligned with self.indices
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    def edge_pairs(self) -> np.ndarray:
        """Canonical edge array: (min,max) pairs undirected, (src,dst) directed.

        Rows are sorted lexicographically.
        """
        src, dst = self._edge_src, self.indices
        if self.directed:
            return np.column_stack([src, dst])
        keep = src < dst
        return np.column_stack([src[keep], dst[keep]])

    def node_set(self, tokens: Iterable[str]) -> "NodeSet":
        """Translate external tokens to a NodeSet, rejecting unknown ones."""
        idx = self.label_index
        members = []
        for tok in tokens:
            if tok not in idx:
                raise UnknownNodeError(f"unknown node token: {tok!r}")
            members.append(idx[tok])
        return NodeSet.from_iterable(members)

    def tokens_of(self, s: "NodeSet") -> list[str]:
        return [self.labels[v] for v in s.members]

    def __eq__(self, other) -> bool:
        # label-structural equality: same tokens connected the same way
        if not isinstance(other, Graph):
            return NotImplemented
        if self.directed != other.directed or self.n != other.n:
            return False
        if set(self.labels) != set(other.labels):
            return False
        return self._token_edges() == other._token_edges()

    def _token_edges(self) -> set[tuple[str, str]]:
        out = set()
        for u, v in self.edge_pairs():
            a, b = self.labels[u], self.labels[v]
            out.add((a, b) if self.directed else tuple(sorted((a, b))))
        return out

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class NodeSet:
    """Sorted, deduplicated node indices; the universal currency of solutions."""

    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_member_set", frozenset(self.members))

    @classmethod
    def from_iterable(cls, nodes: Iterable[int]) -> "NodeSet":
        members = tuple(sorted({int(v) for v in nodes}))
        if members and members[0] < 0:
            raise ContractViolation("node indices must be non-negative")
        return cls(members)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "NodeSet":
        return cls(tuple(int(v) for v in np.flatnonzero(mask)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v) -> bool:
        return v in self._member_set

    def to_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def mask(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=bool)
        if self.members:
            out[self.to_array()] = True
        return out

    def union(self, other: "NodeSet") -> "NodeSet":
        return NodeSet.from_iterable(self.members + other.members)


def _check_set(g: Graph, s: NodeSet, name: str = "node set") -> None:
    if s.members and (s.members[0] < 0 or s.members[-1] >= g.n):
        raise ContractViolation(f"{name} contains indices outside [0, {g.n})")


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class Density:
    """Exact density value: ``numerator/denominator`` or ``numerator/sqrt(denominator)``.

    Comparisons cross-multiply in squared integer form, so argmax decisions
    never suffer float rounding. ``sizes`` records (|S1|, |S2|) for the
    directed form, whose denominator is their product under the square root.
    """

    numerator: int
    denominator: int
    sqrt_denominator: bool = False
    sizes: tuple[int, int] | None = None

    def __post_init__(self):
        if self.numerator < 0 or self.denominator <= 0:
            raise ContractViolation("density needs numerator >= 0 and denominator > 0")

    @classmethod
    def ratio(cls, num: int, den: int) -> "Density":
        return cls(int(num), int(den))

    @classmethod
    def directed_form(cls, edges: int, size1: int, size2: int) -> "Density":
        return cls(int(edges), int(size1) * int(size2), True, (int(size1), int(size2)))

    def _squared(self) -> tuple[int, int]:
        # value^2 as an exact integer ratio
        if self.sqrt_denominator:
            return self.numerator * self.numerator, self.denominator
        return self.numerator * self.numerator, self.denominator * self.denominator

    def __eq__(self, other) -> bool:
        if not isinstance(other, Density):
            return NotImplemented
        a, b = self._squared()
        c, d = other._squared()
        return a * d == c * b

    def __lt__(self, other) -> bool:
        if not isinstance(other, Density):
            return NotImplemented
        a, b = self._squared()
        c, d = other._squared()
        return a * d < c * b

    def __hash__(self):
        a, b = self._squared()
        f = Fraction(a, b)
        return hash((f.numerator, f.denominator))

    def as_fraction(self) -> Fraction:
        if self.sqrt_denominator:
            raise ContractViolation("directed densities are irrational; compare, don't convert")
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        if self.sqrt_denominator:
            return self.numerator / math.sqrt(self.denominator)
        return self.numerator / self.denominator

    def __str__(self) -> str:
        if self.sqrt_denominator:
            return f"{self.numerator}/sqrt({self.denominator})"
        return f"{self.numerator}/{self.denominator}"


def parse_edge_list(source: str | bytes | IO, directed: bool = False) -> Graph:
    """Parse whitespace-separated edge-list text into a Graph.

    Each non-blank, non-comment line must hold exactly two node tokens.
    Lines whose first non-blank character is ``#`` or ``%`` are comments.
    Tokens get dense indices in first-appearance order. Self-loops and
    duplicate edges are dropped, with counts recorded on the Graph.

    Args:
        source: text, UTF-8 bytes, or a readable stream.
        directed: parse lines as arcs instead of undirected edges.

    Raises:
        ParseError: a data line does not hold exactly two tokens.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, (bytes, bytearray)):
        source = source.decode("utf-8")
    index: dict[str, int] = {}
    labels: list[str] = []
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    self_loops = 0
    duplicates = 0
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 2 node tokens, got {len(tokens)}", line=lineno)
        if tokens[0] == tokens[1]:
            # dropped before registration so a loop-only token never
            # becomes an isolated node (keeps round trips lossless)
            self_loops += 1
            continue
        pair = []
        for tok in tokens:
            if tok not in index:
                index[tok] = len(labels)
                labels.append(tok)
            pair.append(index[tok])
        u, v = pair
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(labels, edges, directed,
                            self_loops_dropped=self_loops,
                            duplicate_edges_dropped=duplicates)


def load_graph(path, directed: bool = False) -> Graph:
    """Parse an edge-list file from disk."""
    with open(path, "rb") as fh:
        return parse_edge_list(fh, directed=directed)


def serialize_edge_list(g: Graph) -> str:
    """Canonical edge-list text: one ``token token`` line per edge.

    Undirected edges are sorted by (min index, max index); directed arcs by
    (src, dst). Isolated nodes cannot be represented in this format and are
    lost on a round trip.
    """
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edge_pairs()]
    return "\n".join(lines) + ("\n" if lines else "")


def load_node_set(path, g: Graph) -> NodeSet:
    """Read a node-set file (one token per line) against g's label map."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = [line.strip() for line in fh]
    return g.node_set(tok for tok in tokens if tok and not tok.startswith(COMMENT_PREFIXES))


def induced_edge_count(g: Graph, s: NodeSet) -> int:
    """|E(s)|: edges of the undirected graph with both endpoints in s."""
    if g.directed:
        raise ContractViolation("induced_edge_count needs an undirected graph")
    _check_set(g, s)
    if not s.members:
        return 0
    mask = s.mask(g.n)
    inside = mask[g._edge_src] & mask[g.indices]
    return int(np.count_nonzero(inside)) // 2


def cross_edge_count(g: Graph, s1: NodeSet, s2: NodeSet) -> int:
    """|E(s1, s2)|: arcs with source in s1 and target in s2 (sets may overlap)."""
    if not g.directed:
        raise ContractViolation("cross_edge_count needs a directed graph")
    _check_set(g, s1, "s1")
    _check_set(g, s2, "s2")
    if not s1.members or not s2.members:
        return 0
    m1 = s1.mask(g.n)
    m2 = s2.mask(g.n)
    return int(np.count_nonzero(m1[g._edge_src] & m2[g.indices]))


def density(g: Graph, s: NodeSet) -> Density:
    """Edge density |E(s)|/|s| of a non-empty node set."""
    if g.directed:
        raise ContractViolation("density is defined on undirected graphs")
    if not s.members:
        raise EmptySetError("density of the empty set is undefined")
    return Density.ratio(induced_edge_count(g, s), len(s))


def directed_density(g: Graph, s1: NodeSet, s2: NodeSet) -> Density:
    """Directed density |E(s1,s2)| / sqrt(|s1|*|s2|), kept in exact form."""
    if not g.directed:
        raise ContractViolation("directed_density needs a directed graph")
    if not s1.members or not s2.members:
        raise EmptySetError("directed density needs two non-empty sets")
    return Density.directed_form(cross_edge_count(g, s1, s2), len(s1), len(s2))


def clique_density(g: Graph, s: NodeSet) -> Density:
    """Clique-affinity score |E(s)|^2 / |s| of a non-empty node set."""
    if g.directed:
        raise ContractViolation("clique_density is defined on undirected graphs")
    if not s.members:
        raise EmptySetError("clique density of the empty set is undefined")
    e = induced_edge_count(g, s)
    return Density.ratio(e * e, len(s))
