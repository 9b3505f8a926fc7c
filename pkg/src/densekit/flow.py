"""Integer max-flow on residual networks (Dinic's algorithm).

Capacities are plain Python ints, so networks built from scaled rational
guesses never overflow. The solver mutates the network it is given: after
:func:`max_flow` returns, ``cap`` holds the final residual capacities,
which is exactly the state the min-cut side is read from.
"""

from __future__ import annotations

from collections import deque

from .errors import ContractViolation
from .graph import NodeSet


class FlowNetwork:
    """Residual network over ``n`` nodes with designated source and sink.

    Arcs are created in pairs by :meth:`add_arc`: a forward arc with the
    given capacity immediately followed by its reverse arc with capacity 0,
    so the partner of arc ``a`` is always ``a ^ 1``.
    """

    __slots__ = ("n", "source", "sink", "to", "cap", "adj")

    def __init__(self, n: int, source: int, sink: int):
        if not (0 <= source < n and 0 <= sink < n):
            raise ContractViolation("source/sink must be node indices")
        if source == sink:
            raise ContractViolation("source and sink must differ")
        self.n = n
        self.source = source
        self.sink = sink
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        """Add arc u->v with the given capacity; returns the forward arc id."""
        if capacity < 0:
            raise ContractViolation("arc capacity must be >= 0")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ContractViolation("arc endpoint out of range")
        aid = len(self.to)
        self.adj[u].append(aid)
        self.to.append(v)
        self.cap.append(capacity)
        self.adj[v].append(aid + 1)
        self.to.append(u)
        self.cap.append(0)
        return aid

    @property
    def arc_count(self) -> int:
        return len(self.to)

    def residual_source_side(self) -> NodeSet:
        """Nodes reachable from the source along positive residual capacity."""
        to, cap, adj = self.to, self.cap, self.adj
        seen = bytearray(self.n)
        seen[self.source] = 1
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for a in adj[u]:
                v = to[a]
                if cap[a] > 0 and not seen[v]:
                    seen[v] = 1
                    queue.append(v)
        return NodeSet.from_iterable(v for v in range(self.n) if seen[v])


def max_flow(net: FlowNetwork) -> tuple[int, NodeSet]:
    """Maximum source-to-sink flow value and the min cut's source side.

    The source side is the set of nodes reachable from the source in the
    final residual network (the source itself included). The network's
    capacities are consumed: they hold the residual afterwards.
    """
    to, cap, adj = net.to, net.cap, net.adj
    s, t = net.source, net.sink
    n = net.n
    total = 0
    while True:
        # BFS level graph
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            lu = level[u] + 1
            for a in adj[u]:
                v = to[a]
                if cap[a] > 0 and level[v] < 0:
                    level[v] = lu
                    queue.append(v)
        if level[t] < 0:
            return total, net.residual_source_side()
        # blocking flow: iterative DFS with a stack of arc ids
        it = [0] * n
        path: list[int] = []
        u = s
        while True:
            if u == t:
                bottleneck = min(cap[a] for a in path)
                total += bottleneck
                truncate = 0
                for i, a in enumerate(path):
                    cap[a] -= bottleneck
                    cap[a ^ 1] += bottleneck
                    if cap[a] == 0 and truncate == 0:
                        truncate = i + 1
                del path[truncate - 1:]
                u = to[path[-1]] if path else s
                continue
            arcs = adj[u]
            i = it[u]
            next_level = level[u] + 1
            found = -1
            while i < len(arcs):
                a = arcs[i]
                if cap[a] > 0 and level[to[a]] == next_level:
                    found = a
                    break
                i += 1
            it[u] = i
            if found >= 0:
                path.append(found)
                u = to[found]
            else:
                if u == s:
                    break
                level[u] = -1  # dead end; prune from this phase
                path.pop()
                u = to[path[-1]] if path else s
                it[u] += 1
