"""Finite graphs with optional loops stored as bitset adjacency rows.

Vertices are ``0..n-1`` internally. Each row ``adj[v]`` is a Python int whose
bit ``u`` is set when ``{u, v}`` is an edge; a loop at ``v`` is bit ``v`` of
``adj[v]`` and is mirrored in the ``loops`` mask.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError

#: Distance between disconnected vertices and girth of a forest.
INFINITE = math.inf


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    loops: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise InputError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        loops = 0
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise InputError(f"row {v} references a vertex outside 0..{self.n - 1}")
            for u in bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise InputError(f"adjacency is not symmetric at ({u}, {v})")
            if (row >> v) & 1:
                loops |= 1 << v
        if loops != self.loops:
            raise InputError("loops mask disagrees with the adjacency diagonal")

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...], loops: int) -> "Graph":
        """Skip validation; for builders whose output is symmetric by construction."""
        G = object.__new__(cls)
        object.__setattr__(G, "n", n)
        object.__setattr__(G, "adj", adj)
        object.__setattr__(G, "loops", loops)
        return G

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from 0-based edges; ``(v, v)`` adds a loop."""
        if n < 1:
            raise InputError("a graph needs at least one vertex")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        loops = 0
        for v in range(n):
            if (rows[v] >> v) & 1:
                loops |= 1 << v
        return cls(n, tuple(rows), loops)

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InputError(f"vertex {v!r} out of range 0..{self.n - 1}")

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def has_loop(self, v: int) -> bool:
        return bool((self.loops >> v) & 1)

    @property
    def has_loops(self) -> bool:
        return self.loops != 0

    def neighbors(self, v: int) -> list[int]:
        """Open neighborhood of ``v`` (contains ``v`` only if it is looped)."""
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        """Number of non-loop neighbours of ``v``."""
        return (self.adj[v] & ~(1 << v)).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u <= v``; loops appear as ``(v, v)``."""
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> u):
                out.append((u, u + v))
        return out

    @property
    def m(self) -> int:
        """Edge count, loops included."""
        return (sum(row.bit_count() for row in self.adj) + self.loops.bit_count()) // 2

    def without_loops(self) -> "Graph":
        return Graph(self.n, tuple(row & ~(1 << v) for v, row in enumerate(self.adj)), 0)

    def induced(self, vertices: list[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph.from_edges(len(vertices), edges)

    def relabel(self, perm: list[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, loops={self.loops.bit_count()})"


def bfs_distances(G: Graph, source: int) -> list[float]:
    """Distances from ``source`` to every vertex (``INFINITE`` if unreachable)."""
    G.check_vertex(source)
    dist: list[float] = [INFINITE] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in bits(G.adj[u]):
            if dist[w] == INFINITE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def dist(G: Graph, u: int, v: int) -> float:
    """Shortest-path length between ``u`` and ``v``; loops are ignored."""
    G.check_vertex(u)
    G.check_vertex(v)
    return bfs_distances(G, u)[v]


def girth(G: Graph) -> float:
    """Length of a shortest cycle of a simple graph, ``INFINITE`` for forests.

    One BFS per root; a non-tree edge ``{x, y}`` met during the BFS from
    ``r`` closes a closed walk of length ``d(x) + d(y) + 1`` through ``r``,
    and the minimum over all roots is the girth.
    """
    if G.has_loops:
        raise InputError("girth is only defined here for simple graphs; the input has loops")
    best = INFINITE
    for root in range(G.n):
        depth = [-1] * G.n
        parent = [-1] * G.n
        depth[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * depth[x] + 1 >= best:
                break
            for y in bits(G.adj[x]):
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, depth[x] + depth[y] + 1)
    return best


def closed_neighborhood(G: Graph, v: int) -> int:
    """Closed neighborhood of ``v`` as a vertex bitset; always contains ``v``."""
    G.check_vertex(v)
    return G.adj[v] | (1 << v)


def add_loops(G: Graph) -> Graph:
    """The same graph with a loop at every vertex."""
    return Graph(G.n, tuple(row | (1 << v) for v, row in enumerate(G.adj)), (1 << G.n) - 1)


def vertex_set(mask: int) -> set[int]:
    return set(bits(mask))
