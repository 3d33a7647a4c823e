"""Exact proper colorings.

The decision engine is a DSATUR-ordered backtracking search: the vertex with
the most distinct neighbour colors is branched on next (ties by degree, then
lowest index), a greedy clique is pre-colored ``1..k`` to break color
symmetry, and a new color is only opened as ``max used + 1``. Colors are
always ``1..c``.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator

from .errors import InputError, PreconditionError, ResourceError, SearchTimeout
from .graph import Graph, bits

if TYPE_CHECKING:
    from .exponential import ExponentialContext

ENUMERATION_MAX_VERTICES = 12
ENUMERATION_MAX_COLORS = 4


@dataclass(frozen=True)
class Coloring:
    """Colors ``colors[v]`` in ``1..c`` for each vertex ``v``."""

    colors: tuple[int, ...]
    c: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(x) for x in self.colors))
        if self.c < 1:
            raise InputError("palette size must be positive")
        for v, x in enumerate(self.colors):
            if not 1 <= x <= self.c:
                raise InputError(f"vertex {v} has color {x} outside 1..{self.c}")

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def num_used(self) -> int:
        return len(set(self.colors))

    def color_class(self, b: int) -> list[int]:
        return [v for v, x in enumerate(self.colors) if x == b]

    def class_sizes(self) -> list[int]:
        sizes = [0] * (self.c + 1)
        for x in self.colors:
            sizes[x] += 1
        return sizes[1:]

    def relabel(self, perm: dict[int, int]) -> "Coloring":
        return Coloring(tuple(perm[x] for x in self.colors), self.c)


@dataclass(frozen=True)
class Budget:
    """Search limits; ``None`` means unlimited."""

    nodes: int | None = None
    time_ms: int | None = None


@dataclass
class ChromaticCertificate:
    value: int
    witness: Coloring
    clique: list[int] = field(default_factory=list)


class _Meter:
    def __init__(self, budget: Budget | None):
        budget = budget or Budget()
        self.node_limit = budget.nodes
        self.deadline = None if budget.time_ms is None else time.monotonic() + budget.time_ms / 1000
        self.nodes = 0

    def tick(self) -> bool:
        """Count one search node; return False once the budget is spent."""
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            return False
        if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            return False
        return True


def is_proper(G: Graph, psi: Coloring | tuple[int, ...] | list[int]) -> bool:
    """True iff no edge is monochromatic; a looped vertex always fails."""
    colors = psi.colors if isinstance(psi, Coloring) else psi
    if len(colors) != G.n:
        raise InputError(f"coloring has {len(colors)} entries for a graph on {G.n} vertices")
    if G.loops:
        return False
    classes: dict[int, int] = {}
    for v, x in enumerate(colors):
        classes[x] = classes.get(x, 0) | (1 << v)
    return not any(G.adj[v] & classes[x] for v, x in enumerate(colors))


def greedy_clique(G: Graph) -> list[int]:
    """A maximal clique found greedily from every start vertex; the largest wins."""
    G = G.without_loops()
    best: list[int] = []
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    for start in order:
        clique = [start]
        cand = G.adj[start]
        while cand:
            nxt = max(bits(cand), key=lambda w: ((G.adj[w] & cand).bit_count(), -w))
            clique.append(nxt)
            cand &= G.adj[nxt]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def dsatur_greedy(G: Graph) -> Coloring:
    """Plain DSATUR heuristic; an upper bound for the exact search."""
    if G.loops:
        raise PreconditionError("a looped graph has no proper coloring")
    color = [0] * G.n
    sat = [0] * G.n
    deg = [G.degree(v) for v in range(G.n)]
    used = 0
    for _ in range(G.n):
        v = max((u for u in range(G.n) if not color[u]), key=lambda u: (sat[u].bit_count(), deg[u], -u))
        x = 1
        while (sat[v] >> x) & 1:
            x += 1
        color[v] = x
        used = max(used, x)
        for w in bits(G.adj[v]):
            sat[w] |= 1 << x
    return Coloring(tuple(color), max(used, 1))


class _Search:
    def __init__(self, G: Graph, c: int, clique: list[int], meter: _Meter):
        self.G = G
        self.c = c
        self.meter = meter
        self.n = G.n
        self.nbrs = [G.neighbors(v) for v in range(G.n)]
        self.deg = [len(x) for x in self.nbrs]
        self.color = [0] * G.n
        self.count = [[0] * (c + 2) for _ in range(G.n)]
        self.sat = [0] * G.n
        self.clique = clique
        self.timed_out = False

    def _assign(self, v: int, x: int) -> bool:
        """Color ``v`` with ``x``; return False if a neighbour is left with no color."""
        self.color[v] = x
        ok = True
        full = self.c
        for w in self.nbrs[v]:
            cnt = self.count[w]
            cnt[x] += 1
            if cnt[x] == 1:
                self.sat[w] |= 1 << x
                if not self.color[w] and self.sat[w].bit_count() >= full:
                    ok = False
        return ok

    def _unassign(self, v: int, x: int) -> None:
        self.color[v] = 0
        for w in self.nbrs[v]:
            cnt = self.count[w]
            cnt[x] -= 1
            if cnt[x] == 0:
                self.sat[w] &= ~(1 << x)

    def _pick(self) -> int:
        best = -1
        key = None
        color, sat, deg = self.color, self.sat, self.deg
        for u in range(self.n):
            if not color[u]:
                k = (sat[u].bit_count(), deg[u])
                if key is None or k > key:
                    best, key = u, k
        return best

    def run(self) -> list[int] | None:
        if len(self.clique) > self.c:
            return None
        for i, v in enumerate(self.clique, start=1):
            if not self._assign(v, i):
                return None
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * self.n + 1000))
        if self._extend(len(self.clique), len(self.clique)):
            return list(self.color)
        return None

    def _extend(self, placed: int, used: int) -> bool:
        if placed == self.n:
            return True
        if not self.meter.tick():
            self.timed_out = True
            raise _Abort
        v = self._pick()
        top = min(used + 1, self.c)
        forbidden = self.sat[v]
        for x in range(1, top + 1):
            if (forbidden >> x) & 1:
                continue
            ok = self._assign(v, x)
            if ok and self._extend(placed + 1, max(used, x)):
                return True
            self._unassign(v, x)
        return False


class _Abort(Exception):
    pass


def find_proper_coloring(G: Graph, c: int, budget: Budget | None = None, *, _meter: _Meter | None = None) -> Coloring | None:
    """Return a proper ``c``-coloring of ``G`` or ``None`` if none exists.

    Raises :class:`SearchTimeout` when the budget runs out, which is never
    conflated with the ``None`` (UNSAT) answer.
    """
    if c < 1:
        raise InputError("c must be a positive integer")
    if G.loops:
        return None
    meter = _meter or _Meter(budget)
    clique = greedy_clique(G)
    search = _Search(G, c, clique, meter)
    try:
        colors = search.run()
    except _Abort:
        raise SearchTimeout(f"coloring search for c={c} exhausted its budget after {meter.nodes} nodes") from None
    if colors is None:
        return None
    return Coloring(tuple(colors), c)


def chromatic_number(G: Graph, budget: Budget | None = None) -> ChromaticCertificate:
    """Exact chromatic number with a witness coloring and a clique lower bound."""
    if G.loops:
        raise PreconditionError("a looped graph has no proper coloring")
    meter = _Meter(budget)
    clique = greedy_clique(G)
    lower = max(len(clique), 1)
    witness = dsatur_greedy(G)
    upper = witness.num_used()
    while upper > lower:
        try:
            found = find_proper_coloring(G, upper - 1, _meter=meter)
        except SearchTimeout:
            raise SearchTimeout(
                f"chromatic number search stopped with {lower} <= chi <= {upper}",
                lower=lower, upper=upper, witness=witness,
            ) from None
        if found is None:
            lower = upper
            break
        upper = found.num_used()
        witness = Coloring(found.colors, upper)
    return ChromaticCertificate(upper, Coloring(witness.colors, upper), clique if len(clique) == upper else [])


def all_proper_colorings(G: Graph, c: int) -> Iterator[Coloring]:
    """Every proper ``c``-coloring, in lexicographic order of color sequences.

    Gated to graphs with at most 12 vertices and ``c <= 4``.
    """
    if G.n > ENUMERATION_MAX_VERTICES or c > ENUMERATION_MAX_COLORS:
        raise ResourceError(
            f"exhaustive enumeration is limited to n <= {ENUMERATION_MAX_VERTICES} and c <= {ENUMERATION_MAX_COLORS}"
        )
    if G.loops:
        return
    colors = [0] * G.n

    def rec(v: int):
        if v == G.n:
            yield Coloring(tuple(colors), c)
            return
        lower = G.adj[v] & ((1 << v) - 1)
        taken = {colors[u] for u in bits(lower)}
        for x in range(1, c + 1):
            if x not in taken:
                colors[v] = x
                yield from rec(v + 1)
        colors[v] = 0

    yield from rec(0)


def make_suited(psi: Coloring, ctx: "ExponentialContext") -> Coloring:
    """Relabel a proper ``c``-coloring of ``E_c(Gamma)`` so constant ``i`` gets color ``i``."""
    from .exponential import exponential_graph

    if psi.c != ctx.c:
        raise PreconditionError(f"palette has {psi.c} colors, expected c={ctx.c}")
    if len(psi) != ctx.size:
        raise PreconditionError(f"coloring has {len(psi)} entries, E_c has {ctx.size} vertices")
    if not is_proper(exponential_graph(ctx), psi):
        raise PreconditionError("make_suited needs a proper coloring")
    consts = ctx.constant_indices()
    seen = [psi[idx] for idx in consts]
    if len(set(seen)) != ctx.c:
        raise PreconditionError("constant mappings do not receive distinct colors")
    perm = {old: i for i, old in enumerate(seen, start=1)}
    return psi.relabel(perm)


def suiting_permutation(psi: Coloring, ctx: "ExponentialContext") -> dict[int, int]:
    """The color permutation applied by :func:`make_suited` (old color to new)."""
    return {psi[idx]: i for i, idx in enumerate(ctx.constant_indices(), start=1)}
