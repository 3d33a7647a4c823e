"""The exponential graph ``E_c(Gamma)``.

Vertices are all maps ``V(Gamma) -> {1..c}``, stored as tuples. Two distinct
maps ``phi`` and ``psi`` are adjacent iff ``phi(x) != psi(y)`` for every edge
``{x, y}`` of ``Gamma``, taken in both orientations; a loop at ``x`` demands
``phi(x) != psi(x)``.

A map's canonical index reads it as a base-``c`` number with vertex 0 as the
most significant digit, so index order equals lexicographic tuple order.

There are two ways in: :func:`exp_adjacent` answers single pairs without
building anything, and :func:`exponential_graph` materializes the whole graph
when ``c**n`` fits under the guard.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .chromatic import Coloring, is_proper
from .errors import HedetniemiError, InputError, PreconditionError, ResourceError
from .graph import Graph, add_loops, bits
from .products import DEFAULT_VERTEX_GUARD, tensor_product

Mapping = tuple[int, ...]

DEFAULT_EDGE_CHECK_GUARD = 10**8


@dataclass(frozen=True)
class ExponentialContext:
    gamma: Graph
    c: int
    guard: int = DEFAULT_VERTEX_GUARD
    check_guard: int = DEFAULT_EDGE_CHECK_GUARD
    arcs: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.c < 1:
            raise InputError("c must be a positive integer")
        arcs = []
        for x, y in self.gamma.edges():
            arcs.append((x, y))
            if x != y:
                arcs.append((y, x))
        object.__setattr__(self, "arcs", tuple(sorted(arcs)))

    @property
    def n(self) -> int:
        return self.gamma.n

    @cached_property
    def size(self) -> int:
        return self.c**self.n

    def check_mapping(self, phi: Mapping) -> None:
        if len(phi) != self.n:
            raise InputError(f"mapping has {len(phi)} values, Gamma has {self.n} vertices")
        for x in phi:
            if not 1 <= x <= self.c:
                raise InputError(f"mapping value {x} outside 1..{self.c}")

    def encode(self, phi: Mapping) -> int:
        self.check_mapping(phi)
        idx = 0
        for x in phi:
            idx = idx * self.c + (x - 1)
        return idx

    def decode(self, index: int) -> Mapping:
        if not 0 <= index < self.size:
            raise InputError(f"index {index} outside 0..{self.size - 1}")
        out = [0] * self.n
        for k in range(self.n - 1, -1, -1):
            index, r = divmod(index, self.c)
            out[k] = r + 1
        return tuple(out)

    def mappings(self):
        """All mappings in canonical index order."""
        return itertools.product(range(1, self.c + 1), repeat=self.n)

    def constant(self, i: int) -> Mapping:
        return (i,) * self.n

    def constant_indices(self) -> list[int]:
        return [self.encode(self.constant(i)) for i in range(1, self.c + 1)]


def exp_adjacent(ctx: ExponentialContext, phi: Mapping, psi: Mapping) -> bool:
    ctx.check_mapping(phi)
    ctx.check_mapping(psi)
    if phi == psi:
        return False
    for x, y in ctx.arcs:
        if phi[x] == psi[y]:
            return False
    return True


def adjacency_obstruction(ctx: ExponentialContext, phi: Mapping, psi: Mapping) -> tuple[int, int] | None:
    """First arc ``(x, y)`` of ``Gamma`` with ``phi(x) == psi(y)``, or ``None``."""
    for x, y in ctx.arcs:
        if phi[x] == psi[y]:
            return (x, y)
    return None


def _guard(ctx: ExponentialContext) -> None:
    if ctx.size > ctx.guard:
        raise ResourceError(
            f"E_{ctx.c} of a {ctx.n}-vertex graph has {ctx.size} vertices, above the guard of "
            f"{ctx.guard}; use exp_adjacent on named mappings instead"
        )
    checks = ctx.size * (ctx.size - 1) // 2
    if checks > ctx.check_guard:
        raise ResourceError(
            f"materializing E_{ctx.c} needs {checks} pair checks, above the guard of {ctx.check_guard}"
        )


def mapping_array(ctx: ExponentialContext) -> np.ndarray:
    """``(c**n, n)`` array of all mappings in index order."""
    _guard(ctx)
    if ctx.n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(ctx.mappings()), dtype=np.int64).reshape(ctx.size, ctx.n)


def exponential_graph(ctx: ExponentialContext) -> Graph:
    """Materialize ``E_c(Gamma)`` with vertex ``k`` being the mapping of index ``k``."""
    M = mapping_array(ctx)
    N = ctx.size
    rows = []
    for i in range(N):
        ok = np.ones(N, dtype=bool)
        for x, y in ctx.arcs:
            ok &= M[:, y] != M[i, x]
        ok[i] = False
        rows.append(int.from_bytes(np.packbits(ok, bitorder="little").tobytes(), "little"))
    return Graph._trusted(N, tuple(rows), 0)


def constant_mappings(ctx: ExponentialContext) -> list[Mapping]:
    return [ctx.constant(i) for i in range(1, ctx.c + 1)]


def check_clique(ctx: ExponentialContext, maps: list[Mapping]) -> tuple[int, int, tuple[int, int] | None] | None:
    """Return ``None`` if ``maps`` are pairwise adjacent, else the first bad pair.

    The bad pair is reported as ``(s, t, arc)`` with list positions ``s < t``
    and the offending arc of ``Gamma`` (``None`` when the two maps are equal).
    """
    for s in range(len(maps)):
        for t in range(s + 1, len(maps)):
            if not exp_adjacent(ctx, maps[s], maps[t]):
                return (s, t, adjacency_obstruction(ctx, maps[s], maps[t]))
    return None


def canonical_coloring(ctx: ExponentialContext) -> tuple[Graph, Coloring]:
    """The product ``Gamma x E_c(Gamma)`` and its coloring ``(h, psi) -> psi(h)``.

    Properness is checked before returning.
    """
    if ctx.n * ctx.size > ctx.guard:
        raise ResourceError(
            f"Gamma x E_c has {ctx.n * ctx.size} vertices, above the guard of {ctx.guard}"
        )
    E = exponential_graph(ctx)
    P = tensor_product(ctx.gamma, E, guard=ctx.guard)
    maps = list(ctx.mappings())
    colors = tuple(psi[h] for h in range(ctx.n) for psi in maps)
    coloring = Coloring(colors, ctx.c)
    if not is_proper(P, coloring):
        raise HedetniemiError("canonical coloring is not proper; adjacency rule is broken")
    return P, coloring


def random_neighbor(ctx: ExponentialContext, phi: Mapping, rng: random.Random) -> Mapping | None:
    """A uniformly random neighbour of ``phi`` in ``E_c(Gamma)``, or ``None`` if isolated.

    For each ``y`` the neighbour's value must avoid ``{phi(x) : x ~ y}``; the
    allowed values at different vertices are independent, so sampling each
    coordinate uniformly (rejecting ``phi`` itself) is uniform over neighbours.
    """
    forbidden = [set() for _ in range(ctx.n)]
    for x, y in ctx.arcs:
        forbidden[y].add(phi[x])
    allowed = [[a for a in range(1, ctx.c + 1) if a not in forbidden[y]] for y in range(ctx.n)]
    if any(not a for a in allowed):
        return None
    if all(len(a) == 1 for a in allowed) and tuple(a[0] for a in allowed) == tuple(phi):
        return None
    while True:
        psi = tuple(rng.choice(a) for a in allowed)
        if psi != tuple(phi):
            return psi


def sample_canonical_coloring(ctx: ExponentialContext, samples: int, seed: int) -> dict:
    """Check ``(h, psi) -> psi(h)`` on random adjacent pairs of ``Gamma x E_c(Gamma)``.

    A sample draws an arc ``(h, h')`` of ``Gamma`` and a mapping ``psi``
    uniformly, then a uniform neighbour ``psi'`` of ``psi`` via
    :func:`random_neighbor`; the pair ``((h, psi), (h', psi'))`` is adjacent by
    construction and must receive different colors.
    """
    rng = random.Random(seed)
    checked = 0
    violations = 0
    first = None
    if not ctx.arcs:
        return {"samples": 0, "violations": 0, "first_violation": None, "seed": seed}
    attempts = 0
    while checked < samples:
        attempts += 1
        if attempts > 20 * samples + 1000:
            break
        h, h2 = rng.choice(ctx.arcs)
        psi = tuple(rng.randint(1, ctx.c) for _ in range(ctx.n))
        psi2 = random_neighbor(ctx, psi, rng)
        if psi2 is None:
            continue
        checked += 1
        if psi[h] == psi2[h2]:
            violations += 1
            if first is None:
                first = {"h": h, "psi": list(psi), "h2": h2, "psi2": list(psi2)}
    return {"samples": checked, "violations": violations, "first_violation": first, "seed": seed}


def expand_clique_constant(phi: Mapping, q: int) -> Mapping:
    """``phi`` on ``V(G)`` as the map ``(g, i) -> phi(g)`` on ``G [x] K_q``."""
    return tuple(x for x in phi for _ in range(q))


def restrict_to_clique_constant(G: Graph, q: int, c: int, lam: Coloring,
                                guard: int = DEFAULT_VERTEX_GUARD,
                                check_guard: int = DEFAULT_EDGE_CHECK_GUARD) -> Coloring:
    """Restrict a suited proper coloring of ``E_c(G [x] K_q)`` to clique-constant maps.

    The result is indexed by ``E_c(Gamma_G)``, where ``Gamma_G`` is ``G`` with
    a loop at every vertex: ``Psi(phi) = Lambda(expand(phi))``.
    """
    from .products import strong_product_kq

    big = ExponentialContext(strong_product_kq(G, q, guard=guard), c, guard, check_guard)
    small = ExponentialContext(add_loops(G), c, guard, check_guard)
    if len(lam) != big.size or lam.c != c:
        raise PreconditionError(f"Lambda must color all {big.size} mappings with palette {c}")
    for i, idx in enumerate(big.constant_indices(), start=1):
        if lam[idx] != i:
            raise PreconditionError(f"Lambda is not suited: constant {i} has color {lam[idx]}")
    E = exponential_graph(big)
    for a in range(E.n):
        for b in bits(E.adj[a] >> (a + 1)):
            b += a + 1
            if lam[a] == lam[b]:
                raise PreconditionError(
                    f"Lambda is not proper: mappings {big.decode(a)} and {big.decode(b)} "
                    f"are adjacent and both colored {lam[a]}"
                )
    colors = [lam[big.encode(expand_clique_constant(phi, q))] for phi in small.mappings()]
    psi = Coloring(tuple(colors), c)
    if not is_proper(exponential_graph(small), psi):
        raise HedetniemiError("restriction of a proper coloring is improper; expansion is broken")
    return psi


__all__ = [
    "ExponentialContext",
    "Mapping",
    "adjacency_obstruction",
    "canonical_coloring",
    "check_clique",
    "constant_mappings",
    "exp_adjacent",
    "expand_clique_constant",
    "exponential_graph",
    "random_neighbor",
    "restrict_to_clique_constant",
    "sample_canonical_coloring",
]
