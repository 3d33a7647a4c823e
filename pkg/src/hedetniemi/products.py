"""Tensor product, strong product with a clique, and the lifted coloring.

Product vertices use a row-major layout: ``(g, h)`` of ``G x H`` has linear
index ``g * |V(H)| + h`` and ``(g, i)`` of ``G [x] K_q`` (clique index ``i``
in ``1..q``) has index ``g * q + (i - 1)``.
"""

from __future__ import annotations

from typing import NamedTuple

from .chromatic import Coloring, is_proper
from .errors import InputError, PreconditionError, ResourceError
from .graph import Graph, bits

DEFAULT_VERTEX_GUARD = 10**6

LEFT = "left"
RIGHT = "right"


class ProductVertex(NamedTuple):
    left: int
    right: int

    def one_based(self) -> str:
        return f"({self.left + 1},{self.right + 1})"


def tensor_index(H: Graph, g: int, h: int) -> int:
    return g * H.n + h


def tensor_vertex(H: Graph, index: int) -> ProductVertex:
    return ProductVertex(*divmod(index, H.n))


def strong_index(q: int, g: int, i: int) -> int:
    """Linear index of ``(g, i)`` in ``G [x] K_q``; ``i`` is 1-based."""
    return g * q + (i - 1)


def strong_vertex(q: int, index: int) -> ProductVertex:
    """Decode a ``G [x] K_q`` index into ``(g, i)`` with ``i`` in ``1..q``."""
    g, r = divmod(index, q)
    return ProductVertex(g, r + 1)


def _check_budget(size: int, guard: int) -> None:
    if size > guard:
        raise ResourceError(f"product has {size} vertices, above the guard of {guard}")


def tensor_product(G: Graph, H: Graph, guard: int = DEFAULT_VERTEX_GUARD) -> Graph:
    """``G x H``: ``(g,h) ~ (g',h')`` iff ``{g,g'} in E(G)`` and ``{h,h'} in E(H)``.

    Loops count as edges ``{x, x}``, so a loop on both ``g`` and ``h`` gives a
    loop on ``(g, h)``.
    """
    _check_budget(G.n * H.n, guard)
    k = H.n
    rows = []
    for g in range(G.n):
        for h in range(k):
            row = 0
            hrow = H.adj[h]
            for g2 in bits(G.adj[g]):
                row |= hrow << (g2 * k)
            rows.append(row)
    loops = 0
    for i, row in enumerate(rows):
        if (row >> i) & 1:
            loops |= 1 << i
    return Graph._trusted(G.n * k, tuple(rows), loops)


def strong_product_kq(G: Graph, q: int, guard: int = DEFAULT_VERTEX_GUARD) -> Graph:
    """``G [x] K_q``: ``(u,i) ~ (v,j)`` iff ``{u,v} in E(G)`` or ``u = v`` and ``i != j``."""
    if G.has_loops:
        raise InputError("strong_product_kq expects a simple graph")
    if q < 1:
        raise InputError("q must be a positive integer")
    _check_budget(G.n * q, guard)
    block = (1 << q) - 1
    rows = []
    for g in range(G.n):
        base = 0
        for g2 in bits(G.adj[g]):
            base |= block << (g2 * q)
        base |= block << (g * q)
        for i in range(q):
            rows.append(base & ~(1 << (g * q + i)))
    return Graph._trusted(G.n * q, tuple(rows), 0)


def lift_coloring(G: Graph, psi: Coloring, H: Graph, side: str = LEFT) -> Coloring:
    """Lift a proper coloring of ``G`` to the tensor product with ``H``.

    With ``side=LEFT`` the product is ``G x H`` and ``(g, h)`` gets
    ``psi(g)``; with ``side=RIGHT`` the product is ``H x G`` and ``(h, g)``
    gets ``psi(g)``.
    """
    if not is_proper(G, psi):
        raise PreconditionError("lift_coloring needs a proper coloring of its factor")
    if side == LEFT:
        colors = [psi.colors[g] for g in range(G.n) for _ in range(H.n)]
    elif side == RIGHT:
        colors = [psi.colors[g] for _ in range(H.n) for g in range(G.n)]
    else:
        raise InputError(f"side must be {LEFT!r} or {RIGHT!r}")
    return Coloring(tuple(colors), psi.c)
