"""Small named graphs used by tests, the verifier corpus and the CLI."""

from __future__ import annotations

from .errors import InputError
from .graph import Graph


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty(n: int) -> Graph:
    return Graph.from_edges(n, [])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def looped_vertex() -> Graph:
    return Graph.from_edges(1, [(0, 0)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def heawood() -> Graph:
    """Incidence graph of the Fano plane: 14 vertices, cubic, girth 6."""
    # LCF notation [5, -5]^7
    edges = [(i, (i + 1) % 14) for i in range(14)]
    for i in range(0, 14, 2):
        edges.append((i, (i + 5) % 14))
    return Graph.from_edges(14, edges)


NAMED = {
    "petersen": petersen,
    "heawood": heawood,
    "looped-vertex": looped_vertex,
}


def by_name(name: str) -> Graph:
    """Resolve names such as ``C5``, ``K4``, ``P3``, ``E2`` or ``petersen``."""
    key = name.strip().lower()
    if key in NAMED:
        return NAMED[key]()
    kinds = {"c": cycle, "k": complete, "p": path, "e": empty}
    if len(key) >= 2 and key[0] in kinds and key[1:].isdigit():
        return kinds[key[0]](int(key[1:]))
    raise InputError(f"unknown graph name {name!r}")
