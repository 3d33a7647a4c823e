import itertools
import random

import pytest

from hedetniemi import families
from hedetniemi.graph import Graph

CRITERIA: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    CRITERIA[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


# ---------------------------------------------------------------------------
# brute-force oracles, deliberately naive and independent of the package code

def brute_edges(G: Graph) -> set[frozenset]:
    return {frozenset((u, v)) for u in range(G.n) for v in range(G.n) if G.has_edge(u, v)}


def brute_chromatic(G: Graph) -> int:
    """Smallest k admitting a proper coloring, by trying all k**n assignments."""
    edges = [(u, v) for u in range(G.n) for v in range(u, G.n) if G.has_edge(u, v)]
    for k in range(1, G.n + 1):
        for colors in itertools.product(range(k), repeat=G.n):
            if all(colors[u] != colors[v] for u, v in edges):
                return k
    raise AssertionError("unreachable for loop-free graphs")


def brute_girth(G: Graph) -> float:
    """Shortest cycle via deleting each edge and finding the shortest u-v path."""
    from collections import deque

    best = float("inf")
    for u, v in G.edges():
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in range(G.n):
                if G.has_edge(x, y) and {x, y} != {u, v} and y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def brute_exp_adjacent(gamma: Graph, phi, psi) -> bool:
    if phi == psi:
        return False
    for x in range(gamma.n):
        for y in range(gamma.n):
            if gamma.has_edge(x, y) and phi[x] == psi[y]:
                return False
    return True


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def small_corpus(seed: int = 7, count: int = 20) -> list[Graph]:
    """Named graphs on <= 7 vertices plus seeded random ones."""
    named = [
        families.complete(1), families.complete(2), families.complete(3), families.complete(4),
        families.path(3), families.path(4), families.cycle(4), families.cycle(5),
        families.cycle(6), families.cycle(7), families.empty(3),
        Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 4)]),
    ]
    rng = random.Random(seed)
    extra = [random_graph(rng.randint(2, 7), rng.choice([0.3, 0.5, 0.7]), rng) for _ in range(count)]
    return named + extra


@pytest.fixture(scope="session")
def corpus() -> list[Graph]:
    return small_corpus()
