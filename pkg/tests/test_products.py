import itertools

import networkx as nx
import pytest

from hedetniemi import families
from hedetniemi.chromatic import Coloring, chromatic_number, is_proper
from hedetniemi.errors import InputError, PreconditionError, ResourceError
from hedetniemi.graph import Graph, add_loops, bits
from hedetniemi.products import (
    LEFT,
    RIGHT,
    ProductVertex,
    lift_coloring,
    strong_index,
    strong_product_kq,
    strong_vertex,
    tensor_index,
    tensor_product,
)

from conftest import brute_edges, small_corpus


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def brute_tensor_edges(G, H):
    out = set()
    for (g, h), (g2, h2) in itertools.product(itertools.product(range(G.n), range(H.n)), repeat=2):
        if G.has_edge(g, g2) and H.has_edge(h, h2):
            out.add(frozenset((g * H.n + h, g2 * H.n + h2)))
    return out


class TestTensor:
    def test_k2_squared_is_perfect_matching(self):
        K2 = families.complete(2)
        P = tensor_product(K2, K2)
        assert brute_tensor_edges(K2, K2) == brute_edges(P)
        assert P.n == 4 and P.m == 2
        assert all(P.degree(v) == 1 for v in range(4))

    def test_edgeless_factor(self):
        P = tensor_product(families.petersen(), families.empty(3))
        assert P.n == 30 and P.m == 0

    def test_c5_times_k2_is_c10(self):
        P = tensor_product(families.cycle(5), families.complete(2))
        assert nx.is_isomorphic(to_nx(P), to_nx(families.cycle(10)))

    @pytest.mark.parametrize("G", small_corpus(seed=3, count=6)[::2], ids=repr)
    def test_matches_definition(self, G):
        for H in [families.cycle(5), add_loops(families.path(3)), families.complete(3)]:
            assert brute_edges(tensor_product(G, H)) == brute_tensor_edges(G, H)

    def test_loops_on_both_sides_make_a_loop(self):
        L = add_loops(families.complete(1))
        P = tensor_product(L, add_loops(families.path(2)))
        assert P.has_loop(0) and P.has_loop(1)
        assert not tensor_product(L, families.path(2)).has_loops

    def test_commutative_under_coordinate_swap(self):
        graphs = [G for G in small_corpus(seed=5, count=8) if G.n <= 6]
        for G, H in itertools.product(graphs[:8], repeat=2):
            A = tensor_product(G, H)
            B = tensor_product(H, G)
            swap = [h * G.n + g for g in range(G.n) for h in range(H.n)]
            assert A.relabel(swap) == B

    def test_guard(self):
        with pytest.raises(ResourceError):
            tensor_product(families.complete(10), families.complete(10), guard=99)

    def test_layout(self):
        H = families.cycle(5)
        assert tensor_index(H, 2, 3) == 13
        assert ProductVertex(2, 3).one_based() == "(3,4)"


class TestStrong:
    def test_q1_is_identity(self):
        for G in small_corpus(count=5):
            assert strong_product_kq(G, 1) == G

    def test_k1_gives_kq(self):
        assert strong_product_kq(families.complete(1), 5) == families.complete(5)

    def test_c5_k2_counts(self):
        P = strong_product_kq(families.cycle(5), 2)
        # 5 cycle edges blown up to K_{2,2} plus one edge inside each of 5 cliques
        assert P.n == 10 and P.m == 5 * 4 + 5
        assert all(P.degree(v) == 5 for v in range(10))
        assert chromatic_number(P).value == 5

    def test_degree_identity(self):
        for G in small_corpus(count=8):
            for q in (1, 2, 3):
                P = strong_product_kq(G, q)
                for g in range(G.n):
                    for i in range(1, q + 1):
                        assert P.degree(strong_index(q, g, i)) == q * G.degree(g) + q - 1

    def test_cliques_and_contraction(self):
        G = families.petersen()
        q = 3
        P = strong_product_kq(G, q)
        for g in range(G.n):
            block = [strong_index(q, g, i) for i in range(1, q + 1)]
            assert all(P.has_edge(a, b) for a, b in itertools.combinations(block, 2))
        contracted = {
            frozenset((strong_vertex(q, a).left, strong_vertex(q, b).left))
            for a in range(P.n) for b in bits(P.adj[a])
            if strong_vertex(q, a).left != strong_vertex(q, b).left
        }
        assert contracted == {frozenset(e) for e in G.edges()}

    def test_edge_rule(self):
        G = families.cycle(6)
        q = 3
        P = strong_product_kq(G, q)
        for a, b in itertools.product(range(P.n), repeat=2):
            (u, i), (v, j) = strong_vertex(q, a), strong_vertex(q, b)
            assert P.has_edge(a, b) == (G.has_edge(u, v) or (u == v and i != j))

    def test_rejects_loops_and_bad_q(self):
        with pytest.raises(InputError):
            strong_product_kq(add_loops(families.complete(2)), 2)
        with pytest.raises(InputError):
            strong_product_kq(families.complete(2), 0)


class TestLift:
    def test_k3_left_lift(self):
        psi = Coloring((1, 2, 3), 3)
        for H in small_corpus(count=5):
            lifted = lift_coloring(families.complete(3), psi, H, LEFT)
            assert is_proper(tensor_product(families.complete(3), H), lifted)

    def test_c6_over_c5(self):
        psi = Coloring((1, 2) * 3, 2)
        lifted = lift_coloring(families.cycle(6), psi, families.cycle(5))
        assert lifted.c == 2 and is_proper(tensor_product(families.cycle(6), families.cycle(5)), lifted)

    def test_right_lift(self):
        psi = Coloring((1, 2) * 3, 2)
        lifted = lift_coloring(families.cycle(6), psi, families.cycle(5), RIGHT)
        assert is_proper(tensor_product(families.cycle(5), families.cycle(6)), lifted)

    def test_over_k1_is_relabeling(self):
        P = families.petersen()
        good = chromatic_number(P).witness
        assert lift_coloring(P, good, families.complete(1)).colors == good.colors

    def test_improper_input(self):
        with pytest.raises(PreconditionError):
            lift_coloring(families.complete(3), Coloring((1, 1, 2), 2), families.complete(2))


def test_builders_pass_full_validation():
    # the builders skip the symmetry check, so rerun it here
    for G in small_corpus(count=6):
        for P in (tensor_product(G, families.cycle(5)), tensor_product(add_loops(G), add_loops(G)),
                  strong_product_kq(G, 3)):
            assert Graph(P.n, P.adj, P.loops) == P
