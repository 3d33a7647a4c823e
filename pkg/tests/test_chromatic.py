import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hedetniemi import families
from hedetniemi.chromatic import (
    Budget,
    Coloring,
    all_proper_colorings,
    chromatic_number,
    find_proper_coloring,
    greedy_clique,
    is_proper,
    make_suited,
    suiting_permutation,
)
from hedetniemi.errors import InputError, PreconditionError, ResourceError, SearchTimeout
from hedetniemi.exponential import ExponentialContext, exponential_graph
from hedetniemi.graph import Graph, add_loops
from hedetniemi.products import strong_product_kq, tensor_product

from conftest import brute_chromatic, small_corpus


class TestIsProper:
    def test_alternating_hexagon(self):
        assert is_proper(families.cycle(6), Coloring((1, 2) * 3, 2))

    def test_triangle_clash(self):
        assert not is_proper(families.complete(3), Coloring((1, 1, 2), 2))

    def test_loop_always_fails(self):
        assert not is_proper(families.looped_vertex(), Coloring((1,), 1))

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            is_proper(families.cycle(5), Coloring((1, 2), 2))

    def test_colors_in_range(self):
        with pytest.raises(InputError):
            Coloring((0, 1), 2)


class TestSearch:
    def test_odd_cycle_two_colors(self):
        assert find_proper_coloring(families.cycle(5), 2) is None

    def test_odd_cycle_three_colors(self):
        col = find_proper_coloring(families.cycle(5), 3)
        assert col is not None and is_proper(families.cycle(5), col)

    def test_c5_k2_four_colors_unsat(self):
        assert find_proper_coloring(strong_product_kq(families.cycle(5), 2), 4) is None

    def test_looped_graph_unsat(self):
        assert find_proper_coloring(add_loops(families.complete(2)), 5) is None

    def test_timeout_is_distinct_from_unsat(self):
        G = strong_product_kq(families.cycle(7), 3)
        with pytest.raises(SearchTimeout):
            find_proper_coloring(G, 6, Budget(nodes=3))

    def test_deterministic(self):
        G = families.petersen()
        assert find_proper_coloring(G, 4) == find_proper_coloring(G, 4)

    def test_monotone_in_c(self, corpus):
        for G in corpus:
            k = chromatic_number(G).value
            for c in range(k, k + 3):
                assert find_proper_coloring(G, c) is not None
            if k > 1:
                assert find_proper_coloring(G, k - 1) is None


class TestChromaticNumber:
    def test_petersen(self):
        cert = chromatic_number(families.petersen())
        assert cert.value == 3 and is_proper(families.petersen(), cert.witness)

    def test_c5_k2(self):
        G = strong_product_kq(families.cycle(5), 2)
        cert = chromatic_number(G)
        assert cert.value == 5 and is_proper(G, cert.witness)
        assert find_proper_coloring(G, 4) is None

    def test_k2_times_k2(self):
        G = tensor_product(families.complete(2), families.complete(2))
        assert chromatic_number(G).value == brute_chromatic(G) == 2

    def test_clique_certificate(self):
        cert = chromatic_number(families.complete(5))
        assert cert.value == 5 and sorted(cert.clique) == [0, 1, 2, 3, 4]

    def test_rejects_loops(self):
        with pytest.raises(PreconditionError):
            chromatic_number(families.looped_vertex())

    def test_timeout_carries_bounds(self):
        G = strong_product_kq(families.cycle(7), 3)
        with pytest.raises(SearchTimeout) as info:
            chromatic_number(G, Budget(nodes=2))
        assert info.value.lower <= 7 <= info.value.upper

    def test_oracle_equivalence(self, corpus):
        for G in corpus:
            if G.n <= 8:
                cert = chromatic_number(G)
                assert is_proper(G, cert.witness)
                assert cert.witness.num_used() == cert.value
                assert cert.value == brute_chromatic(G), G

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 8), st.data())
    def test_random_graphs_against_brute_force(self, n, data):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        G = Graph.from_edges(n, edges)
        assert chromatic_number(G).value == brute_chromatic(G)


class TestEnumeration:
    def test_counts_match_brute_force(self):
        G = families.cycle(5)
        expected = sum(
            1 for colors in itertools.product(range(1, 4), repeat=5)
            if all(colors[i] != colors[(i + 1) % 5] for i in range(5))
        )
        assert len(list(all_proper_colorings(G, 3))) == expected == 30

    def test_gated(self):
        with pytest.raises(ResourceError):
            list(all_proper_colorings(families.cycle(13), 2))
        with pytest.raises(ResourceError):
            list(all_proper_colorings(families.cycle(5), 5))


class TestSuited:
    def test_already_suited(self):
        ctx = ExponentialContext(families.complete(2), 2)
        psi = Coloring((1, 1, 2, 2), 2)  # constants (1,1)->1 and (2,2)->2
        assert make_suited(psi, ctx) == psi
        assert suiting_permutation(psi, ctx) == {1: 1, 2: 2}

    def test_swapped_constants(self):
        ctx = ExponentialContext(families.complete(2), 2)
        psi = Coloring((2, 1, 1, 1), 2)
        assert is_proper(exponential_graph(ctx), psi)
        assert suiting_permutation(psi, ctx) == {2: 1, 1: 2}
        out = make_suited(psi, ctx)
        assert out.colors == (1, 2, 2, 2)

    def test_three_cycle_permutation(self):
        ctx = ExponentialContext(families.looped_vertex(), 3)
        psi = Coloring((2, 3, 1), 3)
        assert suiting_permutation(psi, ctx) == {2: 1, 3: 2, 1: 3}
        assert make_suited(psi, ctx).colors == (1, 2, 3)

    def test_preserves_properness_and_class_sizes(self):
        ctx = ExponentialContext(add_loops(families.complete(2)), 3)
        E = exponential_graph(ctx)
        psi = find_proper_coloring(E, 3)
        out = make_suited(psi, ctx)
        assert is_proper(E, out)
        assert sorted(out.class_sizes()) == sorted(psi.class_sizes())
        assert [out[i] for i in ctx.constant_indices()] == [1, 2, 3]

    def test_rejects_improper_or_wrong_palette(self):
        ctx = ExponentialContext(families.complete(2), 2)
        with pytest.raises(PreconditionError):
            make_suited(Coloring((1, 1, 1, 1), 2), ctx)
        with pytest.raises(PreconditionError):
            make_suited(Coloring((1, 1, 2, 3), 3), ctx)


def test_greedy_clique_is_clique():
    for G in small_corpus(count=10) + [families.petersen()]:
        K = greedy_clique(G)
        assert all(G.has_edge(a, b) for a, b in itertools.combinations(K, 2))
