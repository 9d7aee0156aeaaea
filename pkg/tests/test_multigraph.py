from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphpoly.errors import GuardExceeded, InputError, ParseError
from graphpoly.multigraph import (
    Multigraph,
    bouquet,
    check_guard,
    complete,
    component_profile,
    cycle,
    from_edge_list,
    iter_cycle_unions,
    iter_subcoregraphs,
    mask_nullities,
    path,
    petersen,
)

from conftest import multigraphs, trees


def shape(g: Multigraph) -> tuple[int, list[tuple[int, int]]]:
    return g.encode()


class TestConstructors:
    def test_bouquet_zero(self):
        g = bouquet(0)
        assert (g.n_vertices, g.n_edges) == (1, 0)

    def test_complete_four(self):
        g = complete(4)
        assert (g.n_vertices, g.n_edges, g.nullity) == (4, 6, 3)

    def test_cycle_one_is_a_loop(self):
        g = cycle(1)
        assert g.n_vertices == 1 and g.n_edges == 1 and g.edges[0].is_loop

    def test_cycle_two_is_parallel_pair(self):
        g = cycle(2)
        assert g.pairs() == [(0, 1), (0, 1)]

    def test_petersen(self):
        g = petersen()
        assert g.regular_degree() == 3 and g.n_vertices == 10 and g.n_edges == 15

    def test_endpoint_out_of_range(self):
        with pytest.raises(InputError):
            Multigraph.from_pairs(2, [(0, 2)])

    def test_loop_counts_twice(self):
        assert bouquet(3).degrees() == [6]


class TestDeletion:
    def test_cycle_minus_edge_is_path(self):
        g = cycle(3).delete_edge(0)
        assert g.n_vertices == 3 and g.n_edges == 2 and g.is_forest()

    def test_bouquet_minus_loop(self):
        assert shape(bouquet(2).delete_edge(1)) == shape(bouquet(1))

    def test_k4_minus_edge(self):
        g = complete(4).delete_edge(3)
        assert (g.n_vertices, g.n_edges, g.nullity) == (4, 5, 2)

    def test_ids_stable(self):
        g = complete(4).delete_edge(2)
        assert g.edge_ids == (0, 1, 3, 4, 5)


class TestContraction:
    def test_triangle_to_digon(self):
        g = cycle(3).contract_edge(0)
        assert shape(g) == shape(cycle(2))

    def test_digon_to_loop(self):
        assert shape(cycle(2).contract_edge(0)) == shape(bouquet(1))

    def test_bridge_to_point(self):
        assert shape(path(2).contract_edge(0)) == shape(bouquet(0))

    def test_merges_into_smaller_index(self):
        g = Multigraph.from_pairs(4, [(1, 3), (3, 2), (0, 3)])
        h = g.contract_edge(0)
        assert h.n_vertices == 3
        assert [(e.id, e.u, e.v) for e in h.edges] == [(1, 1, 2), (2, 0, 1)]

    def test_loop_contraction_is_deletion(self):
        g = bouquet(2)
        assert shape(g.contract_edge(0)) == shape(g.delete_edge(0))


class TestCore:
    @given(trees())
    def test_tree_core_is_a_point(self, t):
        c = t.core()
        assert (c.n_vertices, c.n_edges) == (1, 0)

    def test_cycle_fixed(self):
        assert shape(cycle(5).core()) == shape(cycle(5))

    def test_pendant_path_clipped(self):
        g = Multigraph.from_pairs(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)])
        assert shape(g.core()) == shape(cycle(3))

    @settings(max_examples=60)
    @given(multigraphs())
    def test_idempotent_and_same_subcoregraphs(self, g):
        c = g.core()
        assert shape(c.core()) == shape(c)
        assert sum(1 for _ in iter_subcoregraphs(g)) == sum(1 for _ in iter_subcoregraphs(c))


class TestSubdivision:
    def test_triangle(self):
        g = cycle(3).subdivide(2)
        assert g.n_vertices == 6 and g.regular_degree() == 2 and g.is_connected()

    def test_loop_to_triangle(self):
        g = bouquet(1).subdivide(3)
        assert g.n_vertices == 3 and g.n_edges == 3 and g.regular_degree() == 2 and g.is_connected()

    def test_identity(self):
        g = complete(4)
        assert g.subdivide(1) is g

    @settings(max_examples=60)
    @given(multigraphs(), st.integers(1, 4))
    def test_counts(self, g, m):
        h = g.subdivide(m)
        assert h.n_edges == g.n_edges * m
        assert h.n_vertices == g.n_vertices + g.n_edges * (m - 1)
        assert h.n_edges - h.n_vertices == g.n_edges - g.n_vertices


class TestComponents:
    def test_empty_subset(self):
        prof = component_profile(complete(4), [])
        assert len(prof) == 4 and all(c.nullity == 0 for c in prof.components)

    def test_full_cycle(self):
        prof = component_profile(cycle(3))
        assert len(prof) == 1 and prof.components[0].nullity == 1

    def test_two_vertex_tree_empty(self):
        assert len(component_profile(path(2), [])) == 2

    @settings(max_examples=80)
    @given(multigraphs())
    def test_nullity_sum(self, g):
        prof = component_profile(g)
        assert sum(c.nullity for c in prof.components) == g.n_edges - g.n_vertices + g.k
        assert sum(len(c.vertices) for c in prof.components) == g.n_vertices
        assert sorted(mask_nullities(g, g.full_mask)) == sorted(c.nullity for c in prof.components)

    @settings(max_examples=80)
    @given(multigraphs(loops=False))
    def test_rank_drops_on_contraction(self, g):
        for e in g.non_loop_edges():
            assert g.contract_edge(e.id).rank == g.rank - 1
            d = g.delete_edge(e.id)
            if d.k == g.k:  # not a bridge
                assert d.nullity == g.nullity - 1
                assert g.contract_edge(e.id).nullity == g.nullity


class TestEnumerators:
    def test_bouquet_subcoregraphs(self):
        assert sum(1 for _ in iter_subcoregraphs(bouquet(4))) == 16

    def test_cycle_unions_k4(self):
        # empty, four triangles, three 4-cycles
        assert sum(1 for _ in iter_cycle_unions(complete(4))) == 8

    @settings(max_examples=40)
    @given(multigraphs())
    def test_subcoregraphs_bruteforce(self, g):
        want = {m for m in range(1 << g.n_edges) if 1 not in g.mask_degrees(m)}
        got = {m for m, _, _ in iter_subcoregraphs(g)}
        assert got == want

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            check_guard(petersen(), 10)
        with pytest.raises(GuardExceeded):
            next(iter_subcoregraphs(petersen(), max_edges=10))


class TestParser:
    def test_round_trip(self):
        g = Multigraph.from_pairs(3, [(0, 0), (0, 1), (1, 2), (1, 2)])
        assert shape(from_edge_list(g.to_edge_list())) == shape(g)

    def test_comments(self):
        g = from_edge_list("# triangle\n3 3\n0 1\n1 2  # side\n\n2 0\n")
        assert shape(g) == shape(cycle(3))

    @pytest.mark.parametrize("text, line", [
        ("2 1\n0 x\n", 2),
        ("2 1\n0 5\n", 2),
        ("2 1\n0 1\n1 0\n", 3),
        ("2 1 7\n", 1),
    ])
    def test_errors_carry_line(self, text, line):
        with pytest.raises(ParseError, match=f"line {line}"):
            from_edge_list(text)

    def test_missing_edges(self):
        with pytest.raises(ParseError):
            from_edge_list("3 2\n0 1\n")

    def test_empty(self):
        with pytest.raises(ParseError):
            from_edge_list("# nothing\n")
