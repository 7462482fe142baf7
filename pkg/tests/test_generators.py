import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcentered.errors import InputError, ResourceError
from pcentered.generators import (
    complete_graph,
    g_k_graph,
    g_k_graph_with_decomposition,
    g_k_size,
    grid_graph,
    lower_bound_graph,
    lower_bound_graph_with_decomposition,
    lower_bound_size,
    random_bounded_degree,
    random_maximal_outerplanar,
    random_simple_ktree,
    random_stacked_triangulation,
    star_graph,
    synth_product_instance,
    tree_of_fans,
    tree_of_fans_size,
)
from pcentered.graph import (
    Graph,
    connected_components,
    quotient,
    validate_decomposition,
    validate_layering,
    validate_partition_layered_width,
)
from pcentered.outerplanar import find_outerplanar_layout


class TestFans:
    def test_f22(self):
        f = tree_of_fans(2, 2)
        assert f.n == 7 == 1 + 2 + 4
        assert f.m == 9

    @pytest.mark.parametrize("w", [1, 2, 5])
    def test_depth_zero(self, w):
        assert tree_of_fans(w, 0) == Graph(1)

    @given(st.integers(1, 4), st.integers(0, 4))
    def test_counts_and_outerplanarity(self, w, d):
        f = tree_of_fans(w, d)
        assert f.n == tree_of_fans_size(w, d) == sum(w**j for j in range(d + 1))
        inner = tree_of_fans_size(w, d - 1) if d else 0
        assert f.m == (f.n - 1) + inner * (w - 1)
        assert find_outerplanar_layout(f) is not None

    def test_level_order_numbering(self):
        f = tree_of_fans(3, 2)
        assert f.adj[0] == (1, 2, 3)
        assert f.adj[2] == (0, 1, 3, 7, 8, 9)

    def test_size_cap(self):
        with pytest.raises(ResourceError, match="1111111"):
            tree_of_fans(10, 6, size_cap=1000)


class TestGk:
    def test_g2_is_fans(self):
        g, boundary = g_k_graph(2, 2, 1)
        assert g == complete_graph(3) and boundary == [1, 2]

    def test_g3_21_is_triangle(self):
        g, boundary = g_k_graph(3, 2, 1)
        assert g == complete_graph(3) and boundary == [1, 2]

    def test_g3_22_by_hand(self):
        # F(2,2) with a universal root, then a copy glued at each of the 4 leaves
        g, boundary = g_k_graph(3, 2, 2)
        assert g.n == 7 + 4 * 6
        assert len(boundary) == 16
        assert g.degree(0) == 6

    @pytest.mark.parametrize("k,w,d", [(2, 2, 3), (3, 2, 2), (3, 3, 2), (3, 2, 3), (4, 2, 2), (4, 3, 2)])
    def test_simple_decomposition_certificate(self, k, w, d):
        g, boundary, dec = g_k_graph_with_decomposition(k, w, d)
        assert (g.n, len(boundary)) == g_k_size(k, w, d)
        assert len(boundary) == w ** (d ** (k - 1))
        assert validate_decomposition(g, dec, require_simple=True, k=k)
        assert len(connected_components(g)) == 1

    @pytest.mark.parametrize("w,d", [(2, 2), (3, 2), (2, 3)])
    def test_g2_outerplanar(self, w, d):
        assert find_outerplanar_layout(g_k_graph(2, w, d)[0]) is not None

    def test_size_cap(self):
        with pytest.raises(ResourceError):
            g_k_graph(4, 4, 4, size_cap=10**5)


class TestLowerBound:
    @pytest.mark.parametrize("args", [(3, 0, 2, 5), (0, 4, 2, 5)])
    def test_base_cases(self, args):
        assert lower_bound_graph(*args) == Graph(1)

    def test_star(self):
        g = lower_bound_graph(1, 1, 2, 2)
        assert g == star_graph(3)

    def test_g_1_2_2_3(self):
        g = lower_bound_graph(1, 2, 2, 3)
        assert g.n == 51 == 1 + 10 * 5

    @pytest.mark.parametrize("args", [(1, 1, 2, 2), (1, 2, 2, 3), (2, 1, 2, 3), (2, 1, 2, 2), (1, 2, 2, 2), (1, 3, 2, 2)])
    def test_symbolic_size_and_width(self, args):
        g, dec = lower_bound_graph_with_decomposition(*args, size_cap=10**5)
        assert g.n == lower_bound_size(*args)
        assert validate_decomposition(g, dec, k=args[1])

    def test_cap_names_size(self):
        with pytest.raises(ResourceError, match="vertices"):
            lower_bound_graph(3, 3, 5, 20)

    def test_bad_parameters(self):
        with pytest.raises(InputError):
            lower_bound_graph(1, 1, 1, 2)


class TestRandomClasses:
    def test_mop_three(self):
        assert random_maximal_outerplanar(3, 9)[0] == complete_graph(3)

    @pytest.mark.parametrize("seed", range(100))
    def test_decompositions_valid_and_simple(self, seed):
        n = 4 + seed % 47
        for k in (2, 3):
            g, d = random_simple_ktree(k, n, seed)
            assert validate_decomposition(g, d, require_simple=True, k=k)
        g, d = random_maximal_outerplanar(n, seed)
        assert g.m == 2 * n - 3
        assert validate_decomposition(g, d, require_simple=True, k=2)
        g, d = random_stacked_triangulation(n, seed)
        assert validate_decomposition(g, d, require_simple=True, k=3)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 30])
    def test_stacked_edge_count(self, n):
        assert random_stacked_triangulation(n, 1)[0].m == 3 * n - 6

    def test_deterministic(self):
        assert random_simple_ktree(3, 40, 5) == random_simple_ktree(3, 40, 5)
        assert random_maximal_outerplanar(40, 5) == random_maximal_outerplanar(40, 5)
        assert random_bounded_degree(50, 3, 60, 5) == random_bounded_degree(50, 3, 60, 5)


class TestBoundedDegree:
    def test_cycles_and_paths(self):
        g = random_bounded_degree(5, 2, 5, 0)
        assert g.m == 5 and g.max_degree() <= 2

    def test_grid(self):
        g = grid_graph(3, 3)
        assert (g.n, g.m, g.max_degree()) == (9, 12, 4)

    def test_too_many_edges(self):
        with pytest.raises(InputError):
            random_bounded_degree(5, 2, 6, 0)

    def test_budget(self):
        with pytest.raises(ResourceError):
            random_bounded_degree(6, 3, 9, 0, proposal_budget=3)


class TestProduct:
    def test_trivial_product_is_h(self):
        h, _ = random_stacked_triangulation(12, 3)
        inst = synth_product_instance(h, 1, 1, 0)
        assert inst.graph == h
        assert inst.partition.class_of == tuple(range(h.n))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 15), st.integers(1, 8), st.integers(1, 3), st.integers(0, 10**6))
    def test_certified(self, qn, layers, blowup, seed):
        h, dh = random_stacked_triangulation(qn, seed)
        inst = synth_product_instance(h, layers, blowup, seed)
        g = inst.graph
        assert validate_layering(g, inst.layering)
        assert validate_partition_layered_width(g, inst.layering, inst.partition, blowup)
        q = quotient(g, inst.partition)
        assert q.edges <= h.edges
        assert validate_decomposition(q, dh, require_simple=True, k=3)

    def test_blowup_range(self):
        with pytest.raises(InputError):
            synth_product_instance(complete_graph(3), 2, 4, 0)
