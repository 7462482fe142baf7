import random
from collections import defaultdict

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcentered.compose import compose_genus, compose_planar
from pcentered.errors import InputError
from pcentered.generators import path_graph, random_stacked_triangulation, synth_product_instance
from pcentered.graph import ColorAssignment, Graph, Layering, VertexPartition, bfs_layering
from pcentered.stw import color_simple_treewidth
from pcentered.verify import is_p_centered


def instance(quotient_n, layers, blowup, seed):
    h, d = random_stacked_triangulation(quotient_n, seed)
    return h, d, synth_product_instance(h, layers, blowup, seed, edge_prob=0.4)


def test_p5_singletons_rainbow_quotient():
    g = path_graph(5)
    psi = ColorAssignment.from_flat(range(5))
    for p in (1, 2, 3, 6):
        col = compose_planar(g, bfs_layering(g), VertexPartition(tuple(range(5))), psi, p)
        assert is_p_centered(g, col, p)


def test_three_in_one_layer_get_ranks():
    g = Graph(3)
    col = compose_planar(g, Layering((0, 0, 0)), VertexPartition((0, 0, 0)), ColorAssignment.from_flat([0]), 1)
    assert [c[2] for c in col.colors] == [0, 1, 2]


def test_layered_width_four_rejected():
    g = Graph(4)
    with pytest.raises(InputError, match="class 0 has 4 vertices in layer 0"):
        compose_planar(g, Layering((0,) * 4), VertexPartition((0,) * 4), ColorAssignment.from_flat([0]), 1)


def test_bad_layering_rejected():
    with pytest.raises(InputError):
        compose_planar(
            path_graph(2), Layering((0, 2)), VertexPartition((0, 1)), ColorAssignment.from_flat([0, 1]), 1
        )


def test_verify_quotient_flag():
    g = path_graph(4)
    bad = ColorAssignment.from_flat([0, 1, 0, 1])
    lay = Layering((0, 0, 0, 0))
    part = VertexPartition((0, 1, 2, 3))
    compose_planar(g, lay, part, bad, 2)
    with pytest.raises(InputError):
        compose_planar(g, lay, part, bad, 2, verify_psi=True)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_synthetic_instance_end_to_end(p):
    h, d, inst = instance(15, 6, 3, p)
    psi = color_simple_treewidth(h, d, p)
    col = compose_planar(inst.graph, inst.layering, inst.partition, psi, p)
    assert col.palette_size == 3 * (p + 1) * psi.palette_size
    assert is_p_centered(inst.graph, col, p)


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 12), st.integers(1, 8), st.integers(1, 3), st.integers(0, 10**6), st.integers(1, 4))
def test_shared_colours_need_same_class_and_distant_layers(qn, layers, blowup, seed, p):
    h, _ = random_stacked_triangulation(qn, seed)
    inst = synth_product_instance(h, layers, blowup, seed)
    psi = ColorAssignment.from_flat(range(h.n))  # injective on classes
    col = compose_planar(inst.graph, inst.layering, inst.partition, psi, p)
    by_colour = defaultdict(list)
    for v, c in enumerate(col.colors):
        by_colour[c].append(v)
    lay, cls = inst.layering.layer_of, inst.partition.class_of
    for vs in by_colour.values():
        for a in vs:
            for b in vs:
                if a < b:
                    assert cls[a] == cls[b]
                    gap = abs(lay[a] - lay[b])
                    assert gap >= p + 1 and gap % (p + 1) == 0


def genus_instance(seed, p, apex_layers):
    h, d, inst = instance(10, 5, 2, seed)
    g0 = inst.graph
    phi = compose_planar(g0, inst.layering, inst.partition, color_simple_treewidth(h, d, p), p)
    rng = random.Random(seed)
    n0 = g0.n
    lay0 = list(inst.layering.layer_of)
    edges = list(g0.edges)
    z = []
    for i in apex_layers:
        a = n0 + len(z)
        z.append(a)
        near = [v for v in range(n0) if abs(lay0[v] - i) <= 1]
        edges += [(v, a) for v in near if rng.random() < 0.7]
    g = Graph(n0 + len(z), edges)
    layering = Layering(tuple(lay0 + list(apex_layers)))
    return g, layering, z, g0, inst.layering, phi


@pytest.mark.parametrize("p", [1, 2])
def test_planar_plus_two_apices(p):
    g, lay, z, gplus, wl, phi = genus_instance(3, p, [2, 2])
    col = compose_genus(g, lay, z, gplus, wl, phi, p, genus=1)
    assert col.palette_size == 2 * (p + 1) + phi.palette_size
    assert is_p_centered(g, col, p)
    assert sorted(col.flat()[v] for v in z) == [2 * (2 % (p + 1)), 2 * (2 % (p + 1)) + 1]


def test_empty_z_is_offset_copy():
    g, lay, _, gplus, wl, phi = genus_instance(1, 2, [])
    col = compose_genus(g, lay, [], gplus, wl, phi, 2, genus=1)
    assert col.flat() == [6 + x for x in phi.flat()]


def test_too_many_z_in_one_layer():
    g, lay, z, gplus, wl, phi = genus_instance(2, 1, [1, 1, 1])
    with pytest.raises(InputError, match="more than 2"):
        compose_genus(g, lay, z, gplus, wl, phi, 1, genus=1)


def test_layer_disagreement_rejected():
    g, lay, z, gplus, wl, phi = genus_instance(2, 1, [1])
    shifted = Layering(tuple(x + 1 for x in wl.layer_of))
    with pytest.raises(InputError, match="different layers"):
        compose_genus(g, lay, z, gplus, shifted, phi, 1, genus=1)


def test_supergraph_must_contain_g_minus_z():
    g, lay, z, gplus, wl, phi = genus_instance(2, 1, [1])
    smaller = Graph(gplus.n, list(gplus.sorted_edges())[1:])
    with pytest.raises(InputError, match="missing from the supergraph"):
        compose_genus(g, lay, z, smaller, wl, phi, 1, genus=1)
