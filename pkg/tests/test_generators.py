from __future__ import annotations

from collections import Counter

import pytest

from matchfab import analytic
from matchfab.errors import GenerationTooLarge
from matchfab.generators import (
    gen_fractal,
    gen_fractal_edge_replacement,
    gen_nonfractal,
    gen_nonfractal_edge_replacement,
    gen_nonfractal_oriented,
    gen_sierpinski_ext,
    generate,
    parse_orientation,
    to_orientation_text,
)
from matchfab.graph import complete_graph
from matchfab.stats import distance_stats


def test_fractal_g1_is_quadrangle():
    f = gen_fractal(1)
    assert (f.n, f.num_edges) == (4, 4)
    assert set(f.degrees()) == {2}
    hubs = f.hubs()
    assert not f.has_edge(hubs["v1"], hubs["v2"])
    assert not f.has_edge(hubs["v3"], hubs["v4"])


def test_fractal_g2_counts_and_degrees():
    f = gen_fractal(2)
    assert (f.n, f.num_edges) == (12, 16)
    assert f.degree_multiset() == (2,) * 8 + (4,) * 4


def test_fractal_g3_counts():
    f = gen_fractal(3)
    assert (f.n, f.num_edges) == (44, 64)


def test_nonfractal_g1_hub_layout():
    h = gen_nonfractal(1)
    hubs = h.hubs()
    assert not h.has_edge(hubs["v1"], hubs["v4"])
    assert not h.has_edge(hubs["v2"], hubs["v3"])
    assert h.has_edge(hubs["v1"], hubs["v2"])


def test_nonfractal_g2_matches_fractal_degrees():
    h = gen_nonfractal(2)
    assert (h.n, h.num_edges) == (12, 16)
    assert h.degree_multiset() == gen_fractal(2).degree_multiset()


def test_nonfractal_g3_counts():
    assert (gen_nonfractal(3).n, gen_nonfractal(3).num_edges) == (44, 64)


@pytest.mark.parametrize("family", ["fractal", "nonfractal"])
@pytest.mark.parametrize("g", range(1, 6))
def test_counts_and_degree_law(family, g):
    graph = generate(family, g)
    closed = analytic.counts(family, g)
    assert (graph.n, graph.num_edges) == (closed.n, closed.e)
    by_gen = Counter(m.gen_iteration for m in graph.meta)
    assert dict(by_gen) == closed.lv
    for v, m in enumerate(graph.meta):
        assert graph.degree(v) == closed.degree_of[m.gen_iteration]
    assert graph.is_connected() and graph.is_bipartite()


@pytest.mark.parametrize("g", range(1, 5))
def test_hubs_keep_their_mutual_relation(g):
    f, h = gen_fractal(g), gen_nonfractal(g)
    fh, hh = f.hubs(), h.hubs()
    assert not f.has_edge(fh["v1"], fh["v2"])
    assert not h.has_edge(hh["v1"], hh["v4"])
    assert f.degree(fh["v1"]) == 2**g == h.degree(hh["v1"])


def test_fractal_edge_replacement_g1_and_g2():
    assert gen_fractal_edge_replacement(1).degree_multiset() == (2, 2, 2, 2)
    f2 = gen_fractal_edge_replacement(2)
    deg = f2.degrees()
    assert f2.num_edges == 16
    assert all({deg[u], deg[v]} == {2, 4} for u, v in f2.edges())


def test_nonfractal_edge_replacement_g1():
    assert gen_nonfractal_edge_replacement(1).degree_multiset() == (2, 2, 2, 2)


@pytest.mark.parametrize("g", range(1, 4))
def test_constructions_agree(g):
    for a, b in [
        (gen_fractal(g), gen_fractal_edge_replacement(g)),
        (gen_nonfractal(g), gen_nonfractal_edge_replacement(g)),
    ]:
        assert a.degree_multiset() == b.degree_multiset()
        assert distance_stats(a).histogram == distance_stats(b).histogram


@pytest.mark.parametrize("g", range(1, 7))
def test_families_share_degree_sequence(g):
    assert gen_fractal(g).degree_multiset() == gen_nonfractal(g).degree_multiset()


def test_oriented_g1_arcs():
    og = gen_nonfractal_oriented(1)
    hubs = og.base.hubs()
    want = {(hubs[a], hubs[b]) for a, b in [("v1", "v2"), ("v1", "v3"), ("v4", "v2"), ("v3", "v4")]}
    assert set(og.arcs()) == want


def test_oriented_g2_copies_follow_base_pattern():
    og = gen_nonfractal_oriented(2)
    g = og.base
    assert len(og.arcs()) == 16
    assert g.same_structure(gen_nonfractal(2))
    # every copy of H_1 contributes an adjacent pair x3 -> x4 of degree-2 vertices
    copies = [(u, v) for u, v in og.arcs() if g.degree(u) == 2 and g.degree(v) == 2]
    assert len(copies) == 4
    for x3, x4 in copies:
        (x1,) = set(g.adj[x3]) - {x4}
        (x2,) = set(g.adj[x4]) - {x3}
        assert og.direction(x1, x2) == 1
        assert og.direction(x1, x3) == 1
        assert og.direction(x4, x2) == 1


def test_oriented_direction_queries():
    og = gen_nonfractal_oriented(1)
    hubs = og.base.hubs()
    v1, v2, v4 = hubs["v1"], hubs["v2"], hubs["v4"]
    assert og.direction(v1, v2) == 1
    assert og.direction(v2, v1) == -1
    assert og.direction(v1, v4) == 0


@pytest.mark.parametrize("g", [1, 2, 3])
def test_orientation_sidecar_roundtrip(g):
    og = gen_nonfractal_oriented(g)
    back = parse_orientation(to_orientation_text(og), og.base)
    assert back.forward == og.forward


def test_orientation_sidecar_rejects_non_edge():
    og = gen_nonfractal_oriented(1)
    hubs = og.base.hubs()
    text = to_orientation_text(og) + f"{hubs['v1']} {hubs['v4']}\n"
    with pytest.raises(ValueError):
        parse_orientation(text, og.base)


def test_sierpinski_small_generations():
    assert gen_sierpinski_ext(1).same_structure(complete_graph(4))
    s2 = gen_sierpinski_ext(2)
    assert (s2.n, s2.num_edges) == (12, 18) and set(s2.degrees()) == {3}
    s3 = gen_sierpinski_ext(3)
    assert (s3.n, s3.num_edges) == (36, 54) and s3.is_connected()


def test_generation_bounds(monkeypatch):
    with pytest.raises(ValueError):
        gen_fractal(0)
    with pytest.raises(GenerationTooLarge):
        gen_fractal(99)
    with pytest.raises(GenerationTooLarge):
        gen_nonfractal(3, max_g=2)
    monkeypatch.setenv("MATCHFAB_MAX_G", "2")
    with pytest.raises(GenerationTooLarge):
        gen_sierpinski_ext(3)


def test_generate_unknown_family():
    with pytest.raises(ValueError):
        generate("tree", 2)


def test_generation_is_deterministic():
    assert gen_nonfractal_oriented(3).forward == gen_nonfractal_oriented(3).forward
    assert gen_fractal(4).adj == gen_fractal(4).adj
