from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, partitions
from lcschur.corpus import all_graphs, claw_free_graphs, connected_graphs, isomorphic_bruteforce
from lcschur.errors import LoopEdge, NotAPartition, NotConnected, OutOfRange, ParseError, ZeroClique
from lcschur.graph import (
    PineappleShape,
    SpiderShape,
    bipartition,
    build_graph,
    clan_graph,
    complete_graph,
    connected_components,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    empty_graph,
    find_claw,
    find_odd_cycle,
    graph_from_edgelist,
    graph_from_json,
    graph_to_edgelist,
    graph_to_json,
    is_claw_free,
    is_connected,
    make_pineapple,
    make_spider,
    parse_graph_text,
    path_graph,
    star_graph,
)


def has_triangle(g):
    return any(g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c) for a, b, c in combinations(range(g.n), 3))


def proper_two_colourings(g):
    return sum(1 for c in product((0, 1), repeat=g.n) if all(c[u] != c[v] for u, v in g.edges))


# --- construction -----------------------------------------------------------

def test_build_graph_examples():
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert p4 == path_graph(4)
    assert build_graph(1, []).n == 1 and build_graph(1, []).edges == ()
    claw = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert claw == star_graph(3)
    assert [claw.degree(v) for v in range(4)] == [3, 1, 1, 1]


def test_build_graph_normalises_edges():
    g = build_graph(3, [(2, 1), (1, 2), (0, 2)])
    assert g.edges == ((0, 2), (1, 2))


def test_build_graph_errors():
    with pytest.raises(OutOfRange):
        build_graph(2, [(0, 2)])
    with pytest.raises(OutOfRange):
        build_graph(2, [(-1, 0)])
    with pytest.raises(LoopEdge):
        build_graph(2, [(1, 1)])


def test_spider_examples():
    assert make_spider((1, 1, 1)) == star_graph(3)
    fig = make_spider((3, 2, 2, 1))
    assert fig.n == 9 and len(fig.edges) == 8
    assert is_connected(fig)
    assert fig.degree(0) == 4
    assert isomorphic_bruteforce(make_spider((2, 1)), build_graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert make_spider(()) == empty_graph(1)


def test_spider_layout_and_labels():
    shape = SpiderShape((3, 2, 2, 1))
    assert shape.legs == ((1, 2, 3), (4, 5), (6, 7), (8,))
    g = shape.graph
    for leg in shape.legs:
        assert g.has_edge(0, leg[0])
        assert all(g.has_edge(a, b) for a, b in zip(leg, leg[1:]))
    assert g.label(0) == "v0" and g.label(1) == "v1" and g.label(2) == "v1,2" and g.label(8) == "v4"


def test_spider_rejects_non_partitions():
    with pytest.raises(NotAPartition):
        make_spider((1, 2))
    with pytest.raises(NotAPartition):
        make_spider((2, 0))


def test_pineapple_examples():
    assert make_pineapple(1, (1, 1, 1)) == make_spider((1, 1, 1))
    assert make_pineapple(2, ()) == complete_graph(2)
    g = make_pineapple(6, (3, 2, 2, 1))
    assert g.n == 14
    shape = PineappleShape(6, (3, 2, 2, 1))
    assert shape.clique == (9, 10, 11, 12, 13)
    clique = (0,) + shape.clique
    assert all(g.has_edge(a, b) for a, b in combinations(clique, 2))
    assert len(g.edges) == 8 + 15
    assert g.label(0) == "u" and g.label(9) == "v1" and g.label(13) == "v5"
    assert g.degree(0) == 4 + 5


def test_pineapple_errors():
    with pytest.raises(ZeroClique):
        make_pineapple(0, (1,))
    with pytest.raises(NotAPartition):
        make_pineapple(3, (1, 2))


# --- clan graphs ------------------------------------------------------------

def test_clan_graph_examples():
    k2 = complete_graph(2)
    assert clan_graph(k2, (1, 1))[0] == k2
    g, blocks = clan_graph(k2, (2, 1))
    assert g == complete_graph(3) and blocks == (0, 0, 1)
    g, blocks = clan_graph(path_graph(3), (1, 0, 1))
    assert g == empty_graph(2) and blocks == (0, 2)


def test_clan_graph_identity_weighting_on_all_small_graphs():
    for n in range(9):
        for g in all_graphs(n):
            assert clan_graph(g, (1,) * n)[0] == g


@given(graphs(max_n=6), st.data())
def test_clan_graph_structure(g, data):
    alpha = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
    clan, blocks = clan_graph(g, alpha)
    assert clan.n == sum(alpha)
    for x in range(clan.n):
        for y in range(x + 1, clan.n):
            bx, by = blocks[x], blocks[y]
            assert clan.has_edge(x, y) == (bx == by or g.has_edge(bx, by))
    forced = any(a >= 3 for a in alpha) or any(
        alpha[u] >= 1 and alpha[v] >= 1 and alpha[u] + alpha[v] >= 3 for u, v in g.edges
    )
    if forced:
        assert has_triangle(clan)


def test_clan_graph_rejects_bad_maps():
    with pytest.raises(OutOfRange):
        clan_graph(complete_graph(2), (1,))
    with pytest.raises(OutOfRange):
        clan_graph(complete_graph(2), (1, -1))


# --- deletions and components -------------------------------------------------

def test_delete_vertices_examples():
    h, back = delete_vertices(path_graph(4), [0])
    assert h == path_graph(3) and back == (1, 2, 3)
    h, _ = delete_vertices(star_graph(3), [0, 1, 2, 3])
    assert h.n == 0
    h, _ = delete_vertices(make_spider((3, 2, 2, 1)), [0])
    comps = connected_components(h)
    assert sorted(c.n for c, _ in comps) == [1, 2, 2, 3]
    assert all(c == path_graph(c.n) for c, _ in comps)


def test_delete_vertices_out_of_range():
    with pytest.raises(OutOfRange):
        delete_vertices(path_graph(3), [3])


def test_connected_components_examples():
    comps = connected_components(disjoint_union(path_graph(3), complete_graph(2)))
    assert [c for c, _ in comps] == [path_graph(3), complete_graph(2)]
    assert [m for _, m in comps] == [(0, 1, 2), (3, 4)]
    assert [c for c, _ in connected_components(empty_graph(1))] == [empty_graph(1)]
    assert connected_components(empty_graph(0)) == []


@given(graphs(max_n=9))
def test_components_partition_the_vertices(g):
    comps = connected_components(g)
    seen = sorted(v for _, m in comps for v in m)
    assert seen == list(range(g.n))
    assert sum(len(c.edges) for c, _ in comps) == len(g.edges)
    assert [m[0] for _, m in comps] == sorted(m[0] for _, m in comps)


# --- bipartitions -------------------------------------------------------------

def test_bipartition_examples():
    assert bipartition(star_graph(3)).type == (3, 1)
    assert not bipartition(star_graph(3)).balanced
    assert bipartition(path_graph(4)).type == (2, 2)
    assert bipartition(complete_graph(3)) is None
    with pytest.raises(NotConnected):
        bipartition(empty_graph(2))


def test_bipartition_against_two_colouring_count():
    for n in range(1, 9):
        for g in connected_graphs(n):
            b = bipartition(g)
            colourings = proper_two_colourings(g)
            if b is None:
                assert colourings == 0
                cyc = find_odd_cycle(g)
                assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
                assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
            else:
                # a connected bipartite graph has exactly its two side swaps
                assert colourings == 2
                left, right = b.parts
                assert not any((u in left) == (v in left) for u, v in g.edges)
                assert len(left) + len(right) == n


def test_bipartition_two_colouring_count_on_ten_vertices():
    for g in (path_graph(10), cycle_graph(10), make_spider((3, 3, 3)), make_spider((4, 3, 2))):
        assert proper_two_colourings(g) == 2 and bipartition(g) is not None


# --- claws ----------------------------------------------------------------------

def test_claw_free_examples():
    assert is_claw_free(path_graph(5))
    assert not is_claw_free(star_graph(3))
    assert find_claw(star_graph(3)) == (0, 1, 2, 3)
    assert is_claw_free(cycle_graph(6))


def test_claw_witness_is_induced():
    for g in all_graphs(6):
        w = find_claw(g)
        if w is None:
            continue
        c, a, b, d = w
        assert g.has_edge(c, a) and g.has_edge(c, b) and g.has_edge(c, d)
        assert not (g.has_edge(a, b) or g.has_edge(a, d) or g.has_edge(b, d))


@given(partitions(max_total=10))
def test_spider_has_one_branch_vertex(lam):
    g = make_spider(lam)
    branch = [v for v in range(g.n) if g.degree(v) >= 3]
    if len(lam) >= 3:
        assert branch == [0]
    else:
        assert branch == []


def test_connected_claw_free_bipartite_graphs_are_paths_or_even_cycles():
    for n in range(1, 10):
        for g in claw_free_graphs(n):
            if not is_connected(g) or bipartition(g) is None:
                continue
            assert isomorphic_bruteforce(g, path_graph(n)) or (
                n % 2 == 0 and n >= 4 and isomorphic_bruteforce(g, cycle_graph(n))
            )


# --- serialisation --------------------------------------------------------------

@given(graphs(max_n=10))
def test_json_round_trip(g):
    text = graph_to_json(g)
    back = graph_from_json(text)
    assert back == g and graph_to_json(back) == text


@given(graphs(max_n=10))
def test_edgelist_round_trip(g):
    text = graph_to_edgelist(g)
    back = graph_from_edgelist(text)
    assert back == g and graph_to_edgelist(back) == text
    assert parse_graph_text(text) == g


def test_json_keeps_labels():
    g = make_spider((2, 1))
    back = graph_from_json(graph_to_json(g))
    assert back.labels == g.labels


@pytest.mark.parametrize("text", ["{not json", '{"n": 2}', "3 2\n0 1\n", "x y\n", ""])
def test_malformed_text_raises_parse_error(text):
    with pytest.raises(ParseError):
        parse_graph_text(text)
