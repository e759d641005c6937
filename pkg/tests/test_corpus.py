from __future__ import annotations

import random

import pytest
from hypothesis import given

from conftest import graphs
from lcschur.corpus import (
    all_graphs,
    canonical_form,
    certificate,
    claw_free_graphs,
    connected_graphs,
    isomorphic_bruteforce,
    named_graphs,
    partitions,
    pineapple_shapes,
    random_graphs,
    spider_shapes,
    trees,
)
from lcschur.errors import TooLarge
from lcschur.graph import build_graph, cycle_graph, is_claw_free, is_connected, path_graph

# isomorphism-class counts of all graphs, connected graphs, claw-free graphs and
# free trees; the brute-force isomorphism test below backs the small cases
ALL = [1, 1, 2, 4, 11, 34, 156, 1044, 12346]
CONNECTED = [0, 1, 1, 2, 6, 21, 112, 853, 11117]
CLAW_FREE = [1, 1, 2, 4, 10, 26, 85, 302, 1285]
TREES = [0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


def relabel(g, perm):
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def test_graph_counts():
    assert [len(all_graphs(n)) for n in range(9)] == ALL
    assert [len(connected_graphs(n)) for n in range(9)] == CONNECTED


def test_claw_free_counts_and_filtering():
    assert [len(claw_free_graphs(n)) for n in range(9)] == CLAW_FREE
    for n in range(9):
        filtered = {certificate(g) for g in all_graphs(n) if is_claw_free(g)}
        assert filtered == {certificate(g) for g in claw_free_graphs(n)}


def test_tree_counts():
    assert [len(trees(n)) for n in range(13)] == TREES
    for n in range(1, 13):
        for t in trees(n):
            assert len(t.edges) == n - 1 and is_connected(t)


def test_small_classes_are_pairwise_non_isomorphic_by_brute_force():
    for n in range(6):
        reps = all_graphs(n)
        for i, g in enumerate(reps):
            for h in reps[i + 1:]:
                assert not isomorphic_bruteforce(g, h)


@given(graphs(max_n=7))
def test_certificate_is_an_isomorphism_invariant(g):
    perm = list(range(g.n))
    random.Random(g.n * 31 + len(g.edges)).shuffle(perm)
    h = relabel(g, perm)
    assert certificate(g) == certificate(h)
    assert canonical_form(g) == canonical_form(h)
    assert isomorphic_bruteforce(g, h)


@given(graphs(max_n=6), graphs(max_n=6))
def test_certificate_agrees_with_brute_force(g, h):
    assert (certificate(g) == certificate(h)) == isomorphic_bruteforce(g, h)


def test_bruteforce_guard():
    with pytest.raises(TooLarge):
        isomorphic_bruteforce(path_graph(11), path_graph(11))
    assert isomorphic_bruteforce(cycle_graph(10), cycle_graph(10))


def test_random_graphs_are_reproducible():
    a = random_graphs(30, 9, seed=1)
    b = random_graphs(30, 9, seed=1)
    assert a == b
    assert a != random_graphs(30, 9, seed=2)
    assert all(1 <= g.n <= 9 for g in a)


def test_partitions():
    counts = [sum(1 for _ in partitions(m)) for m in range(12)]
    assert counts == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56]
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_shapes():
    assert sum(1 for _ in spider_shapes(16)) == sum(sum(1 for _ in partitions(m)) for m in range(16))
    shapes = list(pineapple_shapes(6, 15))
    assert all(1 <= n <= 6 and n + sum(lam) <= 15 for n, lam in shapes)
    assert (6, (3, 2, 2, 1)) in shapes and (1, ()) in shapes


def test_named_graphs_are_distinct():
    named = named_graphs()
    certs = {certificate(g) for g in named.values()}
    assert len(certs) == len(named)
