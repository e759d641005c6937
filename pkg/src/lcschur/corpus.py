"""Graph corpora: exhaustive isomorphism classes, claw-free graphs, trees,
seeded random graphs and spider/pineapple shapes."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterator

import networkx as nx
import pynauty

from .errors import TooLarge
from .graph import (
    Graph,
    build_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_connected,
    make_pineapple,
    make_spider,
    path_graph,
    star_graph,
)


def _nauty(g: Graph) -> pynauty.Graph:
    return pynauty.Graph(g.n, adjacency_dict={v: list(nb) for v, nb in enumerate(g.neighbors) if nb})


def certificate(g: Graph) -> bytes:
    """Isomorphism-invariant fingerprint: equal iff the graphs are isomorphic."""
    if g.n == 0:
        return b""
    return bytes([g.n]) + pynauty.certificate(_nauty(g))


def canonical_form(g: Graph) -> Graph:
    if g.n == 0:
        return g
    lab = pynauty.canon_label(_nauty(g))
    pos = {v: i for i, v in enumerate(lab)}
    return build_graph(g.n, [(pos[u], pos[v]) for u, v in g.edges])


def _extend(graphs: tuple[Graph, ...], keep: Callable[[Graph, int], bool] | None) -> tuple[Graph, ...]:
    """All one-vertex extensions of ``graphs`` up to isomorphism."""
    seen: dict[bytes, Graph] = {}
    for g in graphs:
        n = g.n
        for nb in range(1 << n):
            edges = list(g.edges) + [(v, n) for v in range(n) if nb >> v & 1]
            h = build_graph(n + 1, edges)
            if keep is not None and not keep(h, n):
                continue
            cert = certificate(h)
            if cert not in seen:
                seen[cert] = h
    out = [canonical_form(h) for h in seen.values()]
    out.sort(key=lambda h: (len(h.edges), h.edges))
    return tuple(out)


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One canonical representative of every isomorphism class on n vertices."""
    if n == 0:
        return (empty_graph(0),)
    return _extend(all_graphs(n - 1), None)


def connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in all_graphs(n) if n > 0 and is_connected(g))


def _no_claw_at(h: Graph, new: int) -> bool:
    """True unless ``new`` lies in an induced K_{1,3} (as centre or as leaf)."""
    adj = h.adj
    nbrs = h.neighbors

    def claw_centred(c: int, forced: int | None) -> bool:
        nb = [w for w in nbrs[c] if w != forced]
        if forced is None:
            for i, a in enumerate(nb):
                for j in range(i + 1, len(nb)):
                    b = nb[j]
                    if adj[a] >> b & 1:
                        continue
                    for d in nb[j + 1:]:
                        if not (adj[a] >> d & 1 or adj[b] >> d & 1):
                            return True
            return False
        for i, a in enumerate(nb):
            if adj[forced] >> a & 1:
                continue
            for b in nb[i + 1:]:
                if not (adj[forced] >> b & 1 or adj[a] >> b & 1):
                    return True
        return False

    if claw_centred(new, None):
        return False
    return not any(claw_centred(c, new) for c in nbrs[new])


@lru_cache(maxsize=None)
def claw_free_graphs(n: int) -> tuple[Graph, ...]:
    """Claw-free graphs on n vertices up to isomorphism.

    Claw-freeness is inherited by induced subgraphs, so extending every
    claw-free graph on n-1 vertices by one vertex reaches all of them.
    """
    if n == 0:
        return (empty_graph(0),)
    return _extend(claw_free_graphs(n - 1), _no_claw_at)


def trees(n: int) -> tuple[Graph, ...]:
    """Free (unlabelled) trees on n vertices."""
    if n <= 0:
        return ()
    if n <= 2:
        return (path_graph(n),)
    out = [canonical_form(build_graph(n, t.edges())) for t in nx.nonisomorphic_trees(n)]
    out.sort(key=lambda h: h.edges)
    return tuple(out)


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_graphs(count: int, max_n: int, seed: int, min_n: int = 1, p: float = 0.5) -> list[Graph]:
    """``count`` graphs G(n, p) with n uniform in [min_n, max_n], reproducible from ``seed``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        out.append(random_graph(n, rng, p))
    return out


def partitions(m: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of m as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def spider_shapes(max_vertices: int) -> Iterator[tuple[int, ...]]:
    """Every leg-length partition lam with 1 + |lam| <= max_vertices."""
    for m in range(max_vertices):
        yield from partitions(m)


def pineapple_shapes(max_clique: int, max_vertices: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    for n in range(1, max_clique + 1):
        for m in range(max_vertices - n + 1):
            for lam in partitions(m):
                yield n, lam


def named_graphs() -> dict[str, Graph]:
    """Small hand-picked graphs used across tests and the CLI."""
    return {
        "K1": empty_graph(1),
        "E2": empty_graph(2),
        "K2": complete_graph(2),
        "P3": path_graph(3),
        "K3": complete_graph(3),
        "P4": path_graph(4),
        "C4": cycle_graph(4),
        "claw": star_graph(3),
        "K4": complete_graph(4),
        "P5": path_graph(5),
        "C5": cycle_graph(5),
        "K1,4": star_graph(4),
        "bull": build_graph(5, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]),
        "K2,3": build_graph(5, [(u, v) for u in range(2) for v in range(2, 5)]),
        "P3+K2": disjoint_union(path_graph(3), complete_graph(2)),
        "C6": cycle_graph(6),
        "P6": path_graph(6),
        "S(2,2,1)": make_spider((2, 2, 1)),
        "S(2,1,1)": make_spider((2, 1, 1)),
        "K3,3": build_graph(6, [(u, v) for u in range(3) for v in range(3, 6)]),
        "Pi(3,(1,1))": make_pineapple(3, (1, 1)),
        "P7": path_graph(7),
        "C7": cycle_graph(7),
        "S(2,2,2)": make_spider((2, 2, 2)),
        "S(3,2,1)": make_spider((3, 2, 1)),
        "Pi(4,(1,1,1))": make_pineapple(4, (1, 1, 1)),
        "P8": path_graph(8),
        "C8": cycle_graph(8),
        "S(3,2,2)": make_spider((3, 2, 2)),
        "S(1,1,1,1,1,1,1)": make_spider((1,) * 7),
        "K4+K4": disjoint_union(complete_graph(4), complete_graph(4)),
        "cube": build_graph(8, [(u, v) for u in range(8) for v in range(u + 1, 8) if bin(u ^ v).count("1") == 1]),
    }


def isomorphic_bruteforce(g: Graph, h: Graph, limit: int = 10) -> bool:
    """Isomorphism by trying every bijection; independent of nauty, for tests."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    if g.n > limit:
        raise TooLarge(f"brute-force isomorphism on {g.n} vertices exceeds the guard of {limit}")
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    target = set(h.edges)
    for perm in permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in g.edges):
            return True
    return False
