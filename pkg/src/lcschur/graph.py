"""Finite simple graphs, the spider and pineapple families, and structural predicates.

Graphs are immutable values on the vertex set ``{0, ..., n-1}``.  Every
operation that removes or expands vertices returns a new graph together with
a map from new vertex indices back to the old ones.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    LoopEdge,
    NotAPartition,
    NotConnected,
    OutOfRange,
    ParseError,
    ZeroClique,
)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    # vertex -> display name; structural equality ignores it
    labels: tuple[tuple[int, str], ...] | None = field(default=None, compare=False)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhoods as bitmasks."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
            out[v].append(u)
        return tuple(tuple(sorted(nb)) for nb in out)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    @property
    def key(self) -> tuple[int, tuple[tuple[int, int], ...]]:
        return (self.n, self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def label(self, v: int) -> str:
        if self.labels:
            for w, name in self.labels:
                if w == v:
                    return name
        return str(v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def build_graph(n: int, edges: Iterable[Sequence[int]], labels: Mapping[int, str] | None = None) -> Graph:
    if n < 0:
        raise OutOfRange(f"vertex count must be nonnegative, got {n}")
    norm = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        norm.add((u, v) if u < v else (v, u))
    lab = None
    if labels:
        for v in labels:
            if not 0 <= int(v) < n:
                raise OutOfRange(f"label for missing vertex {v}")
        lab = tuple(sorted((int(v), str(s)) for v, s in labels.items()))
    return Graph(n, tuple(sorted(norm)), lab)


def _from_masks(adj: Sequence[int]) -> Graph:
    n = len(adj)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1]
    return Graph(n, tuple(edges))


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise OutOfRange("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return build_graph(offset, edges)


# ---------------------------------------------------------------------------
# spiders and pineapples
# ---------------------------------------------------------------------------

def check_partition(lam: Iterable[int]) -> tuple[int, ...]:
    parts = tuple(int(x) for x in lam)
    if any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise NotAPartition(f"{parts} is not a weakly decreasing sequence of positive integers")
    return parts


@dataclass(frozen=True)
class SpiderShape:
    """Leg lengths plus the fixed vertex layout of S(lam).

    The torso is vertex 0.  Leg ``i`` (0-based, in the order of ``lam``)
    occupies a contiguous block of ``lam[i]`` vertices numbered outward from
    the torso, so ``legs[i][0]`` is the vertex adjacent to the torso.
    """

    lam: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", check_partition(self.lam))

    @cached_property
    def legs(self) -> tuple[tuple[int, ...], ...]:
        out = []
        start = 1
        for length in self.lam:
            out.append(tuple(range(start, start + length)))
            start += length
        return tuple(out)

    @property
    def n(self) -> int:
        return 1 + sum(self.lam)

    @cached_property
    def graph(self) -> Graph:
        return make_spider(self.lam)


def make_spider(lam: Iterable[int]) -> Graph:
    parts = check_partition(lam)
    edges = []
    labels = {0: "v0"}
    v = 1
    for i, length in enumerate(parts, start=1):
        prev = 0
        for j in range(1, length + 1):
            edges.append((prev, v))
            labels[v] = f"v{i}" if j == 1 else f"v{i},{j}"
            prev = v
            v += 1
    return build_graph(v, edges, labels)


@dataclass(frozen=True)
class PineappleShape:
    """Layout of Pi(n, lam): the spider S(lam) on vertices 0..|lam| with torso
    ``u = 0``, followed by the other clique vertices v_1..v_{n-1}."""

    n_clique: int
    lam: tuple[int, ...]

    def __post_init__(self):
        if self.n_clique < 1:
            raise ZeroClique("the clique of a pineapple needs at least one vertex")
        object.__setattr__(self, "lam", check_partition(self.lam))

    @property
    def spider(self) -> SpiderShape:
        return SpiderShape(self.lam)

    @property
    def clique(self) -> tuple[int, ...]:
        base = 1 + sum(self.lam)
        return tuple(range(base, base + self.n_clique - 1))

    @property
    def n(self) -> int:
        return sum(self.lam) + self.n_clique

    @cached_property
    def graph(self) -> Graph:
        return make_pineapple(self.n_clique, self.lam)


def make_pineapple(n: int, lam: Iterable[int]) -> Graph:
    if n < 1:
        raise ZeroClique("the clique of a pineapple needs at least one vertex")
    spider = make_spider(lam)
    base = spider.n
    clique = [0] + list(range(base, base + n - 1))
    edges = list(spider.edges) + list(combinations(clique, 2))
    labels = {0: "u"}
    for v, name in spider.labels or ():
        if v:
            labels[v] = "l" + name[1:]
    for i, v in enumerate(clique[1:], start=1):
        labels[v] = f"v{i}"
    return build_graph(base + n - 1, edges, labels)


# ---------------------------------------------------------------------------
# derived graphs
# ---------------------------------------------------------------------------

def clan_graph(g: Graph, alpha: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Blow each vertex ``v`` up into a clique of size ``alpha[v]``.

    Returns the clan graph and the block map ``new vertex -> old vertex``.
    Weight 0 deletes a vertex.
    """
    if len(alpha) != g.n:
        raise OutOfRange(f"weight map has {len(alpha)} entries for {g.n} vertices")
    blocks: list[int] = []
    first = []
    for v, a in enumerate(alpha):
        if a < 0:
            raise OutOfRange(f"negative weight at vertex {v}")
        first.append(len(blocks))
        blocks.extend([v] * a)
    edges = []
    for v, a in enumerate(alpha):
        edges.extend(combinations(range(first[v], first[v] + a), 2))
    for u, v in g.edges:
        for x in range(first[u], first[u] + alpha[u]):
            for y in range(first[v], first[v] + alpha[v]):
                edges.append((x, y))
    return build_graph(len(blocks), edges), tuple(blocks)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    kept = tuple(sorted(set(vertices)))
    for v in kept:
        if not 0 <= v < g.n:
            raise OutOfRange(f"vertex {v} not in graph on {g.n} vertices")
    index = {v: i for i, v in enumerate(kept)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    labels = None
    if g.labels:
        labels = {index[v]: s for v, s in g.labels if v in index}
    return build_graph(len(kept), edges, labels), kept


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    drop = set(s)
    for v in drop:
        if not 0 <= v < g.n:
            raise OutOfRange(f"vertex {v} not in graph on {g.n} vertices")
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def closed_neighborhood(g: Graph, v: int) -> set[int]:
    return {v, *g.neighbors[v]}


def component_vertex_sets(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def connected_components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Components as induced subgraphs, ordered by smallest original vertex."""
    return [induced_subgraph(g, comp) for comp in component_vertex_sets(g)]


def is_connected(g: Graph) -> bool:
    return len(component_vertex_sets(g)) == 1


@dataclass(frozen=True)
class Bipartition:
    parts: tuple[frozenset[int], frozenset[int]]

    @property
    def type(self) -> tuple[int, int]:
        k, l = sorted((len(p) for p in self.parts), reverse=True)
        return (k, l)

    @property
    def balanced(self) -> bool:
        k, l = self.type
        return k <= l + 1


def _two_color(g: Graph, root: int = 0) -> tuple[list[int], tuple[int, int] | None, list[int]]:
    """BFS 2-colouring from ``root``; returns (colour, clashing edge, parent)."""
    color = [-1] * g.n
    parent = [-1] * g.n
    color[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if color[w] < 0:
                color[w] = 1 - color[u]
                parent[w] = u
                queue.append(w)
            elif color[w] == color[u]:
                return color, (u, w), parent
    return color, None, parent


def bipartition(g: Graph) -> Bipartition | None:
    """The unique bipartition of a connected graph, or None if it has an odd cycle."""
    if g.n == 0 or not is_connected(g):
        raise NotConnected("bipartition is defined for connected graphs")
    color, clash, _ = _two_color(g)
    if clash is not None:
        return None
    side0 = frozenset(v for v in range(g.n) if color[v] == 0)
    side1 = frozenset(v for v in range(g.n) if color[v] == 1)
    if len(side0) >= len(side1):
        return Bipartition((side0, side1))
    return Bipartition((side1, side0))


def find_odd_cycle(g: Graph) -> list[int] | None:
    """An odd cycle as a closed vertex sequence (first vertex not repeated)."""
    for comp in component_vertex_sets(g):
        color, clash, parent = _two_color(g, comp[0])
        if clash is None:
            continue
        u, w = clash
        up = [u]
        while parent[up[-1]] >= 0:
            up.append(parent[up[-1]])
        wp = [w]
        while parent[wp[-1]] >= 0:
            wp.append(parent[wp[-1]])
        common = set(up) & set(wp)
        up = up[: next(i for i, x in enumerate(up) if x in common) + 1]
        wp = wp[: next(i for i, x in enumerate(wp) if x in common)]
        # u -> ... -> lca -> ... -> w, closed by the clashing edge wu
        return up + wp[::-1]
    return None


def find_claw(g: Graph) -> tuple[int, int, int, int] | None:
    """An induced K_{1,3} as (centre, a, b, c), or None."""
    for c in range(g.n):
        for a, b, d in combinations(g.neighbors[c], 3):
            if not (g.has_edge(a, b) or g.has_edge(a, d) or g.has_edge(b, d)):
                return (c, a, b, d)
    return None


def is_claw_free(g: Graph) -> bool:
    return find_claw(g) is None


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------

def graph_to_json(g: Graph) -> str:
    doc: dict = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels:
        doc["labels"] = {str(v): s for v, s in g.labels}
    return json.dumps(doc, sort_keys=True)


def graph_from_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
        n = int(doc["n"])
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
        labels = doc.get("labels")
        labels = {int(k): str(s) for k, s in labels.items()} if labels else None
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from exc
    return build_graph(n, edges, labels)


def graph_to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        n, m = (int(x) for x in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise ParseError(f"malformed edge list: {exc}") from exc
    if len(edges) != m:
        raise ParseError(f"edge list header promises {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def parse_graph_text(text: str) -> Graph:
    """Accept either serialisation, sniffing for JSON."""
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return graph_from_edgelist(text)
