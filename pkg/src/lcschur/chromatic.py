"""Two-row Schur projections of X_G, X_G^alpha and Y_G.

[s_(k,l)] X_G = a(k,l) - a(k+1,l-1), where a(k,l) counts semi-ordered stable
partitions of type (k,l).  A two-block stable partition is a proper
2-colouring, so a(k,l) is the number of vertex sets S of size k such that S
and its complement are both independent.  That number is the t^k coefficient
of the product over connected components of (t^p + t^q), (p, q) being the
component's bipartition sizes; any non-bipartite component makes it zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .errors import OutOfRange, TooLarge
from .graph import Graph, clan_graph
from .poly import indep_poly
from .schur2 import TwoRowProfile, TwoVarPoly, fp_profile, twovar_to_profile

VERTEX_LIMIT = 25
ORACLE_VERTEX_LIMIT = 10
ORACLE_DEGREE_LIMIT = 12

WeightMap = tuple[int, ...]


@dataclass(frozen=True)
class StableTypeCounts:
    """Semi-ordered counts of two-block stable partitions by type.

    ``counts[(k, l)]`` for k >= l >= 1 and k + l = n; ``single`` is the count
    for the one-block type (n), i.e. 1 exactly when the graph is edgeless.
    """

    n: int
    counts: dict[tuple[int, int], int] = field(default_factory=dict)
    single: int = 0

    def __getitem__(self, shape: tuple[int, int]) -> int:
        k, l = shape
        if l == 0 and k == self.n:
            return self.single
        return self.counts.get((k, l), 0)


# ---------------------------------------------------------------------------
# bitmask core
# ---------------------------------------------------------------------------

def _component_sides(adj: Sequence[int]) -> list[tuple[int, int]] | None:
    """Bipartition sizes of every component, or None if some component has an odd cycle."""
    remaining = (1 << len(adj)) - 1
    sides = []
    while remaining:
        start = remaining & -remaining
        layers = [start, 0]
        seen = start
        frontier = start
        parity = 0
        while frontier:
            reach = 0
            m = frontier
            while m:
                low = m & -m
                reach |= adj[low.bit_length() - 1]
                m ^= low
            frontier = reach & ~seen
            parity ^= 1
            layers[parity] |= frontier
            seen |= frontier
        for side in layers:
            m = side
            while m:
                low = m & -m
                if adj[low.bit_length() - 1] & side:
                    return None
                m ^= low
        sides.append((layers[0].bit_count(), layers[1].bit_count()))
        remaining &= ~seen
    return sides


def _split_counts(adj: Sequence[int]) -> list[int] | None:
    """c[k] = #{S : |S| = k, S and V - S independent}; None when c vanishes."""
    sides = _component_sides(adj)
    if sides is None:
        return None
    c = [1]
    for p, q in sides:
        nxt = [0] * (len(c) + p + q)
        for k, v in enumerate(c):
            if v:
                nxt[k + p] += v
                nxt[k + q] += v
        c = nxt
    return c[: len(adj) + 1]


def _profile_entries(c: list[int] | None, n: int) -> dict[tuple[int, int], int]:
    if c is None:
        return {}
    out = {}
    if c[n]:
        out[(n, 0)] = c[n]
    for l in range(1, n // 2 + 1):
        k = n - l
        v = c[k] - c[k + 1]
        if v:
            out[(k, l)] = v
    return out


def _clan_masks(g: Graph, alpha: Sequence[int]) -> list[int]:
    first = []
    total = 0
    for a in alpha:
        first.append(total)
        total += a
    block = [((1 << a) - 1) << f for a, f in zip(alpha, first)]
    adj = [0] * total
    nbrs = g.neighbors
    for v, a in enumerate(alpha):
        if not a:
            continue
        outside = 0
        for u in nbrs[v]:
            outside |= block[u]
        for x in range(first[v], first[v] + a):
            adj[x] = (block[v] ^ (1 << x)) | outside
    return adj


def _x_alpha(g: Graph, alpha: Sequence[int]) -> dict[tuple[int, int], Fraction]:
    total = sum(alpha)
    entries = _profile_entries(_split_counts(_clan_masks(g, alpha)), total)
    if not entries:
        return {}
    denom = 1
    for a in alpha:
        if a > 1:
            denom *= factorial(a)
    return {s: Fraction(v, denom) for s, v in entries.items()}


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def stable_two_block_counts(g: Graph, limit: int | None = VERTEX_LIMIT) -> StableTypeCounts:
    if limit is not None and g.n > limit:
        raise TooLarge(f"stable partitions of a {g.n}-vertex graph exceed the guard of {limit}")
    c = _split_counts(g.adj) or [0] * (g.n + 1)
    counts = {}
    for l in range(1, g.n // 2 + 1):
        k = g.n - l
        if c[k]:
            counts[(k, l)] = c[k]
    return StableTypeCounts(g.n, counts, c[g.n])


def stable_two_block_counts_bruteforce(g: Graph, limit: int = 20) -> StableTypeCounts:
    """Same counts by scanning every vertex subset S."""
    if g.n > limit:
        raise TooLarge(f"subset scan on {g.n} vertices exceeds the guard of {limit}")
    full = (1 << g.n) - 1
    adj = g.adj

    def independent(mask: int) -> bool:
        m = mask
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & mask:
                return False
            m ^= low
        return True

    c = [0] * (g.n + 1)
    for s in range(full + 1):
        if independent(s) and independent(full ^ s):
            c[s.bit_count()] += 1
    counts = {(g.n - l, l): c[g.n - l] for l in range(1, g.n // 2 + 1) if c[g.n - l]}
    return StableTypeCounts(g.n, counts, c[g.n])


def two_row_X(g: Graph, limit: int | None = VERTEX_LIMIT) -> TwoRowProfile:
    """[s_(k,l)] X_G = a(k,l) - a(k+1,l-1), with a(n,0) the one-block count."""
    counts = stable_two_block_counts(g, limit)
    n = g.n
    out = {}
    if counts.single:
        out[(n, 0)] = Fraction(counts.single)
    for l in range(1, n // 2 + 1):
        k = n - l
        v = counts[(k, l)] - counts[(k + 1, l - 1)]
        if v:
            out[(k, l)] = Fraction(v)
    return TwoRowProfile(out)


def two_row_X_by_coloring(g: Graph, limit: int = 20) -> TwoRowProfile:
    """X_G evaluated at two variables by summing x^#1 y^#2 over proper maps V -> {1, 2}."""
    if g.n > limit:
        raise TooLarge(f"colouring scan on {g.n} vertices exceeds the guard of {limit}")
    terms: dict[tuple[int, int], int] = {}
    for colouring in range(1 << g.n):
        if all((colouring >> u ^ colouring >> v) & 1 for u, v in g.edges):
            ones = g.n - colouring.bit_count()
            terms[(ones, g.n - ones)] = terms.get((ones, g.n - ones), 0) + 1
    return twovar_to_profile(TwoVarPoly(terms))


def _check_weights(g: Graph, alpha: Sequence[int]) -> WeightMap:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != g.n:
        raise OutOfRange(f"weight map has {len(alpha)} entries for {g.n} vertices")
    if any(a < 0 for a in alpha):
        raise OutOfRange("weights must be nonnegative")
    return alpha


def two_row_X_alpha(g: Graph, alpha: Sequence[int], limit: int | None = VERTEX_LIMIT) -> TwoRowProfile:
    """Two-row part of X_G^alpha = X_{G^alpha} / prod_v alpha(v)!."""
    alpha = _check_weights(g, alpha)
    if limit is not None and sum(alpha) > limit:
        raise TooLarge(f"clan graph with {sum(alpha)} vertices exceeds the guard of {limit}")
    return TwoRowProfile._trusted(_x_alpha(g, alpha))


def two_row_X_alpha_via_clan(g: Graph, alpha: Sequence[int], limit: int | None = VERTEX_LIMIT) -> TwoRowProfile:
    """Reference route: build the clan graph explicitly, then normalise."""
    alpha = _check_weights(g, alpha)
    clan, _ = clan_graph(g, alpha)
    denom = 1
    for a in alpha:
        denom *= factorial(a)
    return two_row_X(clan, limit) * Fraction(1, denom)


def two_row_Y_fast(g: Graph) -> TwoRowProfile:
    """Full two-row content of Y_G = prod_i I_G(x_i)."""
    p = indep_poly(g)
    return fp_profile(p, 2 * p.degree + 2)


def _compositions(n: int, d: int) -> Iterator[WeightMap]:
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


def enumerate_weight_maps(
    g: Graph | int,
    d: int,
    vertex_limit: int | None = ORACLE_VERTEX_LIMIT,
    degree_limit: int | None = ORACLE_DEGREE_LIMIT,
) -> Iterator[WeightMap]:
    """Every weight map with total ``d``, first coordinate descending."""
    n = g if isinstance(g, int) else g.n
    if vertex_limit is not None and n > vertex_limit:
        raise TooLarge(f"weight-map enumeration on {n} vertices exceeds the guard of {vertex_limit}")
    if degree_limit is not None and d > degree_limit:
        raise TooLarge(f"weight-map enumeration at degree {d} exceeds the guard of {degree_limit}")
    if d < 0:
        return iter(())
    return _compositions(n, d)


def sum_x_alpha(g: Graph, alphas) -> TwoRowProfile:
    """Sum of X_G^alpha two-row profiles over an iterable of weight maps."""
    acc: dict[tuple[int, int], Fraction] = {}
    for alpha in alphas:
        for s, c in _x_alpha(g, alpha).items():
            acc[s] = acc.get(s, 0) + c
    return TwoRowProfile._trusted({s: c for s, c in acc.items() if c})


def two_row_Y_oracle(
    g: Graph,
    d: int,
    vertex_limit: int | None = ORACLE_VERTEX_LIMIT,
    degree_limit: int | None = ORACLE_DEGREE_LIMIT,
) -> TwoRowProfile:
    """Degree-d slice of Y_G summed directly over all weight maps of total d."""
    return sum_x_alpha(g, enumerate_weight_maps(g, d, vertex_limit, degree_limit))
