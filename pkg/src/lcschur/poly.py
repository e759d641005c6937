"""Exact integer polynomials, independence polynomials and log-concavity certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError, TooLarge
from .graph import Graph, component_vertex_sets

BRUTEFORCE_LIMIT = 25


class IntPolynomial:
    """Dense polynomial with Python-int coefficients; ``coeffs[j]`` multiplies t^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        m = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[j] + other[j] for j in range(m))

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return poly_product(self, other)

    def shift(self, k: int = 1) -> IntPolynomial:
        """Multiply by t^k."""
        return IntPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                mono = "t" if j == 1 else f"t^{j}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"

    def to_json(self) -> str:
        return json.dumps({"coeffs": [str(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        try:
            return cls(int(c) for c in json.loads(text)["coeffs"])
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc


def poly_product(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    if not p.coeffs or not q.coeffs:
        return IntPolynomial()
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return IntPolynomial(out)


# ---------------------------------------------------------------------------
# independence polynomials
# ---------------------------------------------------------------------------

def _add(p: list[int], q: list[int], shift: int = 0) -> list[int]:
    out = p + [0] * max(0, len(q) + shift - len(p))
    for j, c in enumerate(q):
        out[j + shift] += c
    return out


def _mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _mask_components(mask: int, adj: Sequence[int]) -> list[int]:
    comps = []
    while mask:
        frontier = mask & -mask
        comp = 0
        while frontier:
            comp |= frontier
            grow = 0
            m = frontier
            while m:
                low = m & -m
                grow |= adj[low.bit_length() - 1]
                m ^= low
            frontier = grow & mask & ~comp
        comps.append(comp)
        mask &= ~comp
    return comps


def _indep_masked(mask: int, adj: Sequence[int], memo: dict[int, list[int]]) -> list[int]:
    hit = memo.get(mask)
    if hit is not None:
        return hit
    comps = _mask_components(mask, adj)
    if len(comps) > 1:
        out = [1]
        for comp in comps:
            out = _mul(out, _indep_masked(comp, adj, memo))
    else:
        # pivot on a vertex of maximum degree inside the mask
        best, best_deg = -1, -1
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            d = (adj[v] & mask).bit_count()
            if d > best_deg:
                best, best_deg = v, d
            m ^= low
        if best_deg == 0:
            k = mask.bit_count()
            out = [comb(k, j) for j in range(k + 1)]
        else:
            without = _indep_masked(mask & ~(1 << best), adj, memo)
            closed = mask & ~(adj[best] | (1 << best))
            out = _add(without, _indep_masked(closed, adj, memo) if closed else [1], 1)
    memo[mask] = out
    return out


@lru_cache(maxsize=1 << 14)
def _component_poly(key: tuple[int, tuple[tuple[int, int], ...]]) -> tuple[int, ...]:
    n, edges = key
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(_indep_masked((1 << n) - 1, adj, {}))


def _canonical_component_key(g: Graph, comp: list[int]) -> tuple[int, tuple[tuple[int, int], ...]]:
    index = {v: i for i, v in enumerate(comp)}
    edges = sorted((index[u], index[v]) for u, v in g.edges if u in index)
    return (len(comp), tuple(edges))


def indep_poly(g: Graph) -> IntPolynomial:
    """Independence polynomial via I_G = I_{G-v} + t I_{G-N[v]}.

    Components are handled separately and multiplied; each connected
    component is memoised on its relabelled edge set.
    """
    out = [1]
    for comp in component_vertex_sets(g):
        out = _mul(out, list(_component_poly(_canonical_component_key(g, comp))))
    return IntPolynomial(out)


def indep_poly_bruteforce(g: Graph, limit: int = BRUTEFORCE_LIMIT) -> IntPolynomial:
    """Count independent sets by size over all 2^n vertex subsets."""
    if g.n > limit:
        raise TooLarge(f"subset enumeration on {g.n} vertices exceeds the guard of {limit}")
    masks = np.arange(1 << g.n, dtype=np.uint32)
    independent = np.ones(1 << g.n, dtype=bool)
    for u, v in g.edges:
        independent &= ((masks >> np.uint32(u)) & (masks >> np.uint32(v)) & np.uint32(1)) == 0
    sizes = np.zeros(1 << g.n, dtype=np.uint8)
    for v in range(g.n):
        sizes += ((masks >> np.uint32(v)) & np.uint32(1)).astype(np.uint8)
    counts = np.bincount(sizes[independent], minlength=g.n + 1)
    return IntPolynomial(int(c) for c in counts)


def independence_number(g: Graph) -> int:
    return indep_poly(g).degree


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Outcome of a sequence test.

    ``verdict`` names the property when it holds and is ``"none"`` otherwise.
    ``witness`` is the failing index tuple; for unimodality it is the mode
    when the property holds and a valley ``(i, j, k)`` when it fails.
    """

    verdict: str
    holds: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_log_concave(p: IntPolynomial) -> Certificate:
    a = p.coeffs
    for j in range(1, len(a) - 1):
        if a[j] * a[j] < a[j - 1] * a[j + 1]:
            return Certificate("none", False, (j,))
    return Certificate("log-concave", True)


def is_strongly_log_concave(p: IntPolynomial) -> Certificate:
    """Every order-1 and order-2 minor of the Toeplitz matrix (a_{j-i}) is >= 0.

    Order-2 minors are a_m a_n - a_p a_q with p < m <= n < q and m + n = p + q.
    Indices run over 0..d+1; minors beyond that involve only zero entries.
    """
    top = p.degree + 1
    for j, c in enumerate(p.coeffs):
        if c < 0:
            return Certificate("none", False, (j,))
    for pi in range(0, top + 1):
        for q in range(pi + 2, top + 1):
            s = pi + q
            for m in range(pi + 1, s // 2 + 1):
                if p[m] * p[s - m] < p[pi] * p[q]:
                    return Certificate("none", False, (pi, m, s - m, q))
    return Certificate("strongly-log-concave", True)


def is_unimodal(p: IntPolynomial) -> Certificate:
    a = p.coeffs
    if not a:
        return Certificate("unimodal", True)
    mode = max(range(len(a)), key=lambda j: (a[j], -j))
    for j in range(1, mode + 1):
        if a[j] < a[j - 1]:
            k = next(k for k in range(j, mode + 1) if a[k] > a[j])
            return Certificate("none", False, (j - 1, j, k))
    for j in range(mode + 1, len(a)):
        if a[j] > a[j - 1]:
            return Certificate("none", False, (mode, j - 1, j))
    return Certificate("unimodal", True, (mode,))
