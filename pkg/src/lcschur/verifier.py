"""Instance-level checks of the spider and pineapple log-concavity arguments.

Weight maps on a spider S(lam) use the vertex layout of :class:`SpiderShape`:
the torso is vertex 0 and leg ``i`` is a contiguous block read outward from
the torso.  The dangerous weight maps put weight 1 on the torso and at most 1
on every vertex next to it, and leave the torso's component C0 (torso plus the
initial run of positive weights on each leg) a spider with an unbalanced
bipartition.  ``phi`` sends each of them to a weight map with an empty torso
whose negative two-row terms are absorbed.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

from .chromatic import (
    ORACLE_DEGREE_LIMIT,
    ORACLE_VERTEX_LIMIT,
    _clan_masks,
    _split_counts,
    _x_alpha,
    enumerate_weight_maps,
    sum_x_alpha,
    two_row_X_alpha,
    two_row_Y_fast,
)
from .errors import NotALeaf, NotInImage, OutOfRange, TooLarge, WrongCase
from .graph import (
    Graph,
    PineappleShape,
    SpiderShape,
    build_graph,
    check_partition,
    clan_graph,
    complete_graph,
    delete_vertices,
    empty_graph,
    induced_subgraph,
    make_spider,
)
from .poly import Certificate, IntPolynomial, indep_poly, is_log_concave, is_strongly_log_concave
from .schur2 import (
    TwoRowProfile,
    convolve,
    is_2s_positive,
    profile_product,
    profile_sum,
    sequence_is_2s_positive,
)

VIOLATION_SAMPLE = 20


class CaseTag(str, Enum):
    C1 = "C1"  # torso weight >= 3
    C2 = "C2"  # torso weight 2, some vertex next to it positive
    C3 = "C3"  # torso weight 2, its neighbours empty
    C4 = "C4"  # torso weight 1, its neighbours empty
    C51 = "C51"  # torso weight 1, some neighbour of weight >= 2
    C521 = "C521"  # torso weight 1, neighbours <= 1, C0 two-row positive
    C522 = "C522"  # torso weight 1, neighbours <= 1, C0 not two-row positive
    C6 = "C6"  # torso empty


ZERO_CASES = frozenset({CaseTag.C1, CaseTag.C2, CaseTag.C51})
POSITIVE_CASES = frozenset({CaseTag.C3, CaseTag.C4, CaseTag.C521, CaseTag.C6})


def _as_shape(shape) -> SpiderShape:
    return shape if isinstance(shape, SpiderShape) else SpiderShape(tuple(shape))


def _check_alpha(shape: SpiderShape, alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != shape.n:
        raise OutOfRange(f"weight map has {len(alpha)} entries for {shape.n} vertices")
    if any(a < 0 for a in alpha):
        raise OutOfRange("weights must be nonnegative")
    return alpha


def _leg_weights(shape: SpiderShape, alpha: Sequence[int]) -> list[tuple[int, ...]]:
    out = []
    start = 1
    for length in shape.lam:
        out.append(tuple(alpha[start:start + length]))
        start += length
    return out


def _initial_run(weights: Sequence[int]) -> tuple[int, ...]:
    j = 0
    while j < len(weights) and weights[j] > 0:
        j += 1
    return tuple(weights[:j])


# ---------------------------------------------------------------------------
# C0 and its leg profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LegProfile:
    """Leg lengths ``beta`` of C0 = S(beta) in the original leg order, with
    the parity bookkeeping that determines C0's bipartition."""

    beta: tuple[int, ...]
    odd_legs: tuple[int, ...]
    even_legs: tuple[int, ...]

    @classmethod
    def from_beta(cls, beta: Sequence[int]) -> LegProfile:
        beta = tuple(int(b) for b in beta)
        odd = tuple(i for i, b in enumerate(beta) if b % 2 == 1)
        even = tuple(i for i, b in enumerate(beta) if b > 0 and b % 2 == 0)
        return cls(beta, odd, even)

    @property
    def a(self) -> int:
        return len(self.odd_legs)

    @property
    def b(self) -> int:
        return len(self.even_legs)

    @property
    def beta_odd_plus(self) -> int:
        return sum((self.beta[i] + 1) // 2 for i in self.odd_legs)

    @property
    def beta_odd_minus(self) -> int:
        return sum((self.beta[i] - 1) // 2 for i in self.odd_legs)

    @property
    def beta_even(self) -> int:
        return sum(self.beta[i] // 2 for i in self.even_legs)

    @property
    def blocks(self) -> tuple[int, int]:
        """Sizes of the bipartition blocks (far-from-torso side first)."""
        return (self.beta_odd_plus + self.beta_even, 1 + self.beta_odd_minus + self.beta_even)

    @property
    def unbalanced(self) -> bool:
        return self.a >= 3

    @property
    def upper_slot(self) -> tuple[int, int]:
        return self.blocks

    @property
    def critical_slot(self) -> tuple[int, int]:
        k, l = self.blocks
        return (k - 1, l + 1)

    @property
    def expected_critical(self) -> int:
        return (self.a - 2) * 2 ** self.b


@lru_cache(maxsize=1 << 16)
def _c0_profile(torso: int, runs: tuple[tuple[int, ...], ...]) -> TwoRowProfile:
    """Two-row profile of X^{alpha|C0}; ``runs`` is sorted, so isomorphic C0s share an entry."""
    legs = sorted((r for r in runs if r), key=lambda r: (-len(r), r))
    g = make_spider(tuple(len(r) for r in legs))
    alpha = (torso,) + tuple(w for r in legs for w in r)
    return TwoRowProfile._trusted(_x_alpha(g, alpha))


@lru_cache(maxsize=1 << 16)
def _c0_positive(runs: tuple[tuple[int, ...], ...]) -> bool:
    return bool(is_2s_positive(_c0_profile(1, runs)))


def _classify(alpha: Sequence[int], legw: list[tuple[int, ...]]) -> CaseTag:
    a0 = alpha[0]
    starts = [w[0] for w in legw]
    if a0 >= 3:
        return CaseTag.C1
    if a0 == 2:
        return CaseTag.C2 if any(starts) else CaseTag.C3
    if a0 == 1:
        if not any(starts):
            return CaseTag.C4
        if max(starts) >= 2:
            return CaseTag.C51
        runs = tuple(sorted(_initial_run(w) for w in legw))
        return CaseTag.C521 if _c0_positive(runs) else CaseTag.C522
    return CaseTag.C6


def classify_alpha(shape, alpha: Sequence[int]) -> CaseTag:
    """Case tag of a weight map on S(lam); the C521/C522 split reads C0's two-row profile."""
    shape = _as_shape(shape)
    alpha = _check_alpha(shape, alpha)
    return _classify(alpha, _leg_weights(shape, alpha))


def extract_C0(shape, alpha: Sequence[int]) -> tuple[LegProfile, Graph, tuple[int, ...]]:
    """Leg profile of C0, C0 as an induced subgraph of S(lam), and its vertex list."""
    shape = _as_shape(shape)
    alpha = _check_alpha(shape, alpha)
    legw = _leg_weights(shape, alpha)
    if alpha[0] != 1 or any(w[0] > 1 for w in legw):
        raise WrongCase("C0 is defined when the torso has weight 1 and its neighbours at most 1")
    beta = []
    for w in legw:
        j = 0
        while j < len(w) and w[j] == 1:
            j += 1
        if j < len(w) and w[j] > 1:
            raise WrongCase("a weight >= 2 inside the torso's component: C0 is not a spider")
        beta.append(j)
    verts = [0] + [v for leg, b in zip(shape.legs, beta) for v in leg[:b]]
    sub, kept = induced_subgraph(shape.graph, verts)
    return LegProfile.from_beta(beta), sub, kept


# ---------------------------------------------------------------------------
# the injection and its inverse
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _pivot(beta: tuple[int, ...]) -> tuple[int, int | None, int]:
    """(pivot leg, partner leg or None, pivot length) for C0 = S(beta)."""
    odd = [i for i, b in enumerate(beta) if b % 2 == 1]
    m = min(beta[i] for i in odd)
    ik = next(i for i in odd if beta[i] == m)
    if m == 1:
        return ik, None, m
    il = next(i for i in odd if i != ik)
    if beta[il] < m:
        raise RuntimeError(f"partner leg shorter than pivot leg for beta={beta}")
    return ik, il, m


def _phi_apply(shape: SpiderShape, alpha: Sequence[int], beta: tuple[int, ...]) -> tuple[int, ...]:
    ik, il, m = _pivot(beta)
    out = list(alpha)
    out[0] = 0
    legs = shape.legs
    if il is None:
        out[legs[ik][0]] = 2
    else:
        for j in range(m):
            out[legs[ik][j]] = 2 if j % 2 == 0 else 0
        for j in range(m - 1):
            out[legs[il][j]] = 2 if j % 2 == 0 else 0
    return tuple(out)


def _beta_of(legw: list[tuple[int, ...]]) -> tuple[int, ...]:
    return tuple(len(_initial_run(w)) for w in legw)


def phi(shape, alpha: Sequence[int]) -> tuple[int, ...]:
    """Image of a C522 weight map; the torso is emptied and pairs of K2s are laid on the pivot legs."""
    shape = _as_shape(shape)
    alpha = _check_alpha(shape, alpha)
    legw = _leg_weights(shape, alpha)
    if _classify(alpha, legw) is not CaseTag.C522:
        raise WrongCase("phi is defined on C522 weight maps only")
    return _phi_apply(shape, alpha, _beta_of(legw))


def _alternating_prefix(w: Sequence[int]) -> int:
    """Largest t with w starting 2,0,2,0,... (t pairs)."""
    t = 0
    while 2 * t + 1 < len(w) and w[2 * t] == 2 and w[2 * t + 1] == 0:
        t += 1
    return t


def _phi_inverse_raw(shape: SpiderShape, img: Sequence[int]) -> tuple[int, ...]:
    if img[0] != 0:
        raise NotInImage("images of phi have an empty torso")
    legs = shape.legs
    twos = [i for i, leg in enumerate(legs) if img[leg[0]] == 2]
    pre = list(img)
    pre[0] = 1
    if len(twos) == 1:
        pre[legs[twos[0]][0]] = 1
        return tuple(pre)
    if len(twos) != 2:
        raise NotInImage(f"{len(twos)} torso neighbours of weight 2; phi leaves one or two")
    # the partner leg reads (2,0)^t then 1; the pivot leg reads (2,0)^t then 2
    cands = []
    for i in twos:
        w = [img[v] for v in legs[i]]
        t = _alternating_prefix(w)
        while t >= 1:
            if 2 * t < len(w) and w[2 * t] == 1:
                cands.append((t, i))
                break
            t -= 1
    if not cands:
        raise NotInImage("no leg ends its 2,0 pattern with a 1")
    t, il = min(cands)
    ik = twos[0] if twos[1] == il else twos[1]
    m = 2 * t + 1
    wk = [img[v] for v in legs[ik]]
    if len(wk) < m or any(wk[j] != (2 if j % 2 == 0 else 0) for j in range(m)):
        raise NotInImage("pivot leg does not carry the matching 2,0,...,2 pattern")
    for j in range(m):
        pre[legs[ik][j]] = 1
        pre[legs[il][j]] = 1
    return tuple(pre)


def phi_inverse(shape, alpha_img: Sequence[int]) -> tuple[int, ...]:
    """Unique C522 preimage under :func:`phi`; raises NotInImage otherwise."""
    shape = _as_shape(shape)
    img = _check_alpha(shape, alpha_img)
    pre = _phi_inverse_raw(shape, img)
    legw = _leg_weights(shape, pre)
    if _classify(pre, legw) is not CaseTag.C522 or _phi_apply(shape, pre, _beta_of(legw)) != img:
        raise NotInImage("candidate preimage does not map back")
    return pre


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EliminationReport:
    profile: LegProfile
    case: str  # "i" or "ii"
    pivot_length: int
    x_c0: TwoRowProfile
    x_phi_c0: TwoRowProfile
    sum_positive: bool
    critical_coefficient: Fraction
    upper_count: int
    critical_count: int

    @property
    def expected_critical(self) -> int:
        return self.profile.expected_critical

    @property
    def expected_upper(self) -> int:
        lp = self.profile
        return 2 ** (lp.b + 1) if self.case == "i" else 2 ** (self.pivot_length + lp.b)

    @property
    def expected_critical_count(self) -> int:
        return (self.profile.a - 1) * self.expected_upper

    @property
    def ok(self) -> bool:
        return (
            self.sum_positive
            and self.critical_coefficient == self.expected_critical
            and self.upper_count == self.expected_upper
            and self.critical_count == self.expected_critical_count
        )

    def to_json_obj(self) -> dict:
        lp = self.profile
        return {
            "beta": list(lp.beta),
            "a": lp.a,
            "b": lp.b,
            "case": self.case,
            "pivot_length": self.pivot_length,
            "x_c0": str(self.x_c0),
            "x_phi_c0": str(self.x_phi_c0),
            "sum_positive": self.sum_positive,
            "critical_slot": list(lp.critical_slot),
            "critical_coefficient": str(self.critical_coefficient),
            "expected_critical": str(self.expected_critical),
            "upper_count": self.upper_count,
            "expected_upper": self.expected_upper,
            "critical_count": self.critical_count,
            "expected_critical_count": self.expected_critical_count,
            "ok": self.ok,
        }


def _restrict(alpha: Sequence[int], verts: Iterable[int]) -> tuple[int, ...]:
    out = [0] * len(alpha)
    for v in verts:
        out[v] = alpha[v]
    return tuple(out)


def _c0_vertices(shape: SpiderShape, beta: Sequence[int]) -> list[int]:
    return [0] + [v for leg, b in zip(shape.legs, beta) for v in leg[:b]]


def _c0_maps(lam: tuple[int, ...], beta: tuple[int, ...], pivot: int | None) -> tuple[tuple[int, ...], tuple[int, ...], int | None, int]:
    """alpha|C0 and phi(alpha)|C0 on S(lam), plus (partner leg, pivot length)."""
    shape = SpiderShape(lam)
    alpha_c0 = _restrict([1] * shape.n, _c0_vertices(shape, beta))
    if pivot is None:
        _, il, m = _pivot(beta)
        return alpha_c0, _phi_apply(shape, alpha_c0, beta), il, m
    if beta[pivot] != 1:
        raise WrongCase("a forced pivot must be a leg of length 1")
    img = list(alpha_c0)
    img[0] = 0
    img[shape.legs[pivot][0]] = 2
    return alpha_c0, tuple(img), None, 1


@lru_cache(maxsize=1 << 14)
def _elimination(lam: tuple[int, ...], beta: tuple[int, ...], pivot: int | None = None) -> EliminationReport:
    """Elimination data for C0 = S(beta) inside S(lam).

    ``pivot`` forces a pivot leg of length 1 (the pineapple's pendant edge);
    by default the pivot is chosen as in :func:`phi`.
    """
    g = SpiderShape(lam).graph
    lp = LegProfile.from_beta(beta)
    alpha_c0, img, il, m = _c0_maps(lam, beta, pivot)
    x0 = TwoRowProfile._trusted(_x_alpha(g, alpha_c0))
    x1 = TwoRowProfile._trusted(_x_alpha(g, img))
    c = _split_counts(_clan_masks(g, img)) or [0] * (sum(img) + 1)
    k, l = lp.critical_slot
    return EliminationReport(
        profile=lp,
        case="i" if il is None else "ii",
        pivot_length=m,
        x_c0=x0,
        x_phi_c0=x1,
        sum_positive=bool(is_2s_positive(x0 + x1)),
        critical_coefficient=x1[(k, l)],
        upper_count=c[k + 1] if k + 1 < len(c) else 0,
        critical_count=c[k] if k < len(c) else 0,
    )


def _weighted_counts(g: Graph, alpha: Sequence[int]) -> tuple[list[int], int]:
    """Split counts of the clan graph and the factorial normaliser of X^alpha."""
    c = _split_counts(_clan_masks(g, alpha)) or [0] * (sum(alpha) + 1)
    denom = 1
    for a in alpha:
        if a > 1:
            denom *= factorial(a)
    return c, denom


def _pair_sequence(g: Graph, alpha: Sequence[int], img: Sequence[int]) -> tuple[int, ...]:
    """X^alpha + X^img as a coefficient sequence, scaled by both normalisers."""
    c0, d0 = _weighted_counts(g, alpha)
    c1, d1 = _weighted_counts(g, img)
    return tuple(a * d1 + b * d0 for a, b in zip(c0, c1))


@lru_cache(maxsize=1 << 14)
def _c0_sequence(lam: tuple[int, ...], beta: tuple[int, ...], pivot: int | None = None) -> tuple[int, ...]:
    alpha_c0, img, _, _ = _c0_maps(lam, beta, pivot)
    return _pair_sequence(SpiderShape(lam).graph, alpha_c0, img)


def verify_elimination(shape, alpha: Sequence[int]) -> EliminationReport:
    """X^{alpha|C0} + X^{phi(alpha)|C0} and the critical-slot bookkeeping for a C522 map."""
    shape = _as_shape(shape)
    alpha = _check_alpha(shape, alpha)
    legw = _leg_weights(shape, alpha)
    if _classify(alpha, legw) is not CaseTag.C522:
        raise WrongCase("elimination is checked on C522 weight maps only")
    return _elimination(shape.lam, _beta_of(legw))


@lru_cache(maxsize=1 << 16)
def _path_profile(weights: tuple[int, ...]) -> TwoRowProfile:
    g = build_graph(len(weights), [(j, j + 1) for j in range(len(weights) - 1)])
    return TwoRowProfile._trusted(_x_alpha(g, weights))


@lru_cache(maxsize=1 << 16)
def _tails_profile(tails: tuple[tuple[int, ...], ...]) -> TwoRowProfile:
    out = TwoRowProfile.one()
    for t in tails:
        out = profile_product(out, _path_profile(t))
    return out


@lru_cache(maxsize=1 << 16)
def _path_sequence(weights: tuple[int, ...]) -> tuple[int, ...]:
    g = build_graph(len(weights), [(j, j + 1) for j in range(len(weights) - 1)])
    return tuple(_split_counts(_clan_masks(g, weights)) or [0] * (sum(weights) + 1))


@lru_cache(maxsize=1 << 16)
def _tails_sequence(tails: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Two-variable coefficients of X^{alpha|outside C0}, up to a positive factor."""
    out: list[int] = [1]
    for t in tails:
        out = convolve(out, _path_sequence(t))
    return tuple(out)


def _tails(legw: list[tuple[int, ...]], beta: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Weights on each leg beyond C0, skipping the separating vertex; sorted, empty tails dropped."""
    out = []
    for w, b in zip(legw, beta):
        t = w[b + 1:]
        if any(t):
            out.append(t)
    return tuple(sorted(out))


@lru_cache(maxsize=1 << 18)
def _full_sum(key: tuple, tails: tuple[tuple[int, ...], ...]) -> TwoRowProfile:
    lam, beta, pivot = key
    e = _elimination(lam, beta, pivot)
    return profile_product(e.x_c0 + e.x_phi_c0, _tails_profile(tails))


@lru_cache(maxsize=1 << 20)
def _full_sum_positive(c0: tuple[int, ...], tails: tuple[tuple[int, ...], ...]) -> bool:
    return sequence_is_2s_positive(convolve(c0, _tails_sequence(tails)))


def elimination_sum_factored(shape, alpha: Sequence[int]) -> TwoRowProfile:
    """X^alpha + X^phi(alpha) as (X^{alpha|C0} + X^{phi(alpha)|C0}) * X^{alpha|outside C0}."""
    shape = _as_shape(shape)
    alpha = _check_alpha(shape, alpha)
    legw = _leg_weights(shape, alpha)
    if _classify(alpha, legw) is not CaseTag.C522:
        raise WrongCase("elimination is checked on C522 weight maps only")
    beta = _beta_of(legw)
    return _full_sum((shape.lam, beta, None), _tails(legw, beta))


def elimination_sum_direct(shape, alpha: Sequence[int]) -> TwoRowProfile:
    """Same sum from the two full clan graphs, with no factorisation."""
    shape = _as_shape(shape)
    g = shape.graph
    return two_row_X_alpha(g, alpha, None) + two_row_X_alpha(g, phi(shape, alpha), None)


# ---------------------------------------------------------------------------
# phi audit over a spider
# ---------------------------------------------------------------------------

def _leg_options(length: int, cap: int) -> list[tuple[int, list[tuple[int, ...]]]]:
    """For each run length b: every leg vector with b ones, a separating 0, then weights <= cap."""
    out = []
    for b in range(length + 1):
        if b == length:
            out.append((b, [(1,) * b]))
        else:
            head = (1,) * b + (0,)
            out.append((b, [head + t for t in itertools.product(range(cap + 1), repeat=length - b - 1)]))
    return out


def c522_weight_maps(shape, cap: int = 2) -> Iterator[tuple[int, ...]]:
    """Every C522 weight map on S(lam) with weights <= cap outside C0, grouped by beta."""
    shape = _as_shape(shape)
    options = [_leg_options(length, cap) for length in shape.lam]
    for choice in itertools.product(*options):
        if sum(1 for b, _ in choice if b % 2 == 1) < 3:
            continue
        for vecs in itertools.product(*(v for _, v in choice)):
            yield (1,) + tuple(x for vec in vecs for x in vec)


@dataclass
class PhiAudit:
    lam: tuple[int, ...]
    cap: int
    checked: int = 0
    case_counts: dict[str, int] = field(default_factory=lambda: {"i": 0, "ii": 0})
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)
    table: list[EliminationReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def _flag(self, alpha, reason: str) -> None:
        self.violation_count += 1
        if len(self.violations) < VIOLATION_SAMPLE:
            self.violations.append({"alpha": list(alpha), "reason": reason})

    def to_json_obj(self) -> dict:
        return {
            "lambda": list(self.lam),
            "cap": self.cap,
            "checked": self.checked,
            "phi_cases": dict(self.case_counts),
            "violation_count": self.violation_count,
            "violations": self.violations,
            "elimination_table": [e.to_json_obj() for e in self.table],
        }


def audit_phi(lam: Sequence[int], cap: int = 2) -> PhiAudit:
    """Check phi on every C522 weight map of S(lam) with weights <= cap outside C0.

    Per map: the domain tag is C522, the image is C6 with the same total
    weight, images are pairwise distinct, the inverse recovers the map, the
    full sum X^alpha + X^phi(alpha) is two-row positive and the critical
    coefficient equals (a-2) 2^b.
    """
    shape = SpiderShape(tuple(lam))
    audit = PhiAudit(shape.lam, cap)
    images: set[bytes] = set()
    betas: dict[tuple[int, ...], EliminationReport] = {}
    lam_t = shape.lam
    for alpha in c522_weight_maps(shape, cap):
        audit.checked += 1
        legw = _leg_weights(shape, alpha)
        if _classify(alpha, legw) is not CaseTag.C522:
            audit._flag(alpha, "enumerated map is not C522")
            continue
        beta = _beta_of(legw)
        img = _phi_apply(shape, alpha, beta)
        e = betas.get(beta)
        if e is None:
            e = betas[beta] = _elimination(lam_t, beta)
        audit.case_counts[e.case] += 1
        if img[0] != 0 or _classify(img, _leg_weights(shape, img)) is not CaseTag.C6:
            audit._flag(alpha, "image is not C6")
        if sum(img) != sum(alpha):
            audit._flag(alpha, "total weight changed")
        key = bytes(img)
        if key in images:
            audit._flag(alpha, "image collides with an earlier map")
        images.add(key)
        try:
            back = _phi_inverse_raw(shape, img)
        except NotInImage as exc:
            audit._flag(alpha, f"inverse failed: {exc}")
        else:
            if back != alpha:
                audit._flag(alpha, "inverse does not recover the map")
        if not e.ok:
            audit._flag(alpha, "C0 elimination bookkeeping failed")
        if not _full_sum_positive(_c0_sequence(lam_t, beta), _tails(legw, beta)):
            audit._flag(alpha, "X^alpha + X^phi(alpha) is not two-row positive")
    audit.table = [betas[b] for b in sorted(betas)]
    return audit


def _audit_worker(args) -> PhiAudit:
    lam, cap = args
    return audit_phi(lam, cap)


def audit_phi_many(shapes: Iterable[Sequence[int]], cap: int = 2, workers: int = 1) -> list[PhiAudit]:
    """Audits in input order; ``workers > 1`` spreads spiders over processes."""
    jobs = [(tuple(lam), cap) for lam in shapes]
    if workers <= 1:
        return [_audit_worker(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_audit_worker, jobs, chunksize=1))


# ---------------------------------------------------------------------------
# case census
# ---------------------------------------------------------------------------

@dataclass
class CaseCensus:
    counts: dict[str, int] = field(default_factory=dict)
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)

    def _flag(self, alpha, reason: str) -> None:
        self.violation_count += 1
        if len(self.violations) < VIOLATION_SAMPLE:
            self.violations.append({"alpha": list(alpha), "reason": reason})


def case_census(shape, max_total: int, vertex_limit: int | None = 12) -> CaseCensus:
    """Tag every weight map with total <= max_total and test each case's claim.

    Zero cases must give a vanishing two-row profile, positive cases a
    nonnegative one, and a non-positive X^alpha must come with a non-positive C0.
    """
    shape = _as_shape(shape)
    if vertex_limit is not None and shape.n > vertex_limit:
        raise TooLarge(f"case census on {shape.n} vertices exceeds the guard of {vertex_limit}")
    g = shape.graph
    census = CaseCensus({t.value: 0 for t in CaseTag})
    for d in range(max_total + 1):
        for alpha in enumerate_weight_maps(g, d, None, None):
            legw = _leg_weights(shape, alpha)
            tag = _classify(alpha, legw)
            census.counts[tag.value] += 1
            x = _x_alpha(g, alpha)
            if tag in ZERO_CASES and x:
                census._flag(alpha, f"{tag.value} should be two-row zero")
            positive = all(c >= 0 for c in x.values())
            if tag in POSITIVE_CASES and not positive:
                census._flag(alpha, f"{tag.value} should be two-row positive")
            if not positive:
                runs = tuple(sorted(_initial_run(w) for w in legw))
                if alpha[0] == 0 or is_2s_positive(_c0_profile(alpha[0], runs)):
                    census._flag(alpha, "negative X^alpha with positive C0")
    return census


# ---------------------------------------------------------------------------
# spider and pineapple reports
# ---------------------------------------------------------------------------

@dataclass
class SpiderReport:
    lam: tuple[int, ...]
    poly: IntPolynomial
    certificate: Certificate
    y_positive: bool
    audit: PhiAudit | None = None
    census: CaseCensus | None = None

    @property
    def ok(self) -> bool:
        return (
            self.certificate.holds
            and self.y_positive
            and (self.audit is None or self.audit.ok)
            and (self.census is None or self.census.violation_count == 0)
        )

    def to_json_obj(self) -> dict:
        violations = []
        if not self.certificate.holds:
            violations.append({"reason": "not strongly log-concave", "witness": list(self.certificate.witness or ())})
        if not self.y_positive:
            violations.append({"reason": "Y not two-row positive"})
        if self.census:
            violations.extend(self.census.violations)
        if self.audit:
            violations.extend(self.audit.violations)
        cases = dict(self.census.counts) if self.census else {}
        if self.audit:
            cases["C522_audited"] = self.audit.checked
        out = {
            "instance": "spider " + ",".join(map(str, self.lam)),
            "verdict": "PASS" if self.ok else "FAIL",
            "cases": cases,
            "violations": violations,
            "independence_polynomial": [str(c) for c in self.poly.coeffs],
            "strongly_log_concave": self.certificate.holds,
            "y_two_s_positive": self.y_positive,
        }
        if self.audit:
            out["phi_audit"] = self.audit.to_json_obj()
        return out


def verify_spider(
    lam: Sequence[int],
    audit: bool = False,
    cap: int = 2,
    census_degree: int | None = None,
) -> SpiderReport:
    shape = SpiderShape(check_partition(lam))
    p = indep_poly(shape.graph)
    report = SpiderReport(shape.lam, p, is_strongly_log_concave(p), bool(is_2s_positive(two_row_Y_fast(shape.graph))))
    if census_degree is not None:
        report.census = case_census(shape, census_degree, None)
    if audit:
        report.audit = audit_phi(shape.lam, cap)
    return report


def classify_pineapple_error(shape: PineappleShape, alpha: Sequence[int]) -> str | None:
    """"1", "2.1" or "2.2" for an error weight map (torso and some clique vertex positive), else None."""
    alpha = tuple(alpha)
    if len(alpha) != shape.n:
        raise OutOfRange(f"weight map has {len(alpha)} entries for {shape.n} vertices")
    hot = [v for v in shape.clique if alpha[v] >= 1]
    if alpha[0] < 1 or not hot:
        return None
    if len(hot) >= 2:
        return "1"
    if alpha[0] >= 2 or alpha[hot[0]] >= 2:
        return "2.1"
    return "2.2"


@dataclass
class PineappleAudit:
    n_clique: int
    lam: tuple[int, ...]
    cap: int
    checked: int = 0
    unbalanced: int = 0
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)
    table: list[EliminationReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def _flag(self, alpha, reason: str) -> None:
        self.violation_count += 1
        if len(self.violations) < VIOLATION_SAMPLE:
            self.violations.append({"alpha": list(alpha), "reason": reason})

    def to_json_obj(self) -> dict:
        return {
            "n": self.n_clique,
            "lambda": list(self.lam),
            "cap": self.cap,
            "checked": self.checked,
            "unbalanced_c0": self.unbalanced,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "elimination_table": [e.to_json_obj() for e in self.table],
        }


def _pineapple_leg_vectors(length: int, cap: int) -> list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """(vector, initial positive run, weights past the run's end) for every leg vector <= cap."""
    out = []
    for vec in itertools.product(range(cap + 1), repeat=length):
        run = _initial_run(vec)
        out.append((vec, run, vec[len(run) + 1:]))
    return out


def _pendant_spider(runs: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Leg lengths of S((runs, 1)) and the weights on its legs, pendant leg last."""
    legs = sorted((r for r in runs if r), key=lambda r: (-len(r), r))
    return tuple(len(r) for r in legs) + (1,), tuple(w for r in legs for w in r)


@lru_cache(maxsize=1 << 16)
def _pendant_c0_sum(runs: tuple[tuple[int, ...], ...]) -> tuple[TwoRowProfile, EliminationReport | None]:
    """X^{alpha|C0} + X^{phi(alpha)|C0} with the pendant clique vertex as pivot leg.

    ``runs`` are the initial positive runs of the spider legs, sorted.  C0
    then lives in S((runs, 1)); when every run is made of ones C0 is that
    spider and the full elimination bookkeeping is returned as well.
    """
    lens, body = _pendant_spider(runs)
    g = make_spider(lens)
    x0 = TwoRowProfile._trusted(_x_alpha(g, (1,) + body + (1,)))
    x1 = TwoRowProfile._trusted(_x_alpha(g, (0,) + body + (2,)))
    e = None
    if all(w == 1 for w in body):
        e = _elimination(lens, lens, len(lens) - 1)
    return x0 + x1, e


@lru_cache(maxsize=1 << 16)
def _pendant_c0_sequence(runs: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    lens, body = _pendant_spider(runs)
    return _pair_sequence(make_spider(lens), (1,) + body + (1,), (0,) + body + (2,))


def pendant_sum_factored(n: int, lam: Sequence[int], alpha: Sequence[int]) -> TwoRowProfile:
    """X^alpha + X^phi(alpha) for a case-(2.2) pineapple map, through the C0 factorisation."""
    shape = PineappleShape(n, tuple(lam))
    if classify_pineapple_error(shape, alpha) != "2.2":
        raise WrongCase("the pendant injection is defined on case 2.2 maps only")
    legw = _leg_weights(shape.spider, alpha[: shape.spider.n])
    runs = [_initial_run(w) for w in legw]
    total, _ = _pendant_c0_sum(tuple(sorted(runs)))
    beta = [len(r) for r in runs]
    return profile_product(total, _tails_profile(_tails(legw, beta)))


def audit_pineapple(n: int, lam: Sequence[int], cap: int = 1) -> PineappleAudit:
    """Check the pendant-leg injection on every case-(2.2) map with spider weights <= cap.

    Such a map has weight 1 on the torso u and on exactly one clique vertex
    v_i, 0 on the other clique vertices; the image moves u's weight onto v_i.
    """
    shape = PineappleShape(n, tuple(lam))
    audit = PineappleAudit(n, shape.lam, cap)
    if n < 2:
        return audit
    base = shape.spider.n
    per_leg = [_pineapple_leg_vectors(length, cap) for length in shape.lam]
    seen_rows: dict[tuple, EliminationReport] = {}
    for vi in shape.clique:
        images: set[bytes] = set()
        for combo in itertools.product(*per_leg):
            legs_part = tuple(x for vec, _, _ in combo for x in vec)
            alpha = [0] * shape.n
            alpha[0] = 1
            alpha[1:base] = legs_part
            alpha[vi] = 1
            alpha = tuple(alpha)
            audit.checked += 1
            if classify_pineapple_error(shape, alpha) != "2.2":
                audit._flag(alpha, "enumerated map is not case 2.2")
                continue
            img = list(alpha)
            img[0] = 0
            img[vi] = 2
            img = tuple(img)
            if img[0] != 0 or not any(img[v] for v in shape.clique):
                audit._flag(alpha, "image outside the clique-only term")
            if sum(img) != sum(alpha):
                audit._flag(alpha, "total weight changed")
            key = bytes(img)
            if key in images:
                audit._flag(alpha, "image collides with an earlier map")
            images.add(key)
            back = list(img)
            back[0] = 1
            back[vi] = 1
            if tuple(back) != alpha:
                audit._flag(alpha, "inverse does not recover the map")
            runs = tuple(sorted(r for _, r, _ in combo))
            tails = tuple(sorted(t for _, _, t in combo if any(t)))
            _, e = _pendant_c0_sum(runs)
            if e is not None and e.profile.unbalanced:
                audit.unbalanced += 1
                seen_rows.setdefault(e.profile.beta, e)
                if not e.ok:
                    audit._flag(alpha, "C0 elimination bookkeeping failed")
            if not _full_sum_positive(_pendant_c0_sequence(runs), tails):
                audit._flag(alpha, "X^alpha + X^phi(alpha) is not two-row positive")
    audit.table = [seen_rows[b] for b in sorted(seen_rows)]
    return audit


def pineapple_elimination_direct(n: int, lam: Sequence[int], alpha: Sequence[int]) -> TwoRowProfile:
    """X^alpha + X^phi(alpha) on the pineapple itself for a case-(2.2) map."""
    shape = PineappleShape(n, tuple(lam))
    if classify_pineapple_error(shape, alpha) != "2.2":
        raise WrongCase("the pendant injection is defined on case 2.2 maps only")
    img = list(alpha)
    vi = next(v for v in shape.clique if alpha[v])
    img[0] = 0
    img[vi] = 2
    g = shape.graph
    return two_row_X_alpha(g, alpha, None) + two_row_X_alpha(g, img, None)


@dataclass
class PineappleErrorCensus:
    counts: dict[str, int] = field(default_factory=lambda: {"1": 0, "2.1": 0, "2.2": 0})
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)


def pineapple_error_census(n: int, lam: Sequence[int], cap: int = 2, vertex_limit: int = 9) -> PineappleErrorCensus:
    """Sort every error map with weights <= cap into cases 1 / 2.1 / 2.2 and
    check that the first two are two-row zero."""
    shape = PineappleShape(n, tuple(lam))
    if shape.n > vertex_limit:
        raise TooLarge(f"error census on {shape.n} vertices exceeds the guard of {vertex_limit}")
    g = shape.graph
    census = PineappleErrorCensus()
    for alpha in itertools.product(range(cap + 1), repeat=shape.n):
        tag = classify_pineapple_error(shape, alpha)
        if tag is None:
            continue
        census.counts[tag] += 1
        if tag != "2.2" and _x_alpha(g, alpha):
            census.violation_count += 1
            if len(census.violations) < VIOLATION_SAMPLE:
                census.violations.append({"alpha": list(alpha), "reason": f"case {tag} should be two-row zero"})
    return census


@dataclass
class PineappleReport:
    n_clique: int
    lam: tuple[int, ...]
    poly: IntPolynomial
    certificate: Certificate
    y_positive: bool
    audit: PineappleAudit | None = None

    @property
    def ok(self) -> bool:
        return self.certificate.holds and self.y_positive and (self.audit is None or self.audit.ok)

    def to_json_obj(self) -> dict:
        violations = []
        if not self.certificate.holds:
            violations.append({"reason": "not log-concave", "witness": list(self.certificate.witness or ())})
        if not self.y_positive:
            violations.append({"reason": "Y not two-row positive"})
        if self.audit:
            violations.extend(self.audit.violations)
        out = {
            "instance": f"pineapple {self.n_clique} " + ",".join(map(str, self.lam)),
            "verdict": "PASS" if self.ok else "FAIL",
            "cases": {"2.2_audited": self.audit.checked} if self.audit else {},
            "violations": violations,
            "independence_polynomial": [str(c) for c in self.poly.coeffs],
            "log_concave": self.certificate.holds,
            "y_two_s_positive": self.y_positive,
        }
        if self.audit:
            out["pendant_audit"] = self.audit.to_json_obj()
        return out


def verify_pineapple(n: int, lam: Sequence[int], audit: bool = True, cap: int = 1) -> PineappleReport:
    shape = PineappleShape(n, check_partition(lam))
    p = indep_poly(shape.graph)
    report = PineappleReport(n, shape.lam, p, is_log_concave(p), bool(is_2s_positive(two_row_Y_fast(shape.graph))))
    if audit:
        report.audit = audit_pineapple(n, shape.lam, cap)
    return report


# ---------------------------------------------------------------------------
# the vertex and leaf recurrences, slice by slice
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1 << 12)
def _y_slice(key: tuple[int, tuple[tuple[int, int], ...]], d: int) -> TwoRowProfile:
    n, edges = key
    return sum_x_alpha(build_graph(n, edges), enumerate_weight_maps(n, d, None, None))


def _y_slice_of(g: Graph, d: int) -> TwoRowProfile:
    return _y_slice(g.key, d)


def _product_slice(left: Graph, right: Graph, d: int, drop_constant: bool) -> TwoRowProfile:
    """Degree-d slice of (Y_left - [drop]) * Y_right from independently computed slices."""
    parts = []
    for j in range(1 if drop_constant else 0, d + 1):
        a = _y_slice_of(left, j)
        if a:
            b = _y_slice_of(right, d - j)
            if b:
                parts.append(profile_product(a, b))
    return profile_sum(parts)


@dataclass(frozen=True)
class SliceCheck:
    d: int
    lhs: TwoRowProfile
    rhs: TwoRowProfile
    error_term: TwoRowProfile

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _guard(g: Graph, d: int, vertex_limit: int | None, degree_limit: int | None) -> None:
    if vertex_limit is not None and g.n > vertex_limit:
        raise TooLarge(f"slice check on {g.n} vertices exceeds the guard of {vertex_limit}")
    if degree_limit is not None and d > degree_limit:
        raise TooLarge(f"slice check at degree {d} exceeds the guard of {degree_limit}")


def verify_prop_3_3(
    g: Graph,
    v: int,
    d: int,
    vertex_limit: int | None = ORACLE_VERTEX_LIMIT,
    degree_limit: int | None = ORACLE_DEGREE_LIMIT,
) -> SliceCheck:
    """Degree-d slice of Y_G = Y_{G-v} + (Y_v - 1) Y_{G-N[v]} + sum of X_G^alpha
    over alpha with alpha(v) >= 1 and alpha(u) >= 1 for a neighbour u."""
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} not in graph on {g.n} vertices")
    _guard(g, d, vertex_limit, degree_limit)
    nbrs = g.neighbors[v]
    errors = (
        alpha for alpha in enumerate_weight_maps(g, d, None, None)
        if alpha[v] >= 1 and any(alpha[u] >= 1 for u in nbrs)
    )
    err = sum_x_alpha(g, errors)
    minus_v, _ = delete_vertices(g, [v])
    minus_nv, _ = delete_vertices(g, [v, *nbrs])
    rhs = profile_sum([_y_slice_of(minus_v, d), _product_slice(empty_graph(1), minus_nv, d, True), err])
    return SliceCheck(d, _y_slice_of(g, d), rhs, err)


def leaf_clan(g: Graph, v: int, n: int) -> tuple[Graph, int, tuple[int, ...]]:
    """G with the leaf v blown up into K_n: (clan graph, index of u, indices of the K_n copies)."""
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} not in graph on {g.n} vertices")
    if g.degree(v) != 1:
        raise NotALeaf(f"vertex {v} has degree {g.degree(v)}")
    if n < 2:
        raise OutOfRange("the leaf clique needs at least two vertices")
    weights = [1] * g.n
    weights[v] = n
    clan, blocks = clan_graph(g, weights)
    u = g.neighbors[v][0]
    return clan, blocks.index(u), tuple(i for i, b in enumerate(blocks) if b == v)


def verify_prop_3_4(
    g: Graph,
    v: int,
    n: int,
    d: int,
    vertex_limit: int | None = ORACLE_VERTEX_LIMIT,
    degree_limit: int | None = ORACLE_DEGREE_LIMIT,
) -> SliceCheck:
    """Degree-d slice of Y_{G_v^n} = Y_{G-v} + (Y_{K_n} - 1) Y_{G-u-v} + sum of
    X^alpha over alpha on G_v^n with alpha(u) >= 1 and some copy of v positive."""
    clan, u_new, copies = leaf_clan(g, v, n)
    _guard(clan, d, vertex_limit, degree_limit)
    u = g.neighbors[v][0]
    errors = (
        alpha for alpha in enumerate_weight_maps(clan, d, None, None)
        if alpha[u_new] >= 1 and any(alpha[c] >= 1 for c in copies)
    )
    err = sum_x_alpha(clan, errors)
    minus_v, _ = delete_vertices(g, [v])
    minus_uv, _ = delete_vertices(g, [u, v])
    rhs = profile_sum([_y_slice_of(minus_v, d), _product_slice(complete_graph(n), minus_uv, d, True), err])
    return SliceCheck(d, _y_slice_of(clan, d), rhs, err)
