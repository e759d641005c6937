"""Arithmetic in the span of Schur functions with at most two rows.

Setting all but two variables of a symmetric function to zero kills every
s_lambda with three or more rows and is injective on the rest, so a two-row
profile is stored as exact coefficients and multiplied by passing through the
symmetric polynomial it evaluates to in two variables.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ConstantTermNotOne, NotSymmetric, ParseError

Partition2 = tuple[int, int]


def _check_shape(k: int, l: int) -> Partition2:
    if not (k >= l >= 0):
        raise ValueError(f"({k}, {l}) is not a partition with at most two parts")
    return (k, l)


def _sort_key(shape: Partition2) -> tuple[int, int]:
    return (shape[0] + shape[1], shape[0])


class TwoRowProfile:
    """Finitely supported map from two-row shapes (k, l), k >= l >= 0, to rationals."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[Partition2, object] | Iterable[tuple[Partition2, object]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[Partition2, Fraction] = {}
        for (k, l), c in items:
            shape = _check_shape(int(k), int(l))
            c = Fraction(c)
            if c:
                clean[shape] = clean.get(shape, Fraction(0)) + c
                if not clean[shape]:
                    del clean[shape]
        self._entries = clean
        self._hash = None

    @classmethod
    def _trusted(cls, entries: dict[Partition2, Fraction]) -> TwoRowProfile:
        obj = cls.__new__(cls)
        obj._entries = entries
        obj._hash = None
        return obj

    @classmethod
    def one(cls) -> TwoRowProfile:
        return cls._trusted({(0, 0): Fraction(1)})

    def __getitem__(self, shape: Partition2) -> Fraction:
        return self._entries.get(tuple(shape), Fraction(0))

    def items(self) -> list[tuple[Partition2, Fraction]]:
        return sorted(self._entries.items(), key=lambda kv: _sort_key(kv[0]))

    def __iter__(self) -> Iterator[Partition2]:
        return iter(sorted(self._entries, key=_sort_key))

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, TwoRowProfile):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __add__(self, other: TwoRowProfile) -> TwoRowProfile:
        return profile_add(self, other)

    def __sub__(self, other: TwoRowProfile) -> TwoRowProfile:
        return profile_add(self, profile_scale(-1, other))

    def __neg__(self) -> TwoRowProfile:
        return profile_scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, TwoRowProfile):
            return profile_product(self, other)
        return profile_scale(other, self)

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        return {k + l for k, l in self._entries}

    def homogeneous_part(self, d: int) -> TwoRowProfile:
        return TwoRowProfile._trusted({s: c for s, c in self._entries.items() if s[0] + s[1] == d})

    def truncate(self, dmax: int) -> TwoRowProfile:
        return TwoRowProfile._trusted({s: c for s, c in self._entries.items() if s[0] + s[1] <= dmax})

    def __repr__(self) -> str:
        return f"TwoRowProfile({{{', '.join(f'{s}: {c!s}' for s, c in self.items())}}})"

    def __str__(self) -> str:
        if not self._entries:
            return "0"
        # within a degree, larger first row first: s(3,1) - s(2,2)
        order = sorted(self._entries, key=lambda s: (s[0] + s[1], -s[0]))
        out = []
        for shape in order:
            c = self._entries[shape]
            k, l = shape
            basis = "1" if shape == (0, 0) else (f"s({k})" if l == 0 else f"s({k},{l})")
            mag = abs(c)
            if shape == (0, 0):
                body = str(mag)
            else:
                body = basis if mag == 1 else f"{mag} {basis}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def to_json_obj(self) -> dict:
        return {
            "entries": [
                {"k": k, "l": l, "num": str(c.numerator), "den": str(c.denominator)}
                for (k, l), c in self.items()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> TwoRowProfile:
        try:
            doc = json.loads(text)
            return cls(((int(e["k"]), int(e["l"])), Fraction(int(e["num"]), int(e["den"]))) for e in doc["entries"])
        except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed profile JSON: {exc}") from exc


def schur(k: int, l: int = 0, coeff=1) -> TwoRowProfile:
    """The single term coeff * s_(k,l)."""
    return TwoRowProfile({_check_shape(k, l): coeff})


# ---------------------------------------------------------------------------
# two-variable evaluation
# ---------------------------------------------------------------------------

class TwoVarPoly:
    """Polynomial in x, y with rational coefficients; ``terms[(i, j)]`` multiplies x^i y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] = ()):
        clean = {}
        for (i, j), c in dict(terms).items():
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms = clean

    def __eq__(self, other) -> bool:
        if isinstance(other, TwoVarPoly):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other: TwoVarPoly) -> TwoVarPoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TwoVarPoly(out)

    def __mul__(self, other: TwoVarPoly) -> TwoVarPoly:
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in self.terms.items():
            for (p, q), b in other.terms.items():
                m = (i + p, j + q)
                out[m] = out.get(m, 0) + a * b
        return TwoVarPoly(out)

    def is_symmetric(self) -> bool:
        return all(self.terms.get((j, i), 0) == c for (i, j), c in self.terms.items())

    def __repr__(self) -> str:
        return f"TwoVarPoly({dict(sorted(self.terms.items()))})"


def _schur_monomials(k: int, l: int) -> Iterator[tuple[int, int]]:
    # s_(k,l)(x, y) = (xy)^l (x^{k-l} + x^{k-l-1} y + ... + y^{k-l})
    for i in range(k - l + 1):
        yield (l + i, k - i)


def profile_to_twovar(p: TwoRowProfile) -> TwoVarPoly:
    out: dict[tuple[int, int], Fraction] = {}
    for (k, l), c in p.items():
        for m in _schur_monomials(k, l):
            out[m] = out.get(m, 0) + c
    return TwoVarPoly(out)


def twovar_to_profile(q: TwoVarPoly) -> TwoRowProfile:
    """Invert :func:`profile_to_twovar` by reading off dominant monomials.

    The coefficient of x^i y^j (i >= j) equals the sum of [s_(k,l)] over
    k >= i, l <= j, so [s_(k,l)] = c(k,l) - c(k+1,l-1).
    """
    if not q.is_symmetric():
        raise NotSymmetric("two-variable polynomial is not symmetric in x and y")
    t = q.terms
    out: dict[Partition2, Fraction] = {}
    shapes = set()
    for i, j in t:
        if i >= j:
            shapes.add((i, j))
            if i - 1 >= j + 1:
                shapes.add((i - 1, j + 1))
    for i, j in shapes:
        v = Fraction(t.get((i, j), 0)) - (t.get((i + 1, j - 1), 0) if j >= 1 else 0)
        if v:
            out[(i, j)] = v
    return TwoRowProfile._trusted(out)


# ---------------------------------------------------------------------------
# profile arithmetic
# ---------------------------------------------------------------------------

def profile_add(p: TwoRowProfile, q: TwoRowProfile) -> TwoRowProfile:
    out = dict(p._entries)
    for s, c in q._entries.items():
        v = out.get(s, 0) + c
        if v:
            out[s] = v
        else:
            out.pop(s, None)
    return TwoRowProfile._trusted(out)


def profile_scale(c, p: TwoRowProfile) -> TwoRowProfile:
    c = Fraction(c)
    if not c:
        return TwoRowProfile()
    return TwoRowProfile._trusted({s: c * v for s, v in p._entries.items()})


def profile_sum(profiles: Iterable[TwoRowProfile]) -> TwoRowProfile:
    out: dict[Partition2, Fraction] = {}
    for p in profiles:
        for s, c in p._entries.items():
            out[s] = out.get(s, 0) + c
    return TwoRowProfile._trusted({s: c for s, c in out.items() if c})


def profile_product(p: TwoRowProfile, q: TwoRowProfile) -> TwoRowProfile:
    """Two-row part of the product; three-row terms of the factors never
    contribute to it, so multiplying the two-variable evaluations is exact."""
    if not p or not q:
        return TwoRowProfile()
    return twovar_to_profile(profile_to_twovar(p) * profile_to_twovar(q))


# ---------------------------------------------------------------------------
# F_P and positivity
# ---------------------------------------------------------------------------

def fp_profile(p: Sequence[int] | object, dmax: int) -> TwoRowProfile:
    """Two-row part of F_P = prod_i P(x_i) up to total degree ``dmax``.

    The coefficient of s_(k,l) is the 2x2 Toeplitz minor a_k a_l - a_{k+1} a_{l-1}.
    """
    a = list(getattr(p, "coeffs", p))
    if not a or a[0] != 1:
        raise ConstantTermNotOne("F_P needs P(0) = 1")

    def coef(j: int) -> int:
        return a[j] if 0 <= j < len(a) else 0

    out = {}
    for k in range(dmax + 1):
        for l in range(min(k, dmax - k) + 1):
            v = coef(k) * coef(l) - coef(k + 1) * coef(l - 1)
            if v:
                out[(k, l)] = Fraction(v)
    return TwoRowProfile._trusted(out)


@dataclass(frozen=True)
class PositivityVerdict:
    positive: bool
    witness: Partition2 | None = None

    def __bool__(self) -> bool:
        return self.positive


def is_2s_positive(p: TwoRowProfile) -> PositivityVerdict:
    for shape, c in p.items():
        if c < 0:
            return PositivityVerdict(False, shape)
    return PositivityVerdict(True)


# ---------------------------------------------------------------------------
# homogeneous profiles as coefficient sequences
# ---------------------------------------------------------------------------
#
# A homogeneous symmetric two-variable polynomial of degree N is a palindromic
# sequence c with c[j] multiplying x^(N-j) y^j.  Its s_(k,l) coefficient is
# c[l] - c[l-1], products are convolutions, and positive scaling keeps the
# sign pattern, so positivity checks can run on integer sequences.

def sequence_to_profile(c: Sequence) -> TwoRowProfile:
    n = len(c) - 1
    out = {}
    for l in range(n // 2 + 1):
        v = Fraction(c[l]) - (Fraction(c[l - 1]) if l else 0)
        if v:
            out[(n - l, l)] = v
    return TwoRowProfile._trusted(out)


def profile_to_sequence(p: TwoRowProfile, degree: int) -> list[Fraction]:
    """Inverse of :func:`sequence_to_profile` for a profile homogeneous of ``degree``."""
    q = profile_to_twovar(p).terms
    for i, j in q:
        if i + j != degree:
            raise ValueError(f"profile is not homogeneous of degree {degree}")
    return [q.get((degree - j, j), Fraction(0)) for j in range(degree + 1)]


def convolve(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def sequence_is_2s_positive(c: Sequence) -> bool:
    if not c:
        return True
    if c[0] < 0:
        return False
    return all(c[l] >= c[l - 1] for l in range(1, (len(c) - 1) // 2 + 1))
