from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcschur.chromatic import two_row_X
from lcschur.corpus import all_graphs
from lcschur.errors import ConstantTermNotOne, NotSymmetric, ParseError
from lcschur.poly import IntPolynomial
from lcschur.schur2 import (
    TwoRowProfile,
    TwoVarPoly,
    convolve,
    fp_profile,
    is_2s_positive,
    profile_add,
    profile_product,
    profile_scale,
    profile_to_sequence,
    profile_to_twovar,
    schur,
    sequence_is_2s_positive,
    sequence_to_profile,
    twovar_to_profile,
)

F = Fraction


@st.composite
def profiles(draw, max_degree: int = 12, max_terms: int = 6):
    entries = {}
    for _ in range(draw(st.integers(0, max_terms))):
        d = draw(st.integers(0, max_degree))
        l = draw(st.integers(0, d // 2))
        num = draw(st.integers(-20, 20))
        den = draw(st.integers(1, 9))
        entries[(d - l, l)] = F(num, den)
    return TwoRowProfile(entries)


def evaluate(q: TwoVarPoly, x, y):
    return sum(c * x ** i * y ** j for (i, j), c in q.terms.items())


def twovar_of_poly(p: IntPolynomial, variable: int) -> TwoVarPoly:
    return TwoVarPoly({((j, 0) if variable == 0 else (0, j)): c for j, c in enumerate(p.coeffs)})


# --- two-variable evaluation ----------------------------------------------------

def test_profile_to_twovar_examples():
    assert profile_to_twovar(schur(1, 1)) == TwoVarPoly({(1, 1): 1})
    assert profile_to_twovar(schur(2)) == TwoVarPoly({(2, 0): 1, (1, 1): 1, (0, 2): 1})
    assert profile_to_twovar(schur(2, 2)) == TwoVarPoly({(2, 2): 1})


def test_twovar_to_profile_examples():
    assert twovar_to_profile(TwoVarPoly({(1, 1): 1})) == schur(1, 1)
    assert twovar_to_profile(TwoVarPoly({(2, 0): 1, (1, 1): 1, (0, 2): 1})) == schur(2)
    with pytest.raises(NotSymmetric):
        twovar_to_profile(TwoVarPoly({(2, 0): 1}))


@given(profiles())
def test_round_trip(p):
    assert twovar_to_profile(profile_to_twovar(p)) == p


def test_round_trip_thousand_profiles():
    import random

    rng = random.Random(99)
    for _ in range(1000):
        entries = {}
        for _ in range(rng.randint(0, 8)):
            d = rng.randint(0, 12)
            l = rng.randint(0, d // 2)
            entries[(d - l, l)] = F(rng.randint(-30, 30), rng.randint(1, 12))
        p = TwoRowProfile(entries)
        assert twovar_to_profile(profile_to_twovar(p)) == p


# --- arithmetic ------------------------------------------------------------------

def test_product_examples():
    assert profile_product(schur(1), schur(1)) == schur(2) + schur(1, 1)
    assert profile_product(schur(1, 1), schur(1, 1)) == schur(2, 2)
    p = schur(3, 1) - schur(2, 2)
    assert profile_product(p, TwoRowProfile.one()) == p


def test_pieri_rule_for_one_box():
    # s_(k,l) s_(1) = s_(k+1,l) + s_(k,l+1) in two rows, the second only when l < k
    for k in range(7):
        for l in range(k + 1):
            expected = schur(k + 1, l) + (schur(k, l + 1) if l < k else TwoRowProfile())
            assert profile_product(schur(k, l), schur(1)) == expected


def test_add_and_scale_examples():
    p = schur(3, 1) - schur(2, 2)
    assert profile_add(p, profile_scale(-1, p)) == TwoRowProfile()
    assert (schur(3, 1) - schur(2, 2)) + schur(2, 2) == schur(3, 1)
    assert profile_scale(F(1, 2), profile_scale(2, schur(2, 1))) == schur(2, 1)


@given(profiles(max_degree=6), profiles(max_degree=6), profiles(max_degree=6))
def test_product_commutative_and_associative(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)


@given(profiles(max_degree=6), profiles(max_degree=6), st.integers(-3, 3), st.integers(-3, 3))
def test_product_is_evaluation_homomorphism(p, q, x, y):
    lhs = evaluate(profile_to_twovar(p * q), x, y)
    assert lhs == evaluate(profile_to_twovar(p), x, y) * evaluate(profile_to_twovar(q), x, y)


def test_product_of_positive_graph_profiles_is_positive():
    harvested = [two_row_X(g) for n in range(1, 6) for g in all_graphs(n)]
    positive = [p for p in harvested if p and is_2s_positive(p)]
    assert len(positive) > 20
    for i, p in enumerate(positive):
        for q in positive[i::7]:
            assert is_2s_positive(p * q)


# --- F_P -------------------------------------------------------------------------

def test_fp_profile_examples():
    claw = fp_profile(IntPolynomial([1, 4, 3, 1]), 8)
    assert claw[(2, 2)] == 5
    p = fp_profile(IntPolynomial([1, 1]), 6)
    assert p[(1, 1)] == 1 and p[(2, 0)] == 0 and p[(1, 0)] == 1
    # a_2 a_1 - a_3 a_0 = 1 * 2 - 0
    square = IntPolynomial([1, 2, 1])
    assert fp_profile(square, 6)[(2, 1)] == 2 == fp_by_evaluation(square, 6)[(2, 1)]
    with pytest.raises(ConstantTermNotOne):
        fp_profile(IntPolynomial([2, 1]), 4)


def fp_by_evaluation(p: IntPolynomial, dmax: int) -> TwoRowProfile:
    q = twovar_of_poly(p, 0) * twovar_of_poly(p, 1)
    return twovar_to_profile(q).truncate(dmax)


def test_fp_profile_matches_evaluation_oracle():
    import random

    rng = random.Random(3)
    for _ in range(200):
        coeffs = [1] + [rng.randint(-6, 12) for _ in range(rng.randint(0, 6))]
        p = IntPolynomial(coeffs)
        d = rng.randint(0, 14)
        assert fp_profile(p, d) == fp_by_evaluation(p, d)


@given(st.lists(st.integers(-10, 30), max_size=7))
def test_fp_diagonal_is_the_lc_minor(tail):
    p = IntPolynomial([1] + tail)
    prof = fp_profile(p, 2 * len(tail) + 4)
    for k in range(len(tail) + 2):
        assert prof[(k, k)] == p[k] * p[k] - p[k - 1] * p[k + 1] if k else prof[(0, 0)] == 1


# --- positivity --------------------------------------------------------------------

def test_positivity_examples():
    v = is_2s_positive(schur(3, 1) - schur(2, 2))
    assert not v.positive and v.witness == (2, 2)
    assert is_2s_positive(TwoRowProfile()).positive
    assert is_2s_positive(schur(2, 2, 5)).positive


# --- coefficient sequences ---------------------------------------------------------

@st.composite
def palindromes(draw):
    half = draw(st.lists(st.integers(-6, 9), min_size=1, max_size=6))
    odd = draw(st.booleans())
    return half + half[::-1][1:] if odd else half + half[::-1]


@given(palindromes())
def test_sequence_profile_round_trip(c):
    p = sequence_to_profile(c)
    assert profile_to_sequence(p, len(c) - 1) == [F(x) for x in c]
    assert twovar_to_profile(TwoVarPoly({(len(c) - 1 - j, j): x for j, x in enumerate(c)})) == p
    assert sequence_is_2s_positive(c) == is_2s_positive(p).positive


@given(palindromes(), palindromes())
def test_convolution_is_the_product(a, b):
    assert sequence_to_profile(convolve(a, b)) == sequence_to_profile(a) * sequence_to_profile(b)


def test_profile_to_sequence_rejects_mixed_degrees():
    with pytest.raises(ValueError):
        profile_to_sequence(schur(2) + schur(1), 2)


# --- plumbing ------------------------------------------------------------------------

def test_string_form():
    assert str(schur(3, 1) - schur(2, 2)) == "s(3,1) - s(2,2)"
    assert str(schur(2) + schur(1, 1)) == "s(2) + s(1,1)"
    assert str(schur(2, 2, 2)) == "2 s(2,2)"
    assert str(TwoRowProfile()) == "0"
    assert str(schur(2, 1, F(-1, 2))) == "-1/2 s(2,1)"


@given(profiles())
def test_json_round_trip(p):
    assert TwoRowProfile.from_json(p.to_json()) == p


def test_json_is_sorted_by_degree_then_first_row():
    p = schur(2, 2, -1) + schur(3, 1) + schur(1)
    keys = [(e["k"], e["l"]) for e in p.to_json_obj()["entries"]]
    assert keys == [(1, 0), (2, 2), (3, 1)]
    with pytest.raises(ParseError):
        TwoRowProfile.from_json('{"entries": [{"k": 1}]}')


def test_invalid_shape_rejected():
    with pytest.raises(ValueError):
        schur(1, 2)
