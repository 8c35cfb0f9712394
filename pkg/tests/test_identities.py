from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ssyt_schur
from unramified.exactring import ExactScalar, LaurentXY
from unramified.identities import (
    IdentityReport,
    check_cauchy,
    check_g_equivalence,
    check_schur_gl,
    check_schur_sp,
    g_function,
    g_function_intermediate,
    schur_gl_sides,
    schur_sp_sides,
)
from unramified.rootchar import GL, Sp, SatakePoint, char_value, random_satake, weight


def test_gl_product_n2():
    a1, a2 = Fraction(2), Fraction(5, 3)
    pt = SatakePoint(GL(2), (a1, a2))
    lhs, rhs = schur_gl_sides(2, 1, 1, pt)
    assert lhs == (a1 + a2) ** 2
    assert rhs == char_value(weight(GL(2), 2, 0), pt) + char_value(weight(GL(2), 1, 1), pt)
    assert lhs == rhs


def test_gl_product_k0_collapses():
    pt = SatakePoint(GL(3), (2, 3, 5))
    lhs, rhs = schur_gl_sides(3, 0, 4, pt)
    assert lhs == rhs == char_value(weight(GL(3), 4), pt)


def test_gl_product_against_tableaux():
    xs = (Fraction(2), Fraction(3), Fraction(5))
    pt = SatakePoint(GL(3), xs)
    lhs, rhs = schur_gl_sides(3, 2, 1, pt)
    assert lhs == ssyt_schur((2,), xs) * ssyt_schur((1,), xs)
    assert rhs == ssyt_schur((2, 1), xs) + ssyt_schur((3,), xs)
    assert check_schur_gl(3, 2, 1, pt).passed


def test_sp_product_n2():
    pt = random_satake(Sp(2), 5)
    lhs, rhs = schur_sp_sides(2, 1, 1, pt)
    chi = lambda *lam: char_value(weight(Sp(2), *lam), pt)  # noqa: E731
    assert lhs == chi(1) ** 2
    assert rhs == 1 + chi(2, 0) + chi(1, 1)
    assert lhs == rhs
    lhs, rhs = schur_sp_sides(2, 1, 2, pt)
    assert rhs == chi(0) * chi(1) + chi(3, 0) + chi(2, 1)


def test_schur_rejects_bad_ranges():
    pt = random_satake(GL(2), 0)
    with pytest.raises(ValueError):
        check_schur_gl(1, 1, 1, random_satake(GL(1), 0))
    with pytest.raises(ValueError):
        check_schur_sp(2, 0, 1, random_satake(Sp(2), 0))
    assert check_schur_gl(2, 3, 5, pt).passed


def g_direct(N, chi):
    """|a|^{1-s} chi(a)^{-1} sum_r (chi q^{1-2s})^r with q^{-s} = x^2 and q = u^2."""
    out = LaurentXY()
    for r in range(N + 1):
        out = out + LaurentXY({(2 * (2 * r - N), 0): ExactScalar.u_power(2 * (r - N), chi ** (r - N))})
    return out


def test_g_function_examples():
    assert g_function(0, Fraction(3)) == LaurentXY({(0, 0): 1})
    assert g_function(-1, Fraction(3)) == LaurentXY()
    assert g_function(1, Fraction(3)) == g_direct(1, Fraction(3))
    chi = Fraction(7, 3)
    assert g_function(10, chi) == g_function_intermediate(10, chi) == g_direct(10, chi)
    with pytest.raises(ValueError):
        g_function(2, 0)


def test_g_equivalence_report():
    r = check_g_equivalence(10, Fraction(7, 3))
    assert r.passed and r.extra["term_counts"] == {n: n + 1 for n in range(11)}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 12), st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool))
def test_g_closed_form_property(N, chi):
    assert g_function(N, chi) == g_direct(N, chi)
    assert len(g_function(N, chi)) == N + 1


def test_report_invariant():
    with pytest.raises(ValueError):
        IdentityReport("x", {}, True, {"oops": 1})
    with pytest.raises(ValueError):
        IdentityReport("x", {}, False, None)


@pytest.mark.parametrize("case,ranks,box", [
    ("a", {"n": 2}, (6, 0)), ("b", {"m": 4}, (4, 0)), ("c", {"n": 3}, (4, 0)), ("d", {}, (4, 4)), ("e", {}, (6, 0)),
])
def test_cauchy_small_boxes(case, ranks, box):
    r = check_cauchy(case, ranks, box, trials=1, seed=3)
    assert r.passed, r.mismatch
    assert r.extra["even_support"]


def test_cauchy_b_needs_rank_four():
    with pytest.raises(ValueError):
        check_cauchy("b", {"m": 3}, (4, 0))
