import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unramified.rootchar import (
    GL,
    GSp,
    GSpinD,
    HighestWeight,
    SatakePoint,
    SingularPointError,
    Sp,
    SpinD,
    char_value,
    dominant_weights_up_to,
    random_satake,
    random_satake_bundle,
    Constraint,
    weight,
    weight_multiset,
    weyl_character,
    weyl_dimension,
)

H = Fraction(1, 2)


from oracles import complete_homogeneous, elementary, partitions, ssyt_schur


# examples


def test_dominant_weights_enumeration():
    assert [w.coords for w in dominant_weights_up_to(GL(2), 1)] == [(0, 0), (1, 0)]
    assert [w.coords for w in dominant_weights_up_to(Sp(2), 0)] == [(0, 0)]
    got = sorted(w.coords for w in dominant_weights_up_to(GL(3), 2))
    want = sorted(p for t in range(3) for p in partitions(t, 3))
    assert got == want == [(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 0, 0)]
    assert dominant_weights_up_to(GL(3), -1) == []


def test_gl2_examples():
    pt = SatakePoint(GL(2), (2, 3))
    assert char_value(weight(GL(2), 1, 0), pt) == 5
    assert char_value(weight(GL(2), 1, 1), pt) == 6


def test_sp4_adjoint_minus_trivial_at_point():
    # (1,1) of Sp(4) is the 5-dimensional module: weights ±e1±e2 and 0
    a, b = Fraction(2), Fraction(3)
    pt = SatakePoint(Sp(2), (a, b))
    oracle = a * b + a / b + b / a + 1 / (a * b) + 1
    assert char_value(weight(Sp(2), 1, 1), pt) == oracle


def test_dimensions():
    assert weyl_dimension(weight(GL(3), 0, 0, 0)) == 1
    assert weyl_dimension(weight(Sp(2), 1, 0)) == 4
    assert weyl_dimension(weight(SpinD(4), 0, 0, 0, 1)) == 8
    assert weyl_dimension(weight(SpinD(4), 1, 0, 0, 0)) == 8
    assert weyl_dimension(weight(SpinD(4), 0, 1, 0, 0)) == 28
    assert weyl_dimension(weight(SpinD(5), 0, 0, 0, 0, 1)) == 16


def test_half_spin_weights():
    ws = weight_multiset(weight(SpinD(4), 0, 0, 0, 1))
    assert all(m == 1 for _, m in ws)
    got = sorted(mu for mu, _ in ws)
    want = sorted(s for s in itertools.product((H, -H), repeat=4) if sum(1 for x in s if x < 0) % 2 == 0)
    assert got == want


def test_gsp_std_eigenvalues():
    pt = SatakePoint(GSp(2), (2, 5, 3))
    b0 = pt.similitude()
    assert b0 == 9
    assert sorted(pt.eigenvalues()) == sorted((Fraction(2), Fraction(5), b0 / 5, b0 / 2))
    assert char_value(weight(GSp(2), 1, 0), pt) == sum(pt.eigenvalues())


def test_weight_validation():
    with pytest.raises(ValueError):
        HighestWeight(GL(2), (0, 1))
    with pytest.raises(ValueError):
        HighestWeight(GL(2), (1, 0, 0))
    with pytest.raises(ValueError):
        HighestWeight(Sp(2), (1, 0), twist=1)
    with pytest.raises(ValueError):
        SatakePoint(SpinD(2), (2, 3, 5))


def test_ratio_raises_at_singular_point():
    pt = SatakePoint(GL(2), (2, 2))
    with pytest.raises(SingularPointError):
        weyl_character(weight(GL(2), 1, 0), pt, method="ratio")
    assert char_value(weight(GL(2), 1, 0), pt) == 4
    assert char_value(weight(GL(2), 2, 0), pt) == 12


def test_seeded_points_deterministic():
    p1 = random_satake(GL(2), 1)
    assert p1 == random_satake(GL(2), 1)
    a1, a2 = p1.values
    assert a1 != a2 and a1 and a2


def test_constraint_bundle():
    con = Constraint(((0, 2, 2), (1, 0, 1), (1, 1, 1), (1, 2, 1)), "omega")
    for seed in range(5):
        gsp, gl = random_satake_bundle([GSp(2), GL(3)], seed, [con])
        assert gsp.similitude() * gl.values[0] * gl.values[1] * gl.values[2] == 1


# oracle comparisons


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 10 ** 6))
def test_gl_character_matches_tableaux(n, total, seed):
    pt = random_satake(GL(n), seed)
    for lam in partitions(total, n):
        assert char_value(weight(GL(n), lam), pt) == ssyt_schur(lam, pt.values)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.integers(0, 10 ** 6))
def test_sp_rows_are_symmetric_powers(n, k, seed):
    pt = random_satake(Sp(n), seed)
    eig = pt.eigenvalues()
    assert char_value(weight(Sp(n), k), pt) == complete_homogeneous(k, eig)
    assert weyl_dimension(weight(Sp(n), k)) == comb(2 * n + k - 1, k)
    if n >= 2:
        # second exterior power = omega_2 + trivial
        assert char_value(weight(Sp(n), 1, 1), pt) == elementary(2, eig) - 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([GL(2), GL(3), Sp(2), GSp(2), SpinD(3), SpinD(4), GSpinD(3)]),
       st.integers(0, 3), st.integers(0, 10 ** 6))
def test_ratio_and_weight_sum_agree(group, bound, seed):
    pt = random_satake(group, seed)
    for hw in dominant_weights_up_to(group, bound):
        r = weyl_character(hw, pt, method="ratio")
        w = weyl_character(hw, pt, method="weights")
        assert r == w
        assert sum(m for _, m in weight_multiset(hw)) == weyl_dimension(hw)
