from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import complete_homogeneous
from unramified.exactring import BiSeries, ExactScalar, geom_inverse
from unramified.lfactor import cauchy_lhs, cauchy_lhs_rep, cauchy_rhs, l_factor, rep_weights, spin, std, tensor
from unramified.rootchar import GL, GSp, GSpinD, SatakePoint, Sp, SpinD, random_satake, random_satake_bundle


def values(rep, points):
    return sorted(w(points) for w in rep_weights(rep))


def test_std_weights():
    pt = SatakePoint(GL(3), (2, 3, 5))
    assert values(tensor(std(GL(3))), [pt]) == [2, 3, 5]
    g = SatakePoint(GSp(2), (2, 5, 3))
    b0 = g.similitude()
    assert values(tensor(std(GSp(2))), [g]) == sorted([Fraction(2), Fraction(5), b0 / 5, b0 / 2])


def test_spin_has_eight_weights():
    assert len(rep_weights(tensor(spin(SpinD(4))))) == 8
    assert len(rep_weights(tensor(spin(GSpinD(5))))) == 16
    assert len(rep_weights(tensor(std(SpinD(4))))) == 8


def test_gl1_examples():
    a, b = Fraction(3, 2), Fraction(-2, 5)
    pa, pb = SatakePoint(GL(1), (a,)), SatakePoint(GL(1), (b,))
    assert l_factor(tensor(std(GL(1))), [pa], "x", (4, 0)) == BiSeries((4, 0), {(0, 0): 1, (2, 0): a, (4, 0): a * a})
    got = l_factor(tensor(std(GL(1)), std(GL(1))), [pa, pb], "y", (0, 8))
    assert got == geom_inverse(a * b, (0, 2), (0, 8))


def test_tensor_x2_coefficient():
    g = random_satake(GSp(2), 3)
    h = random_satake(GL(2), 4)
    got = l_factor(tensor(std(GSp(2)), std(GL(2))), [g, h], "x", (2, 0)).coefficient(2, 0)
    want = sum(b * a for b in g.eigenvalues() for a in h.values)
    assert got == ExactScalar(want)


def test_point_mismatch_rejected():
    with pytest.raises(ValueError):
        l_factor(tensor(std(GL(2))), [SatakePoint(GL(3), (2, 3, 5))], "x", (4, 0))
    with pytest.raises(ValueError):
        l_factor(tensor(std(GL(2))), [], "x", (4, 0))


def test_cauchy_a_low_terms():
    tau, pi = random_satake_bundle([GSp(2), GL(2)], 11)
    rhs = cauchy_rhs("a", [tau, pi], (2, 0))
    assert rhs.coefficient(0, 0) == ExactScalar(1)
    assert rhs.coefficient(2, 0) == ExactScalar(sum(tau.eigenvalues()) * sum(pi.values))


def test_cauchy_lhs_groups():
    _, variables, groups = cauchy_lhs_rep("d", {})
    assert variables == ["x", "y"] and groups == [SpinD(4)]
    with pytest.raises(ValueError):
        cauchy_lhs_rep("z", {})


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([GL(2), GL(3), Sp(2), GSp(2), SpinD(4)]), st.integers(0, 10 ** 6))
def test_coefficients_are_complete_homogeneous(group, seed):
    pt = random_satake(group, seed)
    hw = spin(group) if group.is_d else std(group)
    rep = tensor(hw)
    ws = [w([pt]) for w in rep_weights(rep)]
    s = l_factor(rep, [pt], "x", (8, 0))
    for k in range(5):
        assert s.coefficient(2 * k, 0) == ExactScalar(complete_homogeneous(k, ws))
        assert s.coefficient(2 * k + 1, 0) == ExactScalar(0)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cauchy_d_product_side_is_two_l_factors(seed):
    (sigma,) = random_satake_bundle([SpinD(4)], seed)
    box = (4, 4)
    lhs = cauchy_lhs("d", [sigma], box)
    want = l_factor(tensor(std(SpinD(4))), [sigma], "x", box) * l_factor(tensor(spin(SpinD(4))), [sigma], "y", box)
    assert lhs == want
