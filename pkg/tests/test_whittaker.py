from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ssyt_schur
from unramified.exactring import ONE, ZERO, ExactScalar
from unramified.rootchar import GL, GSp, GSpinD, SatakePoint, random_satake
from unramified.whittaker import (
    GSO,
    Cocharacter,
    GLp,
    GSpinB,
    cs_value,
    delta_half,
    is_dominant,
    two_rho_pairing,
    valuations_to_gso,
    valuations_to_gspin5,
)


def test_dominance_examples():
    assert is_dominant(Cocharacter(GLp(3), (2, 1, 0)))
    assert not is_dominant(Cocharacter(GLp(2), (0, 1)))
    assert is_dominant(Cocharacter(GSpinB(2), (1, 1)))
    assert not is_dominant(Cocharacter(GSpinB(2), (1, -1)))


def test_delta_examples():
    for g, k in ((GLp(3), (0, 0, 0)), (GSpinB(2), (0, 0)), (GSO(3), (0, 0, 0, 0))):
        assert delta_half(Cocharacter(g, k)) == ONE
    assert delta_half(Cocharacter(GLp(2), (1, 0))) == ExactScalar.u_power(-1)
    assert delta_half(Cocharacter(GSpinB(2), (1, 0))) == ExactScalar.u_power(-3)


def test_two_rho_gl_oracle():
    # sum over positive roots e_i - e_j
    k = (5, 2, -1, -4)
    want = sum(k[i] - k[j] for i in range(4) for j in range(i + 1, 4))
    assert two_rho_pairing(Cocharacter(GLp(4), k)) == want


def test_cs_examples():
    a1, a2 = Fraction(2), Fraction(7, 3)
    pt = SatakePoint(GL(2), (a1, a2))
    assert cs_value(Cocharacter(GLp(2), (0, 0)), pt) == ONE
    assert cs_value(Cocharacter(GLp(2), (1, 0)), pt) == ExactScalar.u_power(-1, a1 + a2)
    assert cs_value(Cocharacter(GLp(2), (0, 1)), pt) == ZERO


def test_cs_gspin5_std():
    pt = SatakePoint(GSp(2), (2, 5, 3))
    want = ExactScalar.u_power(-3, sum(pt.eigenvalues()))
    assert cs_value(Cocharacter(GSpinB(2), (1, 0)), pt) == want


def test_cs_central_twist():
    pt = SatakePoint(GL(2), (2, 3))
    c = Cocharacter(GLp(2), (1, 0), central=2)
    assert cs_value(c, pt) == ExactScalar.u_power(-1, 5 * 36)


def test_point_group_checked():
    with pytest.raises(ValueError):
        cs_value(Cocharacter(GLp(2), (1, 0)), SatakePoint(GL(3), (2, 3, 5)))


def test_gso_dictionary():
    c = valuations_to_gso((3, 1, 0, 3, 2, 0))
    assert c.group == GSO(3) and c.exponents == (3, 1, 0, 3)
    with pytest.raises(ValueError):
        valuations_to_gso((1, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        valuations_to_gso((1, 0, 0))


def test_gso_cs_needs_gspin_point():
    pt = random_satake(GSpinD(3), 4)
    assert cs_value(Cocharacter(GSO(3), (0, 0, 0, 0)), pt) == ONE


def test_gspin5_dictionary_dominance():
    # diag(t1, t2, l/t2, l/t1) is dominant in GSp(4) iff v(t1) >= v(t2) >= v(l/t2)
    for v1 in range(-2, 3):
        for v2 in range(-2, 3):
            for lam in range(-3, 4):
                gsp_dominant = v1 >= v2 >= lam - v2
                c = valuations_to_gspin5((v1, v2, lam - v2, lam - v1))
                assert is_dominant(c) == gsp_dominant


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.lists(st.integers(-2, 3), min_size=4, max_size=4), st.integers(0, 10 ** 6))
def test_cs_gl_matches_tableaux(n, ks, seed):
    k = tuple(ks[:n])
    pt = random_satake(GL(n), seed)
    c = Cocharacter(GLp(n), k)
    got = cs_value(c, pt)
    if any(k[i] < k[i + 1] for i in range(n - 1)):
        assert got == ZERO
        return
    shift = min(k)
    shape = tuple(x - shift for x in k)
    det = Fraction(1)
    for a in pt.values:
        det *= a
    pairing = sum(k[i] - k[j] for i in range(n) for j in range(i + 1, n))
    assert got == ExactScalar.u_power(-pairing, ssyt_schur(shape, pt.values) * det ** shift)
