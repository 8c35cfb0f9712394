import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unramified.exactring import ExactScalar
from unramified.lfactor import l_factor, std, tensor
from unramified.zeta import (
    CASE_NAMES,
    NonFiniteEnumeration,
    ZetaCase,
    case_points,
    evaluate_zeta,
    expected_l_product,
    get_case,
    lattice_points,
    q_balance,
    verify_zeta,
)

SMALL = [
    ("MultiGL", None, 2, (4, 4)), ("MultiGL", None, 3, (4, 4)), ("MultiGSpin", None, 2, (4, 4)),
    ("GSpinGL", 2, 4, (4, 0)), ("GSpinGL", 2, 3, (4, 0)), ("GSpinGL", 3, 3, (4, 0)), ("GSpinGL", 3, 2, (4, 0)),
    ("D5", None, None, (6, 0)), ("D4", None, None, (4, 4)),
    ("GlueGLGL", 2, 2, (4, 4)), ("GlueGLGSpin", 2, 2, (4, 4)), ("GlueGSpinGSpin", 2, 2, (4, 4)),
]


def brute_points(case, box, radius=8):
    """Every integer vector in a cube that meets the support rows and degree limits."""
    forms = case.degree_forms
    if forms is None:
        _, xf, yf = case.grid_forms()
        forms = [("x", xf), ("y", yf)]
    lim = {"x": box[0], "y": box[1], "xy": box[0] + box[1]}
    out = []
    for m in itertools.product(range(-radius, radius + 1), repeat=case.nvars):
        if all(sum(c * v for c, v in zip(coeffs, m)) + k >= 0 for coeffs, k in case.region) and \
                all(sum(f * v for f, v in zip(form, m)) <= lim[kind] for kind, form in forms):
            out.append(m)
    return sorted(out)


def test_case_names():
    assert set(CASE_NAMES) >= {"MultiGL", "MultiGSpin", "GSpinGL", "D4", "D5", "GlueGLGL"}
    with pytest.raises(ValueError):
        get_case("Nope")


def test_multigl_lattice_points_by_hand():
    assert sorted(lattice_points(get_case("MultiGL", None, 2), (2, 2))) == [(0, 0), (0, 1), (1, 0), (2, 0)]


@pytest.mark.parametrize("name,m,n,box", [("MultiGL", None, 2, (4, 4)), ("GSpinGL", 2, 4, (4, 0)),
                                          ("D5", None, None, (4, 0)), ("GlueGLGL", 2, 2, (2, 2))])
def test_lattice_points_match_brute_force(name, m, n, box):
    case = get_case(name, m, n)
    got = sorted(lattice_points(case, box))
    assert (0,) * case.nvars in got
    assert got == brute_points(case, box, radius=4 if case.nvars > 4 else 8)


def test_unbounded_support_detected():
    case = get_case("MultiGL", None, 2)
    open_cone = ZetaCase("open", {}, 1, case.exponents[:1], [], lambda v: [], [], degree_forms=[("x", (0,))])
    with pytest.raises(NonFiniteEnumeration):
        list(lattice_points(open_cone, (2, 0)))


def test_multigl_x2_coefficient():
    case = get_case("MultiGL", None, 2)
    pts = case_points(case, 5)
    tau, _chi, mu = pts
    res = evaluate_zeta(case, pts, (2, 0))
    assert res.series.coefficient(0, 0) == ExactScalar(1)
    assert res.series.coefficient(2, 0) == ExactScalar(mu.values[0] * sum(tau.values))


def test_gspingl33_against_independent_l_factor():
    case = get_case("GSpinGL", 3, 3)
    for seed in range(2):
        tau, pi = case_points(case, seed)
        assert tau.similitude() * pi.central() == 1
        series = evaluate_zeta(case, [tau, pi], (4, 0)).series
        assert series == l_factor(tensor(std(tau.group), std(pi.group)), [tau, pi], "x", (4, 0))


@pytest.mark.parametrize("name,m,n,box", SMALL)
def test_small_boxes_pass(name, m, n, box):
    r = verify_zeta(get_case(name, m, n), box, trials=1, seed=2)
    assert r.passed, r.mismatch
    assert r.extra["even_support"]


@pytest.mark.parametrize("name,m,n,box", SMALL)
def test_constant_term(name, m, n, box):
    case = get_case(name, m, n)
    pts = case_points(case, 0)
    lhs = evaluate_zeta(case, pts, (0, 0)).series
    assert lhs.coefficient(0, 0) == expected_l_product(case, pts, (0, 0)).coefficient(0, 0) == ExactScalar(1)


@pytest.mark.parametrize("name,m,n,box", SMALL)
def test_corrected_cases_are_q_balanced(name, m, n, box):
    case = get_case(name, m, n)
    bal = {q_balance(case, p) for p in lattice_points(case, box)}
    assert bal <= {0, None}


@pytest.mark.parametrize("name,m,n,box", [("D5", None, None, (6, 0)), ("GlueGLGL", 2, 2, (4, 4)),
                                          ("GSpinGL", 3, 3, (6, 0))])
def test_stated_forms_fail_and_corrections_are_reported(name, m, n, box):
    stated = get_case(name, m, n, corrected=False)
    fixed = get_case(name, m, n, corrected=True)
    assert not stated.corrections and fixed.corrections
    assert not verify_zeta(stated, box, trials=1, seed=0).passed
    r = verify_zeta(fixed, box, trials=1, seed=0)
    assert r.passed and r.extra["corrections"]


def test_d4_records_torus_note():
    r = verify_zeta(get_case("D4"), (2, 2), trials=1)
    assert r.passed and r.extra["notes"]


def test_derived_flags():
    assert get_case("GSpinGL", 3, 2).derived
    assert get_case("GlueGLGSpin", 2, 2).derived
    assert not get_case("MultiGL", None, 3).derived


def test_omega_knob_is_off_by_default():
    r = verify_zeta(get_case("MultiGL", None, 2), (2, 2), trials=1)
    assert r.extra["omega_twist_knob"] == "off"


@settings(max_examples=8, deadline=None)
@given(st.sampled_from(["MultiGL", "GlueGLGL"]), st.integers(0, 10 ** 6))
def test_random_seeds(name, seed):
    case = get_case(name, 2, 2) if name == "GlueGLGL" else get_case(name, None, 2)
    assert verify_zeta(case, (4, 4), trials=1, seed=seed).passed
