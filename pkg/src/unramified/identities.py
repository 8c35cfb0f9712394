"""Verifiers for the character identities, the G-function closed form and
the Cauchy-type identities. Every check is exact equality."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

from .exactring import Box, ExactScalar, LaurentXY
from .lfactor import cauchy_lhs, cauchy_lhs_rep, cauchy_rhs
from .rootchar import (
    GL,
    Sp,
    HighestWeight,
    SatakePoint,
    char_value,
    random_satake_bundle,
)


@dataclass
class IdentityReport:
    identity: str
    params: Dict[str, Any]
    passed: bool
    mismatch: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.mismatch is None):
            raise ValueError("a report passes exactly when it has no mismatch")

    def to_json(self) -> Dict[str, Any]:
        d = {
            "identity": self.identity,
            "params": self.params,
            "passed": self.passed,
            "mismatch": self.mismatch,
            "elapsed": round(self.elapsed, 4),
        }
        if self.extra:
            d["extra"] = self.extra
        return d


def _scalar_mismatch(lhs, rhs, **where) -> Optional[Dict[str, Any]]:
    if lhs == rhs:
        return None
    d = dict(where)
    d.update(lhs=ExactScalar(lhs).render() if not isinstance(lhs, ExactScalar) else lhs.render(),
             rhs=ExactScalar(rhs).render() if not isinstance(rhs, ExactScalar) else rhs.render())
    return d


def _series_mismatch(lhs, rhs, **where) -> Optional[Dict[str, Any]]:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    (i, j), a, b = diff
    d = dict(where)
    d.update(monomial=f"x^{i}*y^{j}", lhs=a.render(), rhs=b.render())
    return d


# character products


def _row(n: int, k: int) -> Tuple[int, ...]:
    return (k,) + (0,) * (n - 1)


def schur_gl_sides(n: int, k: int, j: int, point: SatakePoint) -> Tuple[Fraction, Fraction]:
    """chi(k)chi(j) and sum_t chi(max+t, min-t) for GL(n)."""
    g = GL(n)
    lhs = char_value(HighestWeight(g, _row(n, k)), point) * char_value(HighestWeight(g, _row(n, j)), point)
    hi, lo = max(k, j), min(k, j)
    rhs = Fraction(0)
    for t in range(lo + 1):
        lam = (hi + t, lo - t) + (0,) * (n - 2)
        rhs += char_value(HighestWeight(g, lam), point)
    return lhs, rhs


def check_schur_gl(n: int, k: int, j: int, point: SatakePoint) -> IdentityReport:
    t0 = time.perf_counter()
    if n < 2 or k < 0 or j < 0:
        raise ValueError("needs n >= 2 and k, j >= 0")
    lhs, rhs = schur_gl_sides(n, k, j, point)
    mm = _scalar_mismatch(lhs, rhs)
    return IdentityReport("schur_gl", {"n": n, "k": k, "j": j, "point": point.to_json()["values"]},
                          mm is None, mm, time.perf_counter() - t0)


def schur_sp_sides(n: int, k: int, j: int, point: SatakePoint) -> Tuple[Fraction, Fraction]:
    """Both sides of the Sp(2n) product rule at a similitude-1 point."""
    if point.group.family == "GSp":
        point = point.normalized()
    g = Sp(n)

    def chi(lam):
        return char_value(HighestWeight(g, tuple(lam) + (0,) * (n - len(lam))), point)

    lhs = chi((k,)) * chi((j,))
    rhs = chi((k - 1,)) * chi((j - 1,))
    for p in range(min(k, j) + 1):
        rhs += chi((k + j - p, p))
    return lhs, rhs


def check_schur_sp(n: int, k: int, j: int, point: SatakePoint) -> IdentityReport:
    t0 = time.perf_counter()
    if n < 2 or k < 1 or j < 1:
        raise ValueError("needs n >= 2 and k, j >= 1")
    lhs, rhs = schur_sp_sides(n, k, j, point)
    mm = _scalar_mismatch(lhs, rhs)
    return IdentityReport("schur_sp", {"n": n, "k": k, "j": j, "point": point.to_json()["values"]},
                          mm is None, mm, time.perf_counter() - t0)


# the G-function

# ``q^{-s'}`` is supplied as a half-grid monomial (u, x, y) so the same code
# serves G(a, s, chi) and G(a, (w - s + 1)/2, chi mu^{-1}).
S_PLAIN = (0, 2, 0)
S_MIRABOLIC = (-1, -1, 1)


def _qs_power(subst: Tuple[int, int, int], k: int, coeff: Fraction, u_extra: int) -> LaurentXY:
    a, b, c = subst
    return LaurentXY({(b * k, c * k): ExactScalar.u_power(a * k + u_extra, coeff)})


def g_function(ord_a: int, chi: Fraction, subst: Tuple[int, int, int] = S_PLAIN) -> LaurentXY:
    """Closed form |a|^{1-s} chi(a)^{-1} sum_r (chi(w) q^{1-2s})^r at a = w^ord_a.

    ``chi`` is chi(w). With Q = q^{-s}: the r-th term is
    chi^{r-N} q^{r-N} Q^{2r-N}. Zero for ord_a < 0.
    """
    chi = Fraction(chi)
    if chi == 0:
        raise ValueError("chi(w) must be nonzero")
    if ord_a < 0:
        return LaurentXY()
    N = ord_a
    out = LaurentXY()
    for r in range(N + 1):
        out = out + _qs_power(subst, 2 * r - N, chi ** (r - N), 2 * (r - N))
    return out


def g_function_intermediate(ord_a: int, chi: Fraction, subst: Tuple[int, int, int] = S_PLAIN) -> LaurentXY:
    """|a|^s sum_k (q^{-1+2s} chi(w)^{-1})^k: the k-th term is chi^{-k} q^{-k} Q^{N-2k}."""
    chi = Fraction(chi)
    if ord_a < 0:
        return LaurentXY()
    N = ord_a
    out = LaurentXY()
    for k in range(N + 1):
        out = out + _qs_power(subst, N - 2 * k, chi ** (-k), -2 * k)
    return out


def check_g_equivalence(ord_max: int, chi: Fraction, seed=None) -> IdentityReport:
    t0 = time.perf_counter()
    mismatch = None
    counts = {}
    for N in range(ord_max + 1):
        closed = g_function(N, chi)
        inter = g_function_intermediate(N, chi)
        counts[N] = len(closed)
        if closed != inter:
            mismatch = {"ord": N, "closed": str(closed.items()), "intermediate": str(inter.items())}
            break
        if len(closed) != N + 1:
            mismatch = {"ord": N, "terms": len(closed), "expected_terms": N + 1}
            break
    return IdentityReport("g_function", {"ord_max": ord_max, "chi": str(Fraction(chi)), "seed": seed},
                          mismatch is None, mismatch, time.perf_counter() - t0,
                          {"term_counts": counts})


# Cauchy identities


def cauchy_points(case: str, ranks: Dict[str, int], seed) -> Sequence[SatakePoint]:
    _, _, groups = cauchy_lhs_rep(case, ranks)
    return random_satake_bundle(groups, seed)


def check_cauchy(case: str, ranks: Dict[str, int], box: Box, trials: int = 3, seed=0) -> IdentityReport:
    """l_factor(product side) == cauchy_rhs(case) to ``box`` for each trial."""
    t0 = time.perf_counter()
    if case == "b" and ranks.get("m", 4) < 4:
        raise ValueError("case b needs m >= 4")
    mismatch = None
    even = True
    for trial in range(trials):
        pts = cauchy_points(case, ranks, f"{seed}:{trial}")
        lhs = cauchy_lhs(case, pts, box)
        rhs = cauchy_rhs(case, pts, box)
        even = even and lhs.is_even_supported() and rhs.is_even_supported()
        mismatch = _series_mismatch(lhs, rhs, trial=trial, points=[p.to_json() for p in pts])
        if mismatch:
            break
    if mismatch is None and not even:
        mismatch = {"reason": "odd exponent in the support"}
    return IdentityReport(f"cauchy_{case}", {"case": case, "ranks": dict(ranks), "box": list(box),
                                             "trials": trials, "seed": seed},
                          mismatch is None, mismatch, time.perf_counter() - t0, {"even_support": even})
