"""Local L-factors as truncated series.

Two independent routes:

* :func:`l_factor` multiplies ``1/(1 - w(t) X)`` over the weights ``w`` of a
  dual-group representation, with weights taken from the Freudenthal
  multiset;
* :func:`cauchy_rhs` sums products of irreducible characters, following the
  multiplicity-free decompositions of the symmetric algebras (cases a-e).

``X = q^{-s} = x^2`` and ``Y = q^{-w} = y^2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exactring import Box, BiSeries, SeriesAccumulator, geom_inverse
from .rootchar import (
    GSp,
    GSpinD,
    GL,
    GroupType,
    HighestWeight,
    SatakePoint,
    SpinD,
    char_value,
    eval_weight,
    weight,
    weight_multiset,
)


@dataclass(frozen=True)
class DualRep:
    """Tensor product of irreducibles, one highest weight per point.

    ``factors[i]`` is a highest weight of ``points[i].group``.
    """

    name: str
    factors: Tuple[HighestWeight, ...]

    @property
    def groups(self) -> Tuple[GroupType, ...]:
        return tuple(f.group for f in self.factors)


@dataclass(frozen=True)
class WeightEvaluator:
    """One weight of a tensor product: a choice of weight in each factor."""

    parts: Tuple[Tuple[Tuple[Fraction, ...], int], ...]

    def __call__(self, points: Sequence[SatakePoint]) -> Fraction:
        v = Fraction(1)
        for (mu, twist), pt in zip(self.parts, points):
            v *= eval_weight(pt, mu, twist)
        return v


def rep_weights(rep: DualRep) -> List[WeightEvaluator]:
    """Weights of ``rep`` with multiplicity, as evaluators on point tuples."""
    per_factor = []
    for hw in rep.factors:
        ws = []
        for mu, m in weight_multiset(hw):
            ws.extend([(mu, hw.twist)] * m)
        per_factor.append(ws)
    return [WeightEvaluator(tuple(combo)) for combo in itertools.product(*per_factor)]


def std(group: GroupType) -> HighestWeight:
    """Standard representation; for GSp the twist is 1 (weights b_i, b_0/b_i)."""
    if group.is_d:
        return weight(group, (1,) + (0,) * (group.n - 1), twist=0)
    return weight(group, 1)


def spin(group: GroupType, which: int = 0) -> HighestWeight:
    """Half-spin representation; ``which=0`` is the last fundamental weight."""
    coeffs = [0] * group.n
    coeffs[-1 - which] = 1
    if group.family == "GSpinD":
        return HighestWeight(group, tuple(coeffs), 1)
    return HighestWeight(group, tuple(coeffs))


def tensor(*factors: HighestWeight, name: str = "") -> DualRep:
    return DualRep(name or " x ".join(str(f.group) for f in factors), tuple(factors))


def l_factor(rep: DualRep, points: Sequence[SatakePoint], variable: str, box: Box) -> BiSeries:
    """prod over weights of 1/(1 - w(t) X), X = x^2 (or Y = y^2)."""
    if len(points) != len(rep.factors):
        raise ValueError("one Satake point per tensor factor")
    for hw, pt in zip(rep.factors, points):
        if hw.group != pt.group:
            raise ValueError(f"{rep.name}: {hw.group} factor given a {pt.group} point")
    mono = {"x": (2, 0), "y": (0, 2)}[variable]
    out = BiSeries.one(box)
    for w in rep_weights(rep):
        out = out * geom_inverse(w(points), mono, box)
    return out


def zeta_2(variable: str, box: Box) -> BiSeries:
    """zeta_F(2s) = 1/(1 - X^2) (or the same in Y)."""
    mono = {"x": (4, 0), "y": (0, 4)}[variable]
    return geom_inverse(1, mono, box)


def _index_range(forms: Sequence[Sequence[int]], bounds: Sequence[int]):
    """All index vectors whose linear forms stay within ``bounds``.

    Each index must appear with a positive coefficient in some form, so the
    enumeration is finite.
    """
    nvar = len(forms[0])
    caps = []
    for v in range(nvar):
        cap = None
        for f, b in zip(forms, bounds):
            if f[v] > 0:
                c = b // f[v]
                cap = c if cap is None else min(cap, c)
        if cap is None:
            raise ValueError(f"index {v} has no positive coefficient; the sum does not truncate")
        caps.append(cap)

    def rec(prefix, used):
        i = len(prefix)
        if i == nvar:
            yield tuple(prefix)
            return
        for k in range(caps[i] + 1):
            new = [u + f[i] * k for u, f in zip(used, forms)]
            if any(u > b for u, b in zip(new, bounds)):
                break
            yield from rec(prefix + [k], new)

    yield from rec([], [0] * len(forms))


def _gsp_char(point: SatakePoint, coords, k0) -> Fraction:
    return char_value(HighestWeight(point.group, tuple(coords), k0), point)


def _gl_char(point: SatakePoint, coords) -> Fraction:
    return char_value(HighestWeight(point.group, tuple(coords)), point)


def _pad(coords, n):
    coords = tuple(coords)
    if len(coords) > n:
        if any(coords[n:]):
            return None
        return coords[:n]
    return coords + (0,) * (n - len(coords))


def cauchy_rhs(case: str, points: Sequence[SatakePoint], box: Box) -> BiSeries:
    """Character-sum side of the Cauchy-type identities.

    case a: points (GSp(2n), GL(2));   sum over m1, m2, m3.
    case b: points (GSp(4), GL(m));    sum over n1..n6, m >= 4.
    case c: points (GSp(2n), GL(3));   sum over n1..n6 (n6 = 0 when n = 2).
    case d: point Spin(8);             zeta(2s) zeta(2w) sum of (n1,0,n3,n2).
    case e: point GSpin(10);           sum of (n2,0,0,0,n1) omega^{n2}.
    """
    acc = SeriesAccumulator(box)
    xb = box[0] // 2
    if case == "a":
        tau, pi = points
        n = tau.n
        omega = pi.central() * tau.similitude()
        for m1, m2, m3 in _index_range([(1, 2, 2)], [xb]):
            lam = _pad((m1 + m2, m2), n)
            if lam is None:
                continue
            v = (omega ** m3) * _gl_char(pi, (m1 + m2, m2)) * _gsp_char(tau, lam, m1 + 2 * m2)
            acc.add(2 * (m1 + 2 * m2 + 2 * m3), 0, _s(v))
    elif case == "b":
        tau, pi = points
        m = pi.n
        if m < 4:
            raise ValueError("case b needs m >= 4")
        for ns in _index_range([(1, 2, 3, 2, 4, 4)], [xb]):
            n1, n2, n3, n4, n5, n6 = ns
            deg = n1 + 2 * n2 + 3 * n3 + 2 * n4 + 4 * n5 + 4 * n6
            g = _gsp_char(tau, (n1 + n2 + n3 + n5, n2 + n5), deg)
            lam = (n1 + n2 + n3 + n4 + 2 * n5 + n6, n2 + n3 + n4 + n5 + n6, n3 + n5 + n6, n6)
            lam = _pad(lam, m)
            if lam is None:
                continue
            acc.add(2 * deg, 0, _s(g * _gl_char(pi, lam)))
    elif case == "c":
        tau, pi = points
        n = tau.n
        om_pi, om_tau = pi.central(), tau.similitude()
        for ns in _index_range([(1, 2, 2, 3, 4, 3)], [xb]):
            n1, n2, n3, n4, n5, n6 = ns
            if n == 2 and n6:
                continue
            deg = n1 + 2 * n2 + 2 * n3 + 3 * n4 + 4 * n5 + 3 * n6
            lam = _pad((n1 + n2 + n4 + n5 + n6, n2 + n5 + n6, n6), n)
            if lam is None:
                continue
            v = (om_pi ** (n4 + n5 + n6)) * (om_tau ** (n3 + n4 + n5))
            v *= _gl_char(pi, (n1 + n2 + n3 + n5, n2 + n3, 0))
            v *= _gsp_char(tau, lam, n1 + 2 * n2 + n4 + 2 * n5 + 3 * n6)
            acc.add(2 * deg, 0, _s(v))
    elif case == "d":
        (sigma,) = points
        yb = box[1] // 2
        for n1, n2, n3 in _index_range([(1, 0, 1), (0, 1, 1)], [xb, yb]):
            v = char_value(HighestWeight(sigma.group, (n1, 0, n3, n2)), sigma)
            acc.add(2 * (n1 + n3), 2 * (n2 + n3), _s(v))
        return acc.result() * zeta_2("x", box) * zeta_2("y", box)
    elif case == "e":
        (sigma,) = points
        omega = sigma.central()
        for n1, n2 in _index_range([(1, 2)], [xb]):
            hw = HighestWeight(sigma.group, (n2, 0, 0, 0, n1), n1)
            acc.add(2 * (n1 + 2 * n2), 0, _s(char_value(hw, sigma) * omega ** n2))
    else:
        raise ValueError(f"unknown Cauchy case {case!r}")
    return acc.result()


def _s(v: Fraction):
    from .exactring import ExactScalar

    return ExactScalar(v)


def cauchy_lhs_rep(case: str, ranks: Dict[str, int]) -> Tuple[List[DualRep], List[str], List[GroupType]]:
    """Product-side representations for each Cauchy case.

    Returns ``(reps, variables, point_groups)``; ``reps[i]`` is evaluated in
    ``variables[i]`` on the points of ``point_groups``.
    """
    if case == "a":
        n = ranks.get("n", 2)
        groups = [GSp(n), GL(2)]
        return [tensor(std(GSp(n)), std(GL(2)))], ["x"], groups
    if case == "b":
        m = ranks.get("m", 4)
        groups = [GSp(2), GL(m)]
        return [tensor(std(GSp(2)), std(GL(m)))], ["x"], groups
    if case == "c":
        n = ranks.get("n", 2)
        groups = [GSp(n), GL(3)]
        return [tensor(std(GSp(n)), std(GL(3)))], ["x"], groups
    if case == "d":
        groups = [SpinD(4)]
        return [tensor(std(SpinD(4))), tensor(spin(SpinD(4)))], ["x", "y"], groups
    if case == "e":
        groups = [GSpinD(5)]
        return [tensor(spin(GSpinD(5)))], ["x"], groups
    raise ValueError(f"unknown Cauchy case {case!r}")


def cauchy_lhs(case: str, points: Sequence[SatakePoint], box: Box) -> BiSeries:
    reps, variables, _ = cauchy_lhs_rep(case, {"n": points[0].n, "m": points[-1].n})
    out = BiSeries.one(box)
    for rep, var in zip(reps, variables):
        pts = points if len(rep.factors) == len(points) else points[: len(rep.factors)]
        out = out * l_factor(rep, pts, var, box)
    return out
