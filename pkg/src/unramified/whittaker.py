"""Normalized unramified Whittaker functions on dominant torus elements.

``cs_value`` evaluates W(t) = delta_B^{1/2}(t) * chi(t_pi) where chi is the
dual-group character attached to the cocharacter of ``t``; it is zero off
the dominant cone. Delta is returned as a power of ``u = q^{1/2}``.

Torus coordinates:

* GL(n): ``t = diag(w^k_1, ..., w^k_n)``.
* GSpin(2n+1): ``t = e_1*(w^k_1) ... e_n*(w^k_n)``; the central cocharacter
  is ``e_0*`` and acts through b_0, the similitude of the GSp(2n) Satake point.
* GSO(2n): ``t = diag(t_1..t_n, l/t_n..l/t_1)`` with ``t_i = w^k_i`` and
  ``l = w^k_0``; ``exponents`` holds ``(k_1, ..., k_n, k_0)``.

For every group ``central`` counts copies of the central cocharacter
(scalar matrices for GL and GSO, ``e_0*`` for GSpin).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .exactring import ZERO, ExactScalar
from .rootchar import (
    GSp,
    GSpinD,
    GL,
    GroupType,
    HighestWeight,
    SatakePoint,
    SpinD,
    char_value,
    eps_to_fundamental,
)

PADIC_FAMILIES = ("GL", "GSpinB", "GSO")


@dataclass(frozen=True)
class PadicGroup:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in PADIC_FAMILIES:
            raise ValueError(f"unknown p-adic group family {self.family!r}")
        if self.n < 1 or (self.family == "GSO" and self.n < 3):
            raise ValueError(f"rank {self.n} not supported for {self.family}")

    def dual(self) -> GroupType:
        return {"GL": GL, "GSpinB": GSp, "GSO": GSpinD}[self.family](self.n)

    @property
    def size(self) -> int:
        return {"GL": self.n, "GSpinB": 2 * self.n + 1, "GSO": 2 * self.n}[self.family]

    def __str__(self):
        name = {"GL": "GL", "GSpinB": "GSpin", "GSO": "GSO"}[self.family]
        return f"{name}({self.size})"


def GLp(n):
    return PadicGroup("GL", n)


def GSpinB(n):
    """GSpin(2n+1)."""
    return PadicGroup("GSpinB", n)


def GSO(n):
    """GSO(2n)."""
    return PadicGroup("GSO", n)


@dataclass(frozen=True)
class Cocharacter:
    group: PadicGroup
    exponents: Tuple[int, ...]
    central: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.exponents))
        want = self.group.n + (1 if self.group.family == "GSO" else 0)
        if len(self.exponents) != want:
            raise ValueError(f"{self.group} cocharacters have {want} exponents")

    def absorbed(self) -> "Cocharacter":
        """Fold the central exponent into the coordinates (GL and GSO only)."""
        z = self.central
        if not z or self.group.family == "GSpinB":
            return self
        k = self.exponents
        if self.group.family == "GL":
            return Cocharacter(self.group, tuple(x + z for x in k))
        return Cocharacter(self.group, tuple(x + z for x in k[:-1]) + (k[-1] + 2 * z,))


def is_dominant(c: Cocharacter) -> bool:
    """|alpha(t)| <= 1 for every simple root of the upper-triangular Borel."""
    k = c.exponents
    fam = c.group.family
    n = c.group.n
    if fam == "GL":
        return all(k[i] >= k[i + 1] for i in range(n - 1))
    if fam == "GSpinB":
        return all(k[i] >= k[i + 1] for i in range(n - 1)) and k[n - 1] >= 0
    ks, k0 = k[:-1], k[-1]
    return all(ks[i] >= ks[i + 1] for i in range(n - 1)) and ks[n - 2] + ks[n - 1] >= k0


def two_rho_pairing(c: Cocharacter) -> int:
    """<2 rho_B, c> for the Borel of upper-triangular elements."""
    k = c.exponents
    fam = c.group.family
    n = c.group.n
    if fam == "GL":
        return sum((n - 1 - 2 * i) * k[i] for i in range(n))
    if fam == "GSpinB":
        return sum((2 * n - 2 * i - 1) * k[i] for i in range(n))
    ks, k0 = k[:-1], k[-1]
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += (ks[i] - ks[j]) + (ks[i] + ks[j] - k0)
    return total


def delta_half(c: Cocharacter) -> ExactScalar:
    """delta_B^{1/2}(t) = q^{-<2rho, c>/2} = u^{-<2rho, c>}."""
    return ExactScalar.u_power(-two_rho_pairing(c))


def gso_weight(c: Cocharacter, point_group: GroupType) -> HighestWeight:
    """Highest weight of the dual group attached to a dominant GSO cocharacter."""
    k = c.exponents
    n = c.group.n
    ks, k0 = k[:-1], k[-1]
    eps = tuple(Fraction(x) - Fraction(k0, 2) for x in ks)
    coeffs = eps_to_fundamental(eps)
    if point_group.family == "SpinD":
        return HighestWeight(SpinD(n), coeffs)
    return HighestWeight(GSpinD(n), coeffs, k0)


def dual_weight(c: Cocharacter, point_group: GroupType) -> HighestWeight:
    """The dual-group highest weight that the CS formula attaches to ``c``."""
    fam = c.group.family
    k = c.exponents
    if fam == "GL":
        return HighestWeight(GL(c.group.n), k)
    if fam == "GSpinB":
        return HighestWeight(GSp(c.group.n), k, sum(k))
    return gso_weight(c, point_group)


def _check_point(c: Cocharacter, point: SatakePoint):
    want = c.group.dual()
    ok = point.group == want or (c.group.family == "GSO" and point.group == SpinD(c.group.n))
    if not ok:
        raise ValueError(f"a {point.group} point does not match {c.group}")


def central_value(group: PadicGroup, point: SatakePoint) -> Fraction:
    """omega(w): the central character on the central cocharacter."""
    if group.family == "GSpinB":
        return point.similitude()
    return point.central()


def cs_value(c: Cocharacter, point: SatakePoint) -> ExactScalar:
    """W°(t_c) for the unramified representation with Satake point ``point``."""
    _check_point(c, point)
    z = c.central
    if z and c.group.family != "GSpinB":
        base = Cocharacter(c.group, c.exponents)
    else:
        base = c
    if not is_dominant(base):
        return ZERO
    shift = 0
    if base.group.family == "GL" and min(base.exponents) < 0:
        # det^shift times a polynomial character
        shift = min(base.exponents)
        hw = HighestWeight(GL(base.group.n), tuple(k - shift for k in base.exponents))
    else:
        hw = dual_weight(base, point.group)
    value = char_value(hw, point) * point.central() ** shift
    if z:
        value *= central_value(c.group, point) ** z
    return delta_half(base) * value


# coordinate dictionaries for diagonal arguments


def valuations_to_gl(vals: Sequence[int]) -> Cocharacter:
    return Cocharacter(GLp(len(vals)), tuple(vals))


def valuations_to_gso(vals: Sequence[int]) -> Cocharacter:
    """A diagonal element of GSO(2n) given by valuations of its entries."""
    m = len(vals)
    if m % 2:
        raise ValueError("GSO diagonals have even size")
    n = m // 2
    k0 = vals[0] + vals[-1]
    for i in range(n):
        if vals[i] + vals[m - 1 - i] != k0:
            raise ValueError(f"valuations {tuple(vals)} are not a GSO({m}) torus element")
    return Cocharacter(GSO(n), tuple(vals[:n]) + (k0,))


def valuations_to_gspin5(vals: Sequence[int]) -> Cocharacter:
    """GSp(4) diagonal ``diag(t1, t2, l/t2, l/t1)`` as a GSpin(5) cocharacter.

    The accidental isomorphism swaps long and short roots: the short root
    e_2 of GSpin(5) matches t_1/t_2 and the long root e_1 - e_2 matches
    t_2^2/l; the similitude l matches the spinor norm 2e_0 + e_1 + e_2.
    """
    v1, v2, v3, v4 = vals
    ell = v1 + v4
    if v2 + v3 != ell:
        raise ValueError(f"valuations {tuple(vals)} are not a GSp(4) torus element")
    return Cocharacter(GSpinB(2), (v1 + v2 - ell, v1 - v2), ell - v1)
