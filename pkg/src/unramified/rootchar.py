"""Root data of the complex dual groups and exact character values.

Dual groups handled here:

========  =========================  =====================================
family    Satake point ``values``    weight coordinates
========  =========================  =====================================
GL(n)     (a_1, ..., a_n)            partition k_1 >= ... >= k_n >= 0
Sp(2n)    (b_1, ..., b_n)            partition
GSp(2n)   (b_1, ..., b_n, sigma)     partition plus twist k_0
SpinD     (x_1, ..., x_n, h)         fundamental-weight coefficients
GSpinD    (g_1, ..., g_n, g_0)       fundamental-weight coefficients, k_0
========  =========================  =====================================

For GSp the torus element is ``diag(b_1..b_n, b_0/b_n..b_0/b_1)`` with
similitude ``b_0 = sigma**2``; storing sigma keeps ``mu^{k_0/2}`` rational.
For SpinD the generators are ``x_i = e^{eps_i}`` and ``h = e^{(eps_1+...+eps_n)/2}``,
so ``h**2 == prod(x_i)`` and half-spin weights evaluate to monomials.
For GSpinD the generators are the values on the cocharacters
``f_1..f_n, f_0`` of the GSO(2n) torus ``diag(t_1..t_n, l/t_n..l/t_1)``:
``f_i`` moves ``t_i`` and ``f_0`` moves ``l``. A weight with epsilon
coordinates ``c`` and twist ``k_0`` is the cocharacter ``k_i = c_i + k_0/2``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .exactring import ExactScalar

FAMILIES = ("GL", "Sp", "GSp", "SpinD", "GSpinD")
HALF = Fraction(1, 2)


class SingularPointError(ValueError):
    """The Weyl denominator vanishes at the point; draw a new point."""


@dataclass(frozen=True)
class GroupType:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown dual group family {self.family!r}")
        if self.n < 1:
            raise ValueError("rank must be positive")
        if self.family in ("SpinD", "GSpinD") and self.n < 3:
            raise ValueError("D-type groups need n >= 3")

    @property
    def is_d(self) -> bool:
        return self.family in ("SpinD", "GSpinD")

    @property
    def has_twist(self) -> bool:
        return self.family in ("GSp", "GSpinD")

    @property
    def ngens(self) -> int:
        return self.n if self.family in ("GL", "Sp") else self.n + 1

    def __str__(self):
        size = {"GL": self.n, "Sp": 2 * self.n, "GSp": 2 * self.n}.get(self.family, 2 * self.n)
        return f"{self.family}({size})"


def GL(n):
    return GroupType("GL", n)


def Sp(n):
    """Sp(2n)."""
    return GroupType("Sp", n)


def GSp(n):
    """GSp(2n)."""
    return GroupType("GSp", n)


def SpinD(n):
    """Spin(2n)."""
    return GroupType("SpinD", n)


def GSpinD(n):
    """GSpin(2n)."""
    return GroupType("GSpinD", n)


# weights


def fundamental_to_eps(coeffs: Sequence[int]) -> Tuple[Fraction, ...]:
    """D_n fundamental-weight coefficients to epsilon coordinates."""
    n = len(coeffs)
    c = [Fraction(0)] * n
    for i, a in enumerate(coeffs[: n - 2]):
        for j in range(i + 1):
            c[j] += a
    a_m, a_p = coeffs[n - 2], coeffs[n - 1]
    for j in range(n):
        c[j] += HALF * (a_m + a_p)
    c[n - 1] += -a_m
    return tuple(c)


def eps_to_fundamental(c: Sequence[Fraction]) -> Tuple[int, ...]:
    n = len(c)
    a = [c[i] - c[i + 1] for i in range(n - 1)] + [c[n - 2] + c[n - 1]]
    out = []
    for v in a:
        if Fraction(v).denominator != 1:
            raise ValueError(f"{tuple(c)} is not in the weight lattice")
        out.append(int(v))
    return tuple(out)


@dataclass(frozen=True)
class HighestWeight:
    """Dominant weight of a dual group.

    ``coords`` is a partition for GL/Sp/GSp and fundamental-weight
    coefficients for SpinD/GSpinD. ``twist`` is k_0 for GSp and GSpinD.
    """

    group: GroupType
    coords: Tuple[int, ...]
    twist: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(k) for k in self.coords))
        if len(self.coords) != self.group.n:
            raise ValueError(f"{self.group} weights have {self.group.n} coordinates")
        if self.group.is_d:
            if min(self.coords) < 0:
                raise ValueError(f"fundamental coefficients must be >= 0: {self.coords}")
            if self.group.family == "GSpinD":
                c = self.eps()
                if (c[0] + HALF * self.twist).denominator != 1:
                    raise ValueError("GSpin twist parity must match the spin parity")
            elif self.twist:
                raise ValueError("Spin weights take no twist")
        else:
            k = self.coords
            if any(k[i] < k[i + 1] for i in range(len(k) - 1)) or k[-1] < 0:
                raise ValueError(f"not a dominant partition: {k}")
            if not self.group.has_twist and self.twist:
                raise ValueError(f"{self.group} weights take no twist")

    def eps(self) -> Tuple[Fraction, ...]:
        if self.group.is_d:
            return fundamental_to_eps(self.coords)
        return tuple(Fraction(k) for k in self.coords)

    def to_json(self):
        d = {"group": str(self.group), "coords": list(self.coords)}
        if self.group.has_twist:
            d["twist"] = self.twist
        return d


def weight(group: GroupType, *coords, twist=None) -> HighestWeight:
    """Convenience constructor; GSp twist defaults to the coordinate sum,
    GSpinD twist to the smallest admissible value (0 or 1)."""
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    coords = tuple(coords) + (0,) * (group.n - len(coords))
    if twist is None:
        if group.family == "GSp":
            twist = sum(coords)
        elif group.family == "GSpinD":
            twist = int((coords[-2] + coords[-1]) % 2)
        else:
            twist = 0
    return HighestWeight(group, coords, twist)


def dominant_weights_up_to(group: GroupType, bound: int) -> List[HighestWeight]:
    """All dominant weights with coordinate sum at most ``bound``."""
    if bound < 0:
        return []
    n = group.n
    out = []
    if group.is_d:
        for total in range(bound + 1):
            for comp in _compositions(total, n):
                out.append(weight(group, comp))
    else:
        for total in range(bound + 1):
            for part in _partitions(total, n):
                out.append(weight(group, part))
    return out


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def _partitions(total: int, n: int, cap=None):
    if cap is None:
        cap = total
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), -1, -1):
        if first * n < total:
            break
        for rest in _partitions(total - first, n - 1, first):
            yield (first,) + rest


# Satake points


@dataclass(frozen=True)
class SatakePoint:
    group: GroupType
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.group.ngens:
            raise ValueError(f"{self.group} points have {self.group.ngens} generator values")
        if any(v == 0 for v in vals):
            raise ValueError("Satake generator values must be nonzero")
        if self.group.family == "SpinD":
            prod = Fraction(1)
            for v in vals[:-1]:
                prod *= v
            if vals[-1] ** 2 != prod:
                raise ValueError("SpinD point needs h**2 == x_1 * ... * x_n")

    @property
    def n(self) -> int:
        return self.group.n

    def similitude(self) -> Fraction:
        """Similitude of a GSp point (b_0 = sigma**2)."""
        if self.group.family != "GSp":
            raise ValueError("similitude is defined for GSp points")
        return self.values[-1] ** 2

    def central(self) -> Fraction:
        """Central character at the uniformizer.

        GL: product of eigenvalues; GSp: b_0; GSpinD: value on the central
        cocharacter (1,...,1; 2); Sp and SpinD: 1.
        """
        f = self.group.family
        if f == "GL":
            return _prod(self.values)
        if f == "GSp":
            return self.similitude()
        if f == "GSpinD":
            return _prod(self.values[:-1]) * self.values[-1] ** 2
        return Fraction(1)

    def normalized(self) -> "SatakePoint":
        """The Sp point b_i / sigma of a GSp point."""
        if self.group.family != "GSp":
            raise ValueError("only GSp points normalize")
        s = self.values[-1]
        return SatakePoint(Sp(self.n), tuple(b / s for b in self.values[:-1]))

    def eigenvalues(self) -> Tuple[Fraction, ...]:
        """Eigenvalues of the standard representation (GL, Sp, GSp)."""
        f = self.group.family
        if f == "GL":
            return self.values
        if f == "Sp":
            b = self.values
            return b + tuple(1 / v for v in reversed(b))
        if f == "GSp":
            b, b0 = self.values[:-1], self.similitude()
            return b + tuple(b0 / v for v in reversed(b))
        raise ValueError("eigenvalues() is for GL/Sp/GSp points")

    def to_json(self):
        return {"group": str(self.group), "values": [str(v) for v in self.values]}


def _prod(vals) -> Fraction:
    p = Fraction(1)
    for v in vals:
        p *= v
    return p


def unit_point(group: GroupType) -> SatakePoint:
    return SatakePoint(group, (Fraction(1),) * group.ngens)


def eval_weight(point: SatakePoint, mu: Sequence[Fraction], twist: int = 0) -> Fraction:
    """Value of the monomial e^{mu} (with twist k_0 where relevant) at ``point``."""
    f = point.group.family
    v = point.values
    n = point.n
    if f in ("GL", "Sp"):
        return _prod(v[i] ** int(mu[i]) for i in range(n))
    if f == "GSp":
        s = v[-1]
        total = sum(mu)
        return _prod(v[i] ** int(mu[i]) for i in range(n)) * s ** int(twist - total)
    if f == "SpinD":
        if Fraction(mu[0]).denominator == 1:
            return _prod(v[i] ** int(mu[i]) for i in range(n))
        return v[-1] * _prod(v[i] ** int(mu[i] - HALF) for i in range(n))
    # GSpinD
    return _prod(v[i] ** int(mu[i] + HALF * twist) for i in range(n)) * v[-1] ** twist


# root systems in epsilon coordinates


def _rho(group: GroupType) -> Tuple[Fraction, ...]:
    n = group.n
    if group.family == "GL":
        return tuple(Fraction(n - 1 - i) for i in range(n))
    if group.family in ("Sp", "GSp"):
        return tuple(Fraction(n - i) for i in range(n))
    return tuple(Fraction(n - 1 - i) for i in range(n))


@lru_cache(maxsize=None)
def positive_roots(group: GroupType) -> Tuple[Tuple[Fraction, ...], ...]:
    n = group.n
    roots = []

    def vec(pairs):
        v = [Fraction(0)] * n
        for i, c in pairs:
            v[i] += c
        return tuple(v)

    for i in range(n):
        for j in range(i + 1, n):
            roots.append(vec([(i, 1), (j, -1)]))
            if group.family != "GL":
                roots.append(vec([(i, 1), (j, 1)]))
        if group.family in ("Sp", "GSp"):
            roots.append(vec([(i, 2)]))
    return tuple(roots)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def dominant_rep(group: GroupType, mu: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Dominant element of the Weyl orbit of ``mu``."""
    d = _dom2(group.family, tuple(int(2 * x) for x in mu))
    return tuple(Fraction(x, 2) for x in d)


def weyl_orbit(group: GroupType, mu: Sequence[Fraction]) -> List[Tuple[Fraction, ...]]:
    orb = _orbit2(group.family, tuple(int(2 * x) for x in mu))
    return [tuple(Fraction(x, 2) for x in v) for v in orb]


def weyl_dimension(hw: HighestWeight) -> int:
    lam = hw.eps()
    rho = _rho(hw.group)
    num = Fraction(1)
    den = Fraction(1)
    lr = tuple(a + b for a, b in zip(lam, rho))
    for alpha in positive_roots(hw.group):
        num *= _dot(lr, alpha)
        den *= _dot(rho, alpha)
    d = num / den
    assert d.denominator == 1
    return int(d)


# Freudenthal's recursion, run on doubled integer coordinates so half-spin
# weights stay integral.


def _dom2(family: str, mu: Tuple[int, ...]) -> Tuple[int, ...]:
    if family == "GL":
        return tuple(sorted(mu, reverse=True))
    a = sorted((abs(x) for x in mu), reverse=True)
    if family in ("SpinD", "GSpinD"):
        negs = sum(1 for x in mu if x < 0)
        if negs % 2 == 1 and a[-1] != 0:
            a[-1] = -a[-1]
    return tuple(a)


@lru_cache(maxsize=None)
def _orbit2(family: str, mu: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    perms = set(itertools.permutations(mu))
    if family == "GL":
        return tuple(sorted(perms))
    out = set()
    n = len(mu)
    is_d = family in ("SpinD", "GSpinD")
    for signs in itertools.product((False, True), repeat=n):
        if is_d and sum(signs) % 2:
            continue
        for p in perms:
            out.add(tuple(-x if s else x for s, x in zip(signs, p)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _roots2(group: GroupType) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(2 * x) for x in a) for a in positive_roots(group))


@lru_cache(maxsize=4096)
def _freudenthal2(group: GroupType, lam: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
    fam = group.family
    pos = _roots2(group)
    rho = tuple(int(2 * x) for x in _rho(group))
    n = group.n
    height = [n - i for i in range(n)]

    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for alpha in pos:
                nu = tuple(a - b for a, b in zip(mu, alpha))
                if nu not in seen and _dom2(fam, nu) == nu:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    order = sorted(seen, key=lambda mu: _dot(height, [a - b for a, b in zip(lam, mu)]))

    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_lr = _dot(lr, lr)
    mult: Dict[Tuple[int, ...], int] = {}
    for mu in order:
        if mu == lam:
            mult[mu] = 1
            continue
        total = 0
        for alpha in pos:
            nu = mu
            while True:
                nu = tuple(a + b for a, b in zip(nu, alpha))
                m = mult.get(_dom2(fam, nu))
                if m is None:
                    break
                total += m * _dot(nu, alpha)
        mr = tuple(a + b for a, b in zip(mu, rho))
        q, r = divmod(2 * total, norm_lr - _dot(mr, mr))
        assert r == 0
        mult[mu] = q
    return mult


def dominant_multiplicities(group: GroupType, lam: Sequence[Fraction]) -> Dict[Tuple[Fraction, ...], int]:
    """Freudenthal multiplicities of the dominant weights of V(lam)."""
    m2 = _freudenthal2(group, tuple(int(2 * x) for x in lam))
    return {tuple(Fraction(x, 2) for x in k): v for k, v in m2.items()}


@lru_cache(maxsize=1024)
def _weights2(group: GroupType, lam: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    out = []
    for mu, m in sorted(_freudenthal2(group, lam).items()):
        if m:
            out.extend((nu, m) for nu in _orbit2(group.family, mu))
    return tuple(sorted(out))


def weight_multiset(hw: HighestWeight) -> List[Tuple[Tuple[Fraction, ...], int]]:
    """All weights of the module with multiplicities, in epsilon coordinates."""
    w2 = _weights2(hw.group, tuple(int(2 * x) for x in hw.eps()))
    return [(tuple(Fraction(x, 2) for x in nu), m) for nu, m in w2]


def character_by_weights(hw: HighestWeight, point: SatakePoint) -> ExactScalar:
    """Character as the explicit weight sum; valid at every point."""
    _check_same(hw, point)
    w2 = _weights2(hw.group, tuple(int(2 * x) for x in hw.eps()))
    fam = point.group.family
    v = point.values
    n = point.n
    twist = hw.twist
    # per-coordinate exponent shift (doubled) and a common prefactor
    if fam == "GSp":
        base = [b / v[-1] for b in v[:-1]]
        shift, pre = 0, v[-1] ** twist
    elif fam == "SpinD":
        base = list(v[:-1])
        half = w2 and w2[0][0][0] % 2 != 0
        shift, pre = (-1, v[-1]) if half else (0, Fraction(1))
    elif fam == "GSpinD":
        base = list(v[:-1])
        shift, pre = twist, v[-1] ** twist
    else:
        base = list(v)
        shift, pre = 0, Fraction(1)
    powers = [dict() for _ in range(n)]
    total = Fraction(0)
    for nu, m in w2:
        term = Fraction(m)
        for i in range(n):
            e = (nu[i] + shift) // 2
            p = powers[i].get(e)
            if p is None:
                p = powers[i][e] = base[i] ** e
            term *= p
        total += term
    return ExactScalar(pre * total)


# Weyl character formula


def _det(rows: List[List[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, n):
                    row_r[c] -= f * row_c[c]
    return det


def _coord_power(point: SatakePoint, i: int, e: Fraction, twist: int) -> Fraction:
    """Per-coordinate factor f_i(e) so that e^{mu} = prefactor * prod f_i(mu_i)."""
    f = point.group.family
    v = point.values
    if f in ("GL", "Sp"):
        return v[i] ** int(e)
    if f == "GSp":
        return (v[i] / v[-1]) ** int(e)
    if f == "SpinD":
        if e.denominator == 1:
            return v[i] ** int(e)
        return v[i] ** int(e - HALF)
    return v[i] ** int(e + HALF * twist)


def _prefactor(point: SatakePoint, lam: Sequence[Fraction], twist: int) -> Fraction:
    f = point.group.family
    if f == "GSp":
        return point.values[-1] ** twist
    if f == "SpinD":
        return point.values[-1] if lam[0].denominator != 1 else Fraction(1)
    if f == "GSpinD":
        return point.values[-1] ** twist
    return Fraction(1)


def _alternant(point: SatakePoint, l: Sequence[Fraction], twist: int) -> Fraction:
    """Sum over the Weyl group of sign(w) e^{w l}."""
    n = point.n
    fam = point.group.family
    fp = [[_coord_power(point, i, l[j], twist) for j in range(n)] for i in range(n)]
    if fam == "GL":
        return _det(fp)
    fm = [[_coord_power(point, i, -l[j], twist) for j in range(n)] for i in range(n)]
    if fam in ("Sp", "GSp"):
        return _det([[fp[i][j] - fm[i][j] for j in range(n)] for i in range(n)])
    plus = _det([[fp[i][j] + fm[i][j] for j in range(n)] for i in range(n)])
    minus = _det([[fp[i][j] - fm[i][j] for j in range(n)] for i in range(n)])
    return (plus + minus) / 2


@lru_cache(maxsize=None)
def weyl_denominator(point: SatakePoint) -> Fraction:
    rho = _rho(point.group)
    return _alternant(point, rho, 0)


def is_regular(point: SatakePoint) -> bool:
    return weyl_denominator(point) != 0


@lru_cache(maxsize=200000)
def _ratio_character(hw: HighestWeight, point: SatakePoint) -> Fraction:
    den = weyl_denominator(point)
    if den == 0:
        raise SingularPointError(f"Weyl denominator vanishes at {point.values}")
    lam = hw.eps()
    rho = _rho(hw.group)
    l = tuple(a + b for a, b in zip(lam, rho))
    num = _alternant(point, l, hw.twist)
    return _prefactor(point, lam, hw.twist) * num / den


def _check_same(hw: HighestWeight, point: SatakePoint):
    if hw.group != point.group:
        raise ValueError(f"weight of {hw.group} evaluated at a {point.group} point")


def weyl_character(hw: HighestWeight, point: SatakePoint, method: str = "auto") -> ExactScalar:
    """Exact character value of the irreducible module ``hw`` at ``point``.

    ``method="ratio"`` uses the Weyl character formula and raises
    :class:`SingularPointError` if the denominator vanishes; ``"weights"``
    sums over the Freudenthal weight multiset; ``"auto"`` uses the ratio at
    regular points and the weight sum otherwise.
    """
    _check_same(hw, point)
    if method == "weights":
        return character_by_weights(hw, point)
    if method == "ratio" or is_regular(point):
        return ExactScalar(_ratio_character(hw, point))
    return character_by_weights(hw, point)


def char_value(hw: HighestWeight, point: SatakePoint) -> Fraction:
    """Like :func:`weyl_character` but returns a bare Fraction."""
    _check_same(hw, point)
    if is_regular(point):
        return _ratio_character(hw, point)
    return character_by_weights(hw, point).rational()


# seeded points


@dataclass(frozen=True)
class Constraint:
    """Monomial equation prod(values[p][g] ** e) == 1 over a bundle of points.

    ``terms`` holds (point index, generator index, exponent) triples.
    """

    terms: Tuple[Tuple[int, int, int], ...]
    label: str = ""


def _rand_rational(rng: random.Random) -> Fraction:
    num = rng.randint(1, 13)
    den = rng.randint(1, 13)
    sign = rng.choice((1, -1))
    return Fraction(sign * num, den)


def _rational_sqrt(v: Fraction):
    if v < 0:
        return None
    from math import isqrt

    a, b = isqrt(v.numerator), isqrt(v.denominator)
    if a * a == v.numerator and b * b == v.denominator:
        return Fraction(a, b)
    return None


def _draw_values(group: GroupType, rng: random.Random) -> List[Fraction]:
    vals = [_rand_rational(rng) for _ in range(group.ngens)]
    if group.family == "SpinD":
        # pick h and x_1..x_{n-1}; x_n is then forced
        h = vals[-1]
        vals[group.n - 1] = h * h / _prod(vals[: group.n - 1])
    return vals


def _acceptable(group: GroupType, vals: Sequence[Fraction]) -> bool:
    try:
        pt = SatakePoint(group, tuple(vals))
    except ValueError:
        return False
    if group.family == "GL" and len(set(vals)) < len(vals):
        return False
    return is_regular(pt)


def random_satake_bundle(groups: Sequence[GroupType], seed, constraints: Sequence[Constraint] = ()) -> List[SatakePoint]:
    """Seeded points for several groups satisfying monomial constraints.

    Each constraint is solved for its last generator appearing with
    exponent +-1 (or +-2 when the rest is a rational square, positive root
    chosen). Draws are rejection-resampled until every point is regular.
    """
    rng = random.Random(f"satake:{seed}")
    for _attempt in range(10000):
        vals = [_draw_values(g, rng) for g in groups]
        ok = True
        for con in constraints:
            target = None
            for p, g, e in reversed(con.terms):
                if abs(e) in (1, 2) and not (groups[p].family == "SpinD"):
                    target = (p, g, e)
                    break
            if target is None:
                raise ValueError(f"constraint {con.label or con.terms} has no solvable generator")
            p0, g0, e0 = target
            rest = Fraction(1)
            for p, g, e in con.terms:
                if (p, g) == (p0, g0):
                    continue
                rest *= vals[p][g] ** e
            # vals[p0][g0] ** e0 * rest == 1
            base = 1 / rest
            if abs(e0) == 1:
                vals[p0][g0] = base if e0 == 1 else 1 / base
            else:
                r = _rational_sqrt(base)
                if r is None:
                    ok = False
                    break
                vals[p0][g0] = r if e0 == 2 else 1 / r
        if not ok:
            continue
        if all(_acceptable(g, v) for g, v in zip(groups, vals)):
            pts = [SatakePoint(g, tuple(v)) for g, v in zip(groups, vals)]
            for con in constraints:
                check = Fraction(1)
                for p, g, e in con.terms:
                    check *= pts[p].values[g] ** e
                assert check == 1
            return pts
    raise ValueError("could not satisfy the constraints with regular points")


def random_satake(group: GroupType, seed, constraints: Sequence[Constraint] = ()) -> SatakePoint:
    return random_satake_bundle([group], seed, constraints)[0]
