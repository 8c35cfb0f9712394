"""Exact coefficient arithmetic.

Three layers, all immutable:

* :class:`ExactScalar` -- Laurent polynomial in ``u`` (standing for q^{1/2})
  with rational coefficients.
* :class:`BiSeries` -- formal series in ``x`` (= q^{-s/2}) and ``y``
  (= q^{-w/2}) truncated to a box ``(max_x, max_y)``.
* :class:`LaurentXY` -- finite Laurent polynomial in ``x, y``; used where a
  factor carries negative powers of ``x`` that a companion factor cancels.

Nothing here rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Rational = Union[int, Fraction]
Box = Tuple[int, int]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ExactScalar:
    """Laurent polynomial in ``u`` with Fraction coefficients.

    ``coeffs`` maps u-exponent to coefficient. Zero coefficients are dropped
    on construction, so two equal scalars always have equal maps.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, Rational], Rational, None] = None):
        if coeffs is None:
            c = {}
        elif isinstance(coeffs, (int, Fraction)):
            c = {0: _frac(coeffs)} if coeffs else {}
        else:
            c = {}
            for k, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[int(k)] = v
        self._c: Dict[int, Fraction] = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, Fraction]) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def u_power(cls, k: int, coeff: Rational = 1) -> "ExactScalar":
        """Return ``coeff * u**k``."""
        return cls({k: coeff})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return not self._c or set(self._c) == {0}

    def rational(self) -> Fraction:
        """The value as a plain rational; fails if any u-power is present."""
        if not self.is_rational():
            raise ValueError(f"{self} is not a constant")
        return self._c.get(0, Fraction(0))

    def __len__(self) -> int:
        return len(self._c)

    # arithmetic

    @staticmethod
    def _coerce(other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return ExactScalar._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ExactScalar._raw({})
            return ExactScalar._raw({k: v * other for k, v in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._c) == 1 and len(other._c) == 1:
            (a, x), = self._c.items()
            (b, y), = other._c.items()
            return ExactScalar._raw({a + b: x * y})
        c: Dict[int, Fraction] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                c[a + b] = c.get(a + b, 0) + x * y
        return ExactScalar._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            if isinstance(e, int) and self.is_monomial():
                (k, v), = self._c.items()
                return ExactScalar._raw({k * e: v ** e})
            raise ValueError("pow exponent must be a nonnegative integer")
        result = ExactScalar(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def shift(self, k: int) -> "ExactScalar":
        """Multiply by ``u**k``."""
        if not k:
            return self
        return ExactScalar._raw({a + k: v for a, v in self._c.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def render(self) -> str:
        """Canonical text form, terms by increasing u-exponent."""
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            parts.append(_fmt_frac(v) if k == 0 else f"{_fmt_frac(v)}*u^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ExactScalar({self.render()})"

    def to_json(self):
        return [[k, _fmt_frac(v)] for k, v in sorted(self._c.items())]


ZERO = ExactScalar()
ONE = ExactScalar(1)


def as_scalar(c) -> ExactScalar:
    return c if isinstance(c, ExactScalar) else ExactScalar(c)


class BiSeries:
    """Series in ``x, y`` truncated to the box ``max_x, max_y``.

    Monomials with an exponent outside ``[0, max_x] x [0, max_y]`` are
    discarded; below the box every coefficient is exact.
    """

    __slots__ = ("box", "_c")

    def __init__(self, box: Box, coeffs: Mapping[Tuple[int, int], object] | None = None):
        mx, my = box
        if mx < 0 or my < 0:
            raise ValueError("truncation box must be nonnegative")
        self.box: Box = (int(mx), int(my))
        c = {}
        for (i, j), v in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j}) in a BiSeries")
            if i > mx or j > my:
                continue
            v = as_scalar(v)
            if v:
                c[(i, j)] = c[(i, j)] + v if (i, j) in c else v
        self._c: Dict[Tuple[int, int], ExactScalar] = {k: v for k, v in c.items() if v}

    @classmethod
    def _raw(cls, box: Box, c) -> "BiSeries":
        obj = cls.__new__(cls)
        obj.box = box
        obj._c = c
        return obj

    @classmethod
    def one(cls, box: Box) -> "BiSeries":
        return cls(box, {(0, 0): ONE})

    @classmethod
    def zero(cls, box: Box) -> "BiSeries":
        return cls(box)

    @classmethod
    def monomial(cls, box: Box, i: int, j: int, coeff=1) -> "BiSeries":
        return cls(box, {(i, j): as_scalar(coeff)})

    def coefficient(self, i: int, j: int = 0) -> ExactScalar:
        return self._c.get((i, j), ZERO)

    def items(self):
        return sorted(self._c.items())

    def support(self):
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def _check(self, other: "BiSeries"):
        if not isinstance(other, BiSeries):
            raise TypeError("BiSeries arithmetic needs BiSeries operands")
        if other.box != self.box:
            raise ValueError(f"mismatched truncation boxes {self.box} and {other.box}")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            s = c[k] + v if k in c else v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return BiSeries._raw(self.box, c)

    def __neg__(self):
        return BiSeries._raw(self.box, {k: -v for k, v in self._c.items()})

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def scale(self, c) -> "BiSeries":
        c = as_scalar(c)
        if not c:
            return BiSeries._raw(self.box, {})
        return BiSeries._raw(self.box, {k: v * c for k, v in self._c.items() if v * c})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        self._check(other)
        mx, my = self.box
        c: Dict[Tuple[int, int], ExactScalar] = {}
        for (i1, j1), a in self._c.items():
            for (i2, j2), b in other._c.items():
                i, j = i1 + i2, j1 + j2
                if i > mx or j > my:
                    continue
                p = a * b
                c[(i, j)] = c[(i, j)] + p if (i, j) in c else p
        return BiSeries._raw(self.box, {k: v for k, v in c.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.box == other.box and self._c == other._c

    def __hash__(self):
        return hash((self.box, frozenset(self._c.items())))

    def truncate(self, box: Box) -> "BiSeries":
        """Restrict to a smaller box."""
        mx, my = box
        if mx > self.box[0] or my > self.box[1]:
            raise ValueError("can only truncate to a smaller box")
        return BiSeries._raw((mx, my), {k: v for k, v in self._c.items() if k[0] <= mx and k[1] <= my})

    def is_even_supported(self) -> bool:
        return all(i % 2 == 0 and j % 2 == 0 for i, j in self._c)

    def first_difference(self, other: "BiSeries"):
        """Smallest monomial where the two series differ, or None."""
        self._check(other)
        for k in sorted(set(self._c) | set(other._c)):
            a, b = self.coefficient(*k), other.coefficient(*k)
            if a != b:
                return k, a, b
        return None

    def render(self) -> str:
        """Canonical text form sorted by (x-exp, y-exp, u-exp)."""
        if not self._c:
            return "0"
        lines = []
        for (i, j), v in sorted(self._c.items()):
            for k, c in v.items():
                lines.append(f"{_fmt_frac(c)}*u^{k}*x^{i}*y^{j}")
        return " + ".join(lines)

    def __repr__(self):
        return f"BiSeries(box={self.box}, {self.render()})"


def geom_inverse(c, monomial: Tuple[int, int], box: Box) -> BiSeries:
    """Expand ``1 / (1 - c * x^a y^b)`` inside ``box``.

    ``monomial`` is ``(a, b)`` and must have a positive entry so the series
    terminates in the box.
    """
    a, b = monomial
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError("geometric series needs a monomial of positive degree")
    c = as_scalar(c)
    mx, my = box
    coeffs = {(0, 0): ONE}
    power = ONE
    r = 1
    while r * a <= mx and r * b <= my:
        power = power * c
        if not power:
            break
        coeffs[(r * a, r * b)] = power
        r += 1
    return BiSeries._raw((mx, my), coeffs)


class LaurentXY:
    """Finite Laurent polynomial in ``x, y`` with ExactScalar coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Tuple[int, int], object] | None = None):
        c = {}
        for k, v in (coeffs or {}).items():
            v = as_scalar(v)
            if v:
                c[(int(k[0]), int(k[1]))] = v
        self._c = c

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "LaurentXY":
        return cls({(i, j): coeff})

    def items(self):
        return sorted(self._c.items())

    def __len__(self):
        return len(self._c)

    def __add__(self, other: "LaurentXY") -> "LaurentXY":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c[k] + v if k in c else v
        return LaurentXY(c)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            other = as_scalar(other)
            return LaurentXY({k: v * other for k, v in self._c.items()})
        c: Dict[Tuple[int, int], ExactScalar] = {}
        for (i1, j1), a in self._c.items():
            for (i2, j2), b in other._c.items():
                k = (i1 + i2, j1 + j2)
                p = a * b
                c[k] = c[k] + p if k in c else p
        return LaurentXY(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentXY):
            return NotImplemented
        return self._c == other._c

    def min_exponents(self) -> Tuple[int, int]:
        if not self._c:
            return (0, 0)
        return min(i for i, _ in self._c), min(j for _, j in self._c)

    def to_series(self, box: Box) -> BiSeries:
        """Truncate into ``box``; a negative exponent is an error."""
        for i, j in self._c:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j}) survives into a series")
        return BiSeries(box, self._c)


def sum_series(terms: Iterable[BiSeries], box: Box) -> BiSeries:
    """Sum a stream of series sharing ``box``; accumulates in place."""
    acc: Dict[Tuple[int, int], ExactScalar] = {}
    for t in terms:
        if t.box != box:
            raise ValueError(f"mismatched truncation boxes {t.box} and {box}")
        for k, v in t._c.items():
            acc[k] = acc[k] + v if k in acc else v
    return BiSeries._raw(box, {k: v for k, v in acc.items() if v})


class SeriesAccumulator:
    """Mutable accumulator for adding ``coeff * x^i y^j`` terms into a box."""

    def __init__(self, box: Box):
        self.box = box
        self._acc: Dict[Tuple[int, int], ExactScalar] = {}

    def add(self, i: int, j: int, coeff: ExactScalar) -> None:
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent ({i}, {j}) in an accumulated term")
        if i > self.box[0] or j > self.box[1] or not coeff:
            return
        k = (i, j)
        self._acc[k] = self._acc[k] + coeff if k in self._acc else coeff

    def add_series(self, s: BiSeries) -> None:
        for (i, j), v in s._c.items():
            self.add(i, j, v)

    def result(self) -> BiSeries:
        return BiSeries._raw(self.box, {k: v for k, v in self._acc.items() if v})
