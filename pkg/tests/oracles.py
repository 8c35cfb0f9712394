"""Independent reference computations shared by the tests."""

import itertools
from fractions import Fraction


def ssyt_schur(shape, xs):
    """Schur polynomial as a sum over semistandard tableaux."""
    n = len(xs)
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    total = Fraction(0)

    def fill(k, tab):
        nonlocal total
        if k == len(cells):
            term = Fraction(1)
            for v in tab.values():
                term *= xs[v]
            total += term
            return
        r, c = cells[k]
        lo = 0
        if c > 0:
            lo = max(lo, tab[(r, c - 1)])
        if r > 0:
            lo = max(lo, tab[(r - 1, c)] + 1)
        for v in range(lo, n):
            tab[(r, c)] = v
            fill(k + 1, tab)
        tab.pop((r, c), None)

    fill(0, {})
    return total


def complete_homogeneous(k, xs):
    total = Fraction(0)
    for combo in itertools.combinations_with_replacement(xs, k):
        p = Fraction(1)
        for x in combo:
            p *= x
        total += p
    return total


def elementary(k, xs):
    total = Fraction(0)
    for combo in itertools.combinations(xs, k):
        p = Fraction(1)
        for x in combo:
            p *= x
        total += p
    return total


def partitions(total, parts, cap=None):
    if parts == 0:
        if total == 0:
            yield ()
        return
    cap = total if cap is None else cap
    for first in range(min(total, cap), -1, -1):
        for rest in partitions(total - first, parts - 1, first):
            yield (first,) + rest


def prod(xs):
    p = Fraction(1)
    for x in xs:
        p *= x
    return p
