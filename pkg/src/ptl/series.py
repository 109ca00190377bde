"""Truncated even power series and exact square roots.

A ``TruncatedEvenSeries`` holds the coefficients of x^0, x^2, ..., x^(2*order).
Coefficients may be exact rationals or sparse polynomials (for series whose
coefficients are themselves ring elements); arithmetic truncates consistently
at x^(2*order).

``q_series`` produces the Taylor coefficients of sqrt(1+z):

    Q(z) = 1 + z/2 - z^2/8 + z^3/16 - 5*z^4/128 + ...

which is the generating kernel for every square root taken in this package.
Square roots of even series with leading term at x^(2k) are odd in x when k
is odd, so ``even_series_sqrt`` returns the root as x^shift times an even
series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def binom_half(m: int) -> Fraction:
    """Binomial coefficient C(1/2, m), exactly."""
    num = Fraction(1)
    for i in range(m):
        num *= Fraction(1, 2) - i
    return num / math.factorial(m)


def rational_sqrt(c: Fraction) -> Fraction:
    """Positive square root of a perfect-square rational, else ValueError."""
    c = Fraction(c)
    if c < 0:
        raise ValueError("negative leading coefficient has no rational square root")
    rn = math.isqrt(c.numerator)
    rd = math.isqrt(c.denominator)
    if rn * rn != c.numerator or rd * rd != c.denominator:
        raise ValueError(f"{c} is not a perfect rational square")
    return Fraction(rn, rd)


class TruncatedEvenSeries:
    """Series in x^2 truncated after the x^(2*order) coefficient."""

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients, order: int | None = None):
        coeffs = list(coefficients)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        while len(coeffs) < order + 1:
            coeffs.append(Fraction(0))
        self.coefficients = coeffs[: order + 1]
        self.order = order

    def coefficient(self, i: int):
        return self.coefficients[i] if i <= self.order else Fraction(0)

    def as_fractions(self) -> list[Fraction]:
        out = []
        for c in self.coefficients:
            if isinstance(c, (int, Fraction)):
                out.append(Fraction(c))
            else:
                # constant polynomial coefficients extract exactly
                if any(any(e != 0 for e in expo) for expo in c.terms):
                    raise ValueError("coefficient is not scalar")
                out.append(next(iter(c.terms.values()), Fraction(0)))
        return out

    def truncate(self, order: int) -> "TruncatedEvenSeries":
        return TruncatedEvenSeries(self.coefficients[: order + 1], order)

    def is_zero(self) -> bool:
        return all(not c for c in self.coefficients)

    def __add__(self, other: "TruncatedEvenSeries") -> "TruncatedEvenSeries":
        order = min(self.order, other.order)
        return TruncatedEvenSeries(
            [self.coefficients[i] + other.coefficients[i] for i in range(order + 1)], order)

    def __sub__(self, other: "TruncatedEvenSeries") -> "TruncatedEvenSeries":
        order = min(self.order, other.order)
        return TruncatedEvenSeries(
            [self.coefficients[i] - other.coefficients[i] for i in range(order + 1)], order)

    def __mul__(self, other):
        if isinstance(other, TruncatedEvenSeries):
            order = min(self.order, other.order)
            out = [Fraction(0)] * (order + 1)
            for a, ca in enumerate(self.coefficients[: order + 1]):
                if not ca:
                    continue
                for b in range(order + 1 - a):
                    cb = other.coefficients[b]
                    if cb:
                        out[a + b] = out[a + b] + ca * cb
            return TruncatedEvenSeries(out, order)
        return TruncatedEvenSeries([c * other for c in self.coefficients], self.order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedEvenSeries):
            return NotImplemented
        return self.order == other.order and all(
            self.coefficients[i] == other.coefficients[i] for i in range(self.order + 1))

    def __repr__(self):
        return f"<even series order {self.order}: {self.coefficients}>"


def q_series(order: int) -> TruncatedEvenSeries:
    """Coefficients of Q(z) = sqrt(1+z) through z^order (z read as x^2)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return TruncatedEvenSeries([binom_half(m) for m in range(order + 1)], order)


def compose_no_constant(outer: list, inner: TruncatedEvenSeries) -> TruncatedEvenSeries:
    """Sum outer[m] * inner^m, requiring inner to have zero constant term."""
    if inner.coefficients[0]:
        raise ValueError("inner series must have zero constant term")
    order = inner.order
    acc = TruncatedEvenSeries([outer[0]] + [Fraction(0)] * order, order)
    power = TruncatedEvenSeries([Fraction(1)] + [Fraction(0)] * order, order)
    for m in range(1, min(len(outer) - 1, order) + 1):
        power = power * inner
        if outer[m]:
            acc = acc + outer[m] * power
    return acc


@dataclass(frozen=True)
class EvenSqrt:
    """Square root of an even series: x^shift times an even series.

    The shift is odd exactly when the input's leading term sits at an odd
    power of x^2 raised ... i.e. leading term x^(2k) with k odd gives an odd
    root x^k * (even series).
    """

    shift: int
    series: TruncatedEvenSeries

    def square(self) -> TruncatedEvenSeries:
        """(x^shift * series)^2 as an even series in x^2."""
        sq = self.series * self.series
        order = sq.order + self.shift
        coeffs = [Fraction(0)] * self.shift + list(sq.coefficients)
        return TruncatedEvenSeries(coeffs, order)


def even_series_sqrt(f: TruncatedEvenSeries, order: int | None = None) -> EvenSqrt:
    """Principal square root g with g^2 = f to the truncation order.

    The leading nonzero coefficient must be an extractable perfect-square
    scalar; the root's leading coefficient is the positive branch.  Raises
    ValueError when f vanishes identically to its truncation order.
    """
    if order is None:
        order = f.order
    k = next((i for i, c in enumerate(f.coefficients) if c), None)
    if k is None:
        raise ValueError("square root of a series that is zero to truncation order")
    lead = f.coefficients[k]
    if not isinstance(lead, (int, Fraction)):
        if any(any(e != 0 for e in expo) for expo in lead.terms):
            raise ValueError("leading coefficient must be scalar-extractable")
        lead = next(iter(lead.terms.values()))
    root = rational_sqrt(Fraction(lead))
    inv_lead = Fraction(1) / Fraction(lead)
    tail_order = max(order - k, 0)
    tail = TruncatedEvenSeries(
        [Fraction(0)] + [f.coefficient(k + t) * inv_lead for t in range(1, tail_order + 1)],
        tail_order)
    h = compose_no_constant([binom_half(m) for m in range(tail_order + 1)], tail)
    return EvenSqrt(k, root * h)
