"""Rational enclosures of real numbers, refinable when algebraic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rational import as_fraction, fmt_q, to_decimal

__all__ = ["Real"]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Real:
    """The closed interval [lo, hi]; exact when lo == hi.

    When ``poly`` is given the enclosure isolates a simple root of it
    (strictly inside (lo, hi), with poly(hi) != 0) and :meth:`refine`
    can shrink it to any width.
    """

    lo: Fraction
    hi: Fraction
    poly: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @classmethod
    def exact_value(cls, q) -> Real:
        q = as_fraction(q)
        return cls(q, q)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.mid)

    def refine(self, width) -> Real:
        """Bisect until width <= `width` (or the root is hit exactly)."""
        width = as_fraction(width)
        if self.exact or self.width <= width:
            return self
        if self.poly is None:
            raise ValueError("enclosure is not refinable")
        p = self.poly
        lo, hi = self.lo, self.hi
        s_hi = _sign(p(hi))
        while hi - lo > width:
            m = (lo + hi) / 2
            s = _sign(p(m))
            if s == 0:
                return Real(m, m)
            if s != s_hi:
                lo = m
            else:
                hi, s_hi = m, s
        return Real(lo, hi, p)

    def refine_digits(self, digits: int) -> Real:
        scale = max(abs(self.lo), abs(self.hi), Fraction(1))
        return self.refine(scale / Fraction(10) ** digits)

    def sign(self):
        """-1, 0, 1 when decided by the enclosure, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.exact:
            return 0
        return None

    def contains(self, q) -> bool:
        return self.lo <= as_fraction(q) <= self.hi

    def __add__(self, other):
        other = other if isinstance(other, Real) else Real.exact_value(other)
        return Real(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other):
        other = other if isinstance(other, Real) else Real.exact_value(other)
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Real(min(prods), max(prods))

    __rmul__ = __mul__

    def __neg__(self):
        return Real(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Real) else Real.exact_value(other)))

    def reciprocal(self) -> Real:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("enclosure contains zero")
        return Real(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        other = other if isinstance(other, Real) else Real.exact_value(other)
        return self * other.reciprocal()

    def to_json(self, digits: int = 12) -> dict:
        if self.exact:
            return {"exact": fmt_q(self.lo)}
        return {"enclosure": [to_decimal(self.lo, digits, "down"), to_decimal(self.hi, digits, "up")]}

    def __str__(self):
        if self.exact:
            return fmt_q(self.lo)
        return f"[{to_decimal(self.lo, 12, 'down')}, {to_decimal(self.hi, 12, 'up')}]"
