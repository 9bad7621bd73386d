"""Conversions between :class:`fractions.Fraction` and text.

``Fraction`` is the exact scalar type throughout the package; this module
only handles parsing and printing.
"""

from __future__ import annotations

from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from numbers import Rational

__all__ = ["as_fraction", "fmt_q", "parse_q", "to_decimal", "q_json"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, strings ("3/4", "0.645", "1e-9") to Fraction.

    Floats are converted through their shortest repr so that ``0.645``
    becomes 645/1000 rather than the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return parse_q(value)
    raise TypeError(f"cannot convert {value!r} to a rational")


def parse_q(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def fmt_q(q) -> str:
    """Serialize as "p/q", omitting the denominator when it is 1."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_decimal(q, digits: int = 12, rounding: str = "nearest") -> str:
    """Decimal string with `digits` significant digits.

    ``rounding`` is "nearest", "down" (toward -inf) or "up" (toward +inf);
    the directed modes give outward-rounded enclosure endpoints.
    """
    q = as_fraction(q)
    mode = {"nearest": ROUND_HALF_EVEN, "down": ROUND_FLOOR, "up": ROUND_CEILING}[rounding]
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = mode
        d = Decimal(q.numerator) / Decimal(q.denominator)
    if d == 0:
        return "0"
    return format(d, "g") if abs(d.adjusted()) > 20 else format(d, "f")


def q_json(q, digits: int = 12) -> dict:
    """Both the exact form and a readable decimal."""
    return {"exact": fmt_q(q), "decimal": to_decimal(q, digits)}
