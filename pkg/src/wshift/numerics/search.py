"""Bisection on exact rationals for monotone boolean predicates."""

from __future__ import annotations

from fractions import Fraction

from ..errors import NoBracketError
from .rational import as_fraction

__all__ = ["bisect_bracket", "bisect_boundary", "DEFAULT_TOL"]

DEFAULT_TOL = Fraction(1, 10**12)


def bisect_bracket(predicate, lo, hi, tol=DEFAULT_TOL, *, p_lo=None, p_hi=None):
    """Shrink [lo, hi] around the single flip of `predicate`.

    Returns (a, b) with b - a <= tol, predicate(a) == predicate(lo) and
    predicate(b) == predicate(hi).  Known endpoint values may be passed in
    to save predicate calls.
    """
    lo, hi, tol = as_fraction(lo), as_fraction(hi), as_fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if lo > hi:
        lo, hi = hi, lo
        p_lo, p_hi = p_hi, p_lo
    a_val = predicate(lo) if p_lo is None else p_lo
    b_val = predicate(hi) if p_hi is None else p_hi
    if a_val == b_val:
        raise NoBracketError("no bracketed boundary")
    while hi - lo > tol:
        m = (lo + hi) / 2
        if predicate(m) == a_val:
            lo = m
        else:
            hi = m
    return lo, hi


def bisect_boundary(predicate, lo, hi, tol=DEFAULT_TOL) -> Fraction:
    """Midpoint of the final bracket: within tol of the flip point."""
    a, b = bisect_bracket(predicate, lo, hi, 2 * as_fraction(tol))
    return (a + b) / 2
