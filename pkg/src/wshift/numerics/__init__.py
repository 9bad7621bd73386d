"""Exact arithmetic kernel: rationals, polynomials, Sturm counting, PSD tests, bisection."""

from fractions import Fraction

from .matrix import SymMatrix, det, is_psd, leading_pivots, negative_principal_minor, psd_witness
from .poly import (
    RationalPolynomial,
    cauchy_bound,
    count_positive_roots,
    count_roots,
    is_nonnegative_on_halfline,
    isolate_real_roots,
    negative_point_on_halfline,
    sign_variations,
    sturm_sequence,
)
from .rational import as_fraction, fmt_q, parse_q, q_json, to_decimal
from .real import Real
from .search import DEFAULT_TOL, bisect_boundary, bisect_bracket

BigRational = Fraction

__all__ = [
    "BigRational",
    "Fraction",
    "RationalPolynomial",
    "Real",
    "SymMatrix",
    "DEFAULT_TOL",
    "as_fraction",
    "bisect_boundary",
    "bisect_bracket",
    "cauchy_bound",
    "count_positive_roots",
    "count_roots",
    "det",
    "fmt_q",
    "is_nonnegative_on_halfline",
    "is_psd",
    "isolate_real_roots",
    "leading_pivots",
    "negative_point_on_halfline",
    "negative_principal_minor",
    "parse_q",
    "psd_witness",
    "q_json",
    "sign_variations",
    "sturm_sequence",
    "to_decimal",
]
