"""Univariate polynomials over Q, Sturm sequences and real root isolation."""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from math import gcd, isqrt, lcm

from ..errors import IndeterminateSignError
from .rational import as_fraction, fmt_q

__all__ = [
    "RationalPolynomial",
    "sturm_sequence",
    "sign_variations",
    "count_roots",
    "count_positive_roots",
    "cauchy_bound",
    "isolate_real_roots",
    "is_nonnegative_on_halfline",
    "negative_point_on_halfline",
]


class RationalPolynomial:
    """Immutable polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> RationalPolynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots) -> RationalPolynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial([{', '.join(fmt_q(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = fmt_q(abs(c)) + (f"*{mono}" if mono else "")
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]

    def _coerce(self, other):
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        return RationalPolynomial(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=Fraction(0)))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPolynomial):
            k = as_fraction(other)
            return RationalPolynomial(k * c for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if self.degree < dq:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        inv = 1 / other.lc
        for k in range(self.degree - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def monic(self) -> RationalPolynomial:
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def normalized(self) -> RationalPolynomial:
        """Scaled by 1/|lc|: same sign pattern everywhere, leading coeff ±1."""
        if self.is_zero():
            return self
        return self * (1 / abs(self.lc))

    def gcd(self, other: RationalPolynomial) -> RationalPolynomial:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> RationalPolynomial:
        """p / gcd(p, p'): same distinct roots, all simple."""
        if self.degree <= 0:
            return self
        return (self // self.gcd(self.derivative())).monic()

    def squarefree_decomposition(self) -> list[RationalPolynomial]:
        """Yun's algorithm: monic f_1, f_2, ... with p = lc * prod f_k^k."""
        if self.degree <= 0:
            return []
        f = self.monic()
        df = f.derivative()
        a = f.gcd(df)
        b = f // a
        c = df // a
        out = []
        while b.degree > 0:
            d = c - b.derivative()
            y = b.gcd(d)
            out.append(y)
            b = b // y
            c = d // y
        return out

    def eval_interval(self, lo, hi) -> tuple[Fraction, Fraction]:
        """Exact enclosure of {p(x) : lo <= x <= hi} by interval Horner."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        a = b = Fraction(0)
        for c in reversed(self.coeffs):
            prods = (a * lo, a * hi, b * lo, b * hi)
            a, b = min(prods) + c, max(prods) + c
        return a, b

    def primitive_integer(self) -> list[int]:
        """Integer coefficients with content 1 and the same roots."""
        if self.is_zero():
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints]


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [p.normalized()]
    d = p.derivative()
    if d.is_zero():
        return seq
    seq.append(d.normalized())
    while True:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            return seq
        seq.append(r.normalized())


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq, x) -> int:
    """Sign changes of the sequence at x; x may be +inf/-inf (float)."""
    if x == float("inf"):
        signs = [_sign(q.lc) for q in seq]
    elif x == float("-inf"):
        signs = [_sign(q.lc) * (-1) ** q.degree for q in seq]
    else:
        signs = [_sign(q(x)) for q in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: RationalPolynomial, lo=float("-inf"), hi=float("inf"), _seq=None) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    if p.is_zero():
        raise IndeterminateSignError("indeterminate sign")
    seq = _seq if _seq is not None else sturm_sequence(p.squarefree())
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def count_positive_roots(p: RationalPolynomial) -> int:
    """Distinct real roots in the open half-line (0, inf)."""
    if p.is_zero():
        raise IndeterminateSignError("indeterminate sign")
    return count_roots(p, Fraction(0), float("inf"))


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    """All complex roots satisfy |z| < bound."""
    lc = p.lc
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))


def _divisors(n: int, limit: int = 10**14) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def isolate_real_roots(p: RationalPolynomial, lo=None, hi=None):
    """Distinct real roots of p in (lo, hi], as :class:`Real` enclosures.

    Each result is either an exact rational root or an open interval with
    rational endpoints holding exactly one root of the square-free part of
    p.  Rational roots are always returned exactly.  Defaults cover the
    whole real line.
    """
    from .real import Real

    if p.is_zero():
        raise IndeterminateSignError("indeterminate sign")
    sf = p.squarefree()
    if sf.degree <= 0:
        return []
    seq = sturm_sequence(sf)
    bound = cauchy_bound(sf)
    a = -bound if lo is None else as_fraction(lo)
    b = bound if hi is None else as_fraction(hi)
    found = []
    stack = [(a, b, count_roots(sf, a, b, seq))]
    while stack:
        x, y, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            if sf(y) == 0:
                found.append(Real(y, y))
            else:
                found.append(Real(x, y, sf))
            continue
        m = (x + y) / 2
        left = count_roots(sf, x, m, seq)
        stack.append((x, m, left))
        stack.append((m, y, c - left))
    snapped = [_snap_rational(r, sf) for r in found]
    snapped.sort(key=lambda r: (r.lo, r.hi))
    return snapped


def _snap_rational(r, sf: RationalPolynomial):
    """Replace an isolating interval by the exact root when it is rational."""
    if r.exact:
        return r
    ints = sf.primitive_integer()
    qs = _divisors(ints[-1])
    if qs is None:
        return r
    # after this refinement each denominator q admits at most two candidates
    r = r.refine(Fraction(1, 2 * qs[-1]))
    if r.exact:
        return r
    from .real import Real

    for q in qs:
        k_lo = (r.lo * q).__ceil__()
        k_hi = (r.hi * q).__floor__()
        for k in range(k_lo, k_hi + 1):
            cand = Fraction(k, q)
            if r.lo < cand < r.hi and sf(cand) == 0:
                return Real(cand, cand)
    return r


def negative_point_on_halfline(p: RationalPolynomial):
    """A rational t >= 0 with p(t) < 0, or None if p >= 0 on [0, inf)."""
    if p.is_zero():
        return None
    if all(c >= 0 for c in p.coeffs):
        return None
    if p(0) < 0:
        return Fraction(0)
    if p.lc < 0:
        return cauchy_bound(p) + 1
    odd = RationalPolynomial([1])
    for k, f in enumerate(p.squarefree_decomposition(), start=1):
        if k % 2 == 1:
            odd = odd * f
    if odd.degree <= 0 or count_positive_roots(odd) == 0:
        return None
    # some positive root has odd multiplicity: p changes sign there
    roots = isolate_real_roots(p, Fraction(0), None)
    samples = _separating_points(roots, p.squarefree())
    for t in samples:
        if p(t) < 0:
            return t
    raise AssertionError("sign change predicted but no negative sample found")


def is_nonnegative_on_halfline(p: RationalPolynomial) -> bool:
    """Exact decision of p(t) >= 0 for every t >= 0."""
    return negative_point_on_halfline(p) is None


def _separating_points(roots, sf: RationalPolynomial) -> list[Fraction]:
    """Rational points, one strictly inside each gap between sorted roots in (0, inf)."""
    items = list(roots)
    # shrink enclosures until consecutive ones (and 0) are strictly separated
    while True:
        touched = False
        prev_hi = Fraction(0)
        for idx, r in enumerate(items):
            if not r.exact and r.lo <= prev_hi:
                items[idx] = r.refine((r.hi - r.lo) / 2)
                touched = True
            elif r.exact and r.lo <= prev_hi and idx > 0:
                items[idx - 1] = items[idx - 1].refine((items[idx - 1].hi - items[idx - 1].lo) / 2)
                touched = True
            prev_hi = items[idx].hi
        if not touched:
            break
    points = []
    prev_hi = Fraction(0)
    for r in items:
        points.append((prev_hi + r.lo) / 2)
        prev_hi = r.hi
    points.append(prev_hi + 1)
    return points
