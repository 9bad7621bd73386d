"""Subnormal backward extensions and the certified subnormality test.

Prepending weights x_n, ..., x_1 to a subnormal shift with Berger measure mu
keeps it subnormal iff 1/t^n is mu-integrable, x_j^2 = M(j-1)/M(j) for
j < n and x_n^2 <= M(n-1)/M(n), where M(k) = int t^{-k} dmu.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .berger import AtomicMeasure, BergmanMeasure, RecursionSpec, berger_measure
from .errors import InvalidRecursionError, NotIntegrableError, WShiftError
from .numerics import RationalPolynomial, q_json
from .shifts import Constant, RationalInN, Recursive, WeightSequence
from .verdict import FAILS, HOLDS, UNKNOWN, Verdict

__all__ = [
    "ExtensionReport",
    "inverse_moment",
    "extension_weights",
    "unique_backstep",
    "tail_measure",
    "is_subnormal",
]


def inverse_moment(mu, n: int) -> Fraction:
    """int t^{-n} dmu, exact.

    Atomic measures carrying recursion data use the recursion run backwards,
    so the value is rational even when the atoms are not.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if isinstance(mu, BergmanMeasure):
        return mu.inverse_moment(n)
    if not isinstance(mu, AtomicMeasure):
        raise TypeError("unsupported measure")
    live = [(a, d) for a, d in zip(mu.atoms, mu.densities) if d.sign() != 0]
    if any(a.sign() == 0 for a, _ in live):
        raise NotIntegrableError("not integrable")
    spec = mu.recursion
    if spec is not None:
        # drop zero-density atoms at the origin by dividing g by t
        while spec.phi[0] == 0 and spec.order > 1:
            spec = RecursionSpec(spec.phi[1:], spec.moments(spec.order - 1))
        if spec.phi[0] == 0:
            raise NotIntegrableError("not integrable")
        return spec.moment(-n)
    if all(a.exact and d.exact for a, d in live):
        return sum((d.lo / a.lo**n for a, d in live), Fraction(0))
    raise NotIntegrableError("inverse moment needs exact atoms or recursion data")


@dataclass(frozen=True)
class ExtensionReport:
    steps: int
    forced: tuple  # x_1^2 .. x_{n-1}^2
    bound: Fraction | None  # x_n^2 <= bound
    feasible: bool
    reason: str = ""

    def to_json(self) -> dict:
        out = {
            "steps": self.steps,
            "feasible": self.feasible,
            "forced_sq": [q_json(x) for x in self.forced],
            "last_sq_upper_bound": q_json(self.bound) if self.bound is not None else None,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def extension_weights(mu, n: int) -> ExtensionReport:
    """Forced squared weights and the bound on the outermost one for an n-step extension."""
    if n < 1:
        raise ValueError("steps must be >= 1")
    try:
        m = [inverse_moment(mu, k) for k in range(n + 1)]
    except NotIntegrableError:
        return ExtensionReport(n, (), None, False, f"1/t^{n} is not integrable")
    forced = tuple(m[j - 1] / m[j] for j in range(1, n))
    return ExtensionReport(n, forced, m[n - 1] / m[n], True)


def unique_backstep(mu) -> Fraction:
    """(int 1/t dmu)^{-1}: the only weight allowing extension two or more steps back."""
    return 1 / inverse_moment(mu, 1)


def _recursion_holds(seq: WeightSequence, phi, n: int) -> bool:
    """alpha_{n+r-1}^2 = sum_i phi_i / prod_{l=n+i}^{n+r-2} alpha_l^2."""
    r = len(phi)
    total = phi[r - 1]
    denom = Fraction(1)
    for i in range(r - 2, -1, -1):
        denom *= seq.weight_sq(n + i)
        total += phi[i] / denom
    return seq.weight_sq(n + r - 1) == total


def _bergman_scale(tail: RationalInN):
    """c when the tail rule is c (n+1)/(n+2), else None."""
    num, den = tail.num_poly, tail.den_poly
    lhs = num * RationalPolynomial([2, 1])
    rhs = den * RationalPolynomial([1, 1])
    if lhs.is_zero() or rhs.degree != lhs.degree:
        return None
    c = lhs.lc / rhs.lc
    return c if lhs == rhs * c and c > 0 else None


def tail_measure(seq: WeightSequence):
    """(m0, measure): the least m0 whose subshift has a recognized Berger measure.

    A recursive tail gives a finitely atomic measure; a constant tail is
    the one-atom case.  Scaled Bergman tails c (n+1)/(n+2) are also
    recognized.  Returns None for other tails.
    """
    tail = seq.tail
    P = len(seq.prefix_sq)
    if isinstance(tail, (Recursive, Constant)):
        phi = tail.phi if isinstance(tail, Recursive) else (tail.c,)
        r = len(phi)
        # beyond P + r the relation involves generated weights only and holds by construction
        last_bad = -1
        for n in range(P + r + 1):
            if not _recursion_holds(seq, phi, n):
                last_bad = n
        m0 = last_bad + 1
        g0 = seq.gamma(m0)
        spec = RecursionSpec(phi, tuple(seq.gamma(m0 + k) / g0 for k in range(r)))
        return m0, spec
    if isinstance(tail, RationalInN):
        c = _bergman_scale(tail)
        if c is None:
            return None
        m0 = P
        while m0 > 0 and seq.weight_sq(m0 - 1) == c * Fraction(m0, m0 + 1):
            m0 -= 1
        return m0, BergmanMeasure(m0, c)
    return None


def is_subnormal(seq: WeightSequence, precision: int = 50) -> Verdict:
    """Certified subnormality for recognized tails; "unknown" otherwise.

    The subshift from m0 must carry a valid Berger measure, and the first
    m0 weights must form an m0-step subnormal extension of it.
    """
    found = tail_measure(seq)
    if found is None:
        return Verdict(UNKNOWN, detail="tail has no recognized Berger measure")
    m0, mu = found
    if isinstance(mu, RecursionSpec):
        try:
            mu = berger_measure(mu, precision)
        except InvalidRecursionError as exc:
            return Verdict(UNKNOWN, detail=str(exc))
        if not mu.valid:
            return Verdict(FAILS, n=m0, detail="tail measure: " + ", ".join(mu.reasons))
    if m0 == 0:
        return Verdict(HOLDS, detail="Berger measure certified")
    report = extension_weights(mu, m0)
    if not report.feasible:
        return Verdict(FAILS, n=0, detail=report.reason)
    for j, forced in enumerate(report.forced, start=1):
        actual = seq.weight_sq(m0 - j)
        if actual != forced:
            return Verdict(FAILS, n=m0 - j, witness=forced, witness_name="forced_sq", detail="forced back-step weight differs")
    if seq.weight_sq(0) > report.bound:
        return Verdict(FAILS, n=0, witness=report.bound, witness_name="bound_sq", detail="first weight exceeds extension bound")
    return Verdict(HOLDS, detail=f"{m0}-step extension of a certified Berger measure")


def describe_measure(mu) -> dict:
    if isinstance(mu, (AtomicMeasure, BergmanMeasure)):
        return mu.to_json()
    raise WShiftError("unknown measure")
