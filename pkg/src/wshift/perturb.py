"""Perturbing one weight: the interval of admissible values and gap witnesses.

All parameters are squared weights x = alpha_j^2, which keeps every
membership test rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .berger import RecursionSpec, berger_measure, phi_from_three, recursively_generated
from .errors import DegenerateError, NoBracketError, SequenceError, WitnessNotFoundError, WShiftError
from .extension import extension_weights, is_subnormal, tail_measure, unique_backstep
from .hankel import det_2hypo, is_k_hyponormal
from .numerics import DEFAULT_TOL, Real, as_fraction, bisect_bracket
from .quad import is_positively_quad_hyponormal
from .shifts import Recursive, WeightSequence, perturb
from .verdict import Verdict

__all__ = [
    "IntervalResult",
    "membership",
    "omega_interval",
    "modulus_h2",
    "theorem32_check",
    "gap_witness",
    "prepend",
]


@dataclass(frozen=True)
class IntervalResult:
    """Enclosures of the two endpoints of {x : perturbed shift is k-hyponormal up to N}.

    ``lower_in`` / ``upper_in`` are the rational ends of each enclosure that
    passed the membership test; the other ends failed it.
    """

    lower: Real
    upper: Real
    lower_in: Fraction
    upper_in: Fraction
    lower_closed: bool
    upper_closed: bool
    tol: Fraction
    N: int
    k: int
    j: int

    @property
    def width(self) -> Fraction:
        return self.upper_in - self.lower_in

    def to_json(self, digits: int = 12) -> dict:
        from .numerics import q_json

        return {
            "k": self.k,
            "j": self.j,
            "N": self.N,
            "tol": str(self.tol),
            "lower": self.lower.to_json(digits),
            "upper": self.upper.to_json(digits),
            "lower_member": q_json(self.lower_in, digits),
            "upper_member": q_json(self.upper_in, digits),
            "lower_closed": self.lower_closed,
            "upper_closed": self.upper_closed,
        }


def membership(seq: WeightSequence, k: int, j: int, N: int):
    def member(x) -> bool:
        return is_k_hyponormal(perturb(seq, j, x), k, N).holds

    return member


def omega_interval(seq: WeightSequence, k: int, j: int, tol=DEFAULT_TOL, N: int = 50) -> IntervalResult:
    """Endpoints of the admissible set for alpha_j^2, bracketed from the known-good alpha_j^2.

    Hyponormality alone confines x to [alpha_{j-1}^2, alpha_{j+1}^2], so those
    are the outer brackets; an endpoint that itself passes is returned exactly.
    """
    tol = as_fraction(tol)
    member = membership(seq, k, j, N)
    x0 = _member_start(seq, j, member)

    hi = seq.weight_sq(j + 1)
    if member(hi):
        upper, upper_in = Real.exact_value(hi), hi
    else:
        a, b = bisect_bracket(member, x0, hi, tol, p_lo=True, p_hi=False)
        upper, upper_in = Real(a, b), a

    lower_closed = True
    if j >= 1:
        lo = seq.weight_sq(j - 1)
        if member(lo):
            lower, lower_in = Real.exact_value(lo), lo
        else:
            a, b = bisect_bracket(member, lo, x0, tol, p_lo=False, p_hi=True)
            lower, lower_in = Real(a, b), b
    else:
        probe = x0
        while probe > tol and member(probe / 2):
            probe /= 2
        if probe <= tol:
            # every tested positive value passes: the set reaches down to 0, which is excluded
            lower, lower_in, lower_closed = Real(Fraction(0), probe), probe, False
        else:
            a, b = bisect_bracket(member, probe / 2, probe, tol, p_lo=False, p_hi=True)
            lower, lower_in = Real(a, b), b
    return IntervalResult(lower, upper, lower_in, upper_in, lower_closed, True, tol, N, k, j)


def _member_start(seq: WeightSequence, j: int, member, grid: int = 32) -> Fraction:
    """A value of alpha_j^2 known to pass: the current one, else the subnormal
    completion forced by the tail measure, else a point of a uniform grid."""
    cands = [seq.weight_sq(j)]
    found = tail_measure(seq)
    if found is not None and j < found[0]:
        m0, mu = found
        try:
            if isinstance(mu, RecursionSpec):
                mu = berger_measure(mu)
            # index j is step m0 - j of a backward extension from m0
            if j == 0:
                rep = extension_weights(mu, m0)
                if rep.feasible:
                    cands.append(rep.bound)
            else:
                rep = extension_weights(mu, m0 - j + 1)
                if rep.feasible:
                    cands.append(rep.forced[-1])
        except WShiftError:
            pass
    lo = seq.weight_sq(j - 1) if j >= 1 else Fraction(0)
    hi = seq.weight_sq(j + 1)
    if lo < hi:
        cands += [lo + (hi - lo) * i / grid for i in range(1, grid)]
    for x in cands:
        if x > 0 and member(x):
            return x
    raise NoBracketError("empty bracket")


def prepend(seq: WeightSequence, x) -> WeightSequence:
    """The shift with squared weights x, alpha_0^2, alpha_1^2, ..."""
    x = as_fraction(x)
    tail = seq.tail
    if isinstance(tail, Recursive):
        # the generated stream of `seq` starts at anchor; re-seed with the same values one index later
        prefix = [x] + [seq.weight_sq(i) for i in range(max(len(seq.prefix_sq), tail.anchor))]
        return WeightSequence(prefix, Recursive(tail.phi, tail.seeds, tail.anchor + 1))
    raise SequenceError("prepending is supported for recursive tails")


def modulus_h2(a, b, c, tol=DEFAULT_TOL, N: int = 50) -> IntervalResult:
    """Largest prepended squared weight x keeping (x, a, b, c, ...) 2-hyponormal.

    The search starts at the unique back-step weight of the (a, b, c) Berger
    measure, which is always admissible; the upper endpoint is H_2.
    """
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if not (0 < a < b < c):
        raise DegenerateError("need 0 < a < b < c")
    base = recursively_generated(a, b, c)
    phi = phi_from_three(a, b, c)
    mu = berger_measure(RecursionSpec(phi, (Fraction(1), a)))
    if not mu.valid:
        raise SequenceError("recursive tail is not subnormal")
    x0 = unique_backstep(mu)
    return omega_interval(prepend(base, x0), 2, 0, tol, N)


def theorem32_check(a, b, c, j: int, x, N: int = 50) -> tuple[Verdict, Verdict]:
    """(subnormal, 2-hyponormal) verdicts for the (a, b, c) shift with alpha_j^2 replaced by x."""
    seq = perturb(recursively_generated(a, b, c), j, x)
    return is_subnormal(seq), is_k_hyponormal(seq, 2, N)


def gap_witness(seq: WeightSequence, j: int, tol=DEFAULT_TOL, N: int = 50, *, budget: int = 64, interval: IntervalResult | None = None):
    """x' just below the 2-hyponormal interval whose shift keeps all c(n,i) > 0.

    Steps down from the failing end of the lower enclosure by tol * 2^i while
    staying above alpha_{j-1}^2.  Returns (x', 2-hyponormality verdict,
    positive quadratic hyponormality verdict).
    """
    tol = as_fraction(tol)
    if not seq.is_strictly_increasing(N + 1):
        raise SequenceError("not strictly increasing")
    if j < 1:
        raise SequenceError("gap witnesses need j >= 1")
    if interval is None:
        interval = omega_interval(seq, 2, j, tol, N)
    floor = seq.weight_sq(j - 1)
    start = interval.lower.lo
    for i in range(budget):
        x = start - tol * 2**i
        if x <= floor:
            break
        cand = perturb(seq, j, x)
        two = is_k_hyponormal(cand, 2, N)
        if two.holds:
            continue
        pqh = is_positively_quad_hyponormal(cand, N, strict=True)
        if pqh.holds:
            return x, two, pqh
    raise WitnessNotFoundError("witness not found within budget")


def det_profile(seq: WeightSequence, N: int) -> list[Fraction]:
    return [det_2hypo(seq, n) for n in range(N + 1)]
