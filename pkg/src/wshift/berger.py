"""Recursively generated shifts and their finitely atomic Berger measures.

If the moments obey gamma_{n+r} = phi_0 gamma_n + ... + phi_{r-1} gamma_{n+r-1},
the candidate representing measure sits on the roots of
g(t) = t^r - (phi_{r-1} t^{r-1} + ... + phi_0) and its densities solve a
Vandermonde system.  The shift is subnormal iff that measure is a genuine
probability measure on [0, inf).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateError, InvalidRecursionError, NotIntegrableError, SequenceError
from .numerics import RationalPolynomial, Real, as_fraction, count_roots, fmt_q, isolate_real_roots
from .shifts import Recursive, WeightSequence
from .verdict import Verdict

__all__ = [
    "RecursionSpec",
    "AtomicMeasure",
    "BergmanMeasure",
    "phi_from_three",
    "alpha34_closed_forms",
    "recursively_generated",
    "berger_measure",
    "is_subnormal_recursive",
    "measure_from_atoms",
    "shift_from_measure",
    "DEFAULT_PRECISION",
]

DEFAULT_PRECISION = 50


def phi_from_three(a, b, c) -> tuple[Fraction, Fraction]:
    """Order-2 recursion coefficients of the shift with alpha_0^2, alpha_1^2, alpha_2^2 = a, b, c."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if b == a:
        raise DegenerateError("degenerate (division by zero)")
    phi0 = -a * b * (c - b) / (b - a)
    phi1 = b * (c - a) / (b - a)
    return phi0, phi1


def alpha34_closed_forms(a, b, c) -> tuple[Fraction, Fraction]:
    """alpha_3^2 and alpha_4^2 of the (a, b, c) recursively generated shift, in closed form."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    q = c * c - 2 * a * c + a * b
    if c == 0 or b == a or q == 0:
        raise DegenerateError("degenerate (division by zero)")
    a3 = b * q / (c * (b - a))
    a4 = (b * c**3 - 4 * a * b * c**2 + 2 * a * b**2 * c + a**2 * b * c - a**2 * b**2 + a**2 * c**2) / ((b - a) * q)
    return a3, a4


def recursively_generated(a, b, c) -> WeightSequence:
    """Shift with squared weights a, b, c continued by the order-2 recursion they determine."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if not (0 < a < b < c):
        raise SequenceError("need 0 < a < b < c")
    return WeightSequence([a, b, c], Recursive(phi_from_three(a, b, c)))


@dataclass(frozen=True)
class RecursionSpec:
    phi: tuple
    seeds: tuple  # gamma_0 .. gamma_{r-1}

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(as_fraction(p) for p in self.phi))
        object.__setattr__(self, "seeds", tuple(as_fraction(g) for g in self.seeds))
        if not self.phi:
            raise InvalidRecursionError("recursion needs at least one coefficient")
        if len(self.seeds) != len(self.phi):
            raise InvalidRecursionError(f"order {len(self.phi)} recursion needs {len(self.phi)} seed moments")
        if self.seeds[0] != 1:
            raise InvalidRecursionError("gamma_0 must be 1")

    @property
    def order(self) -> int:
        return len(self.phi)

    @property
    def characteristic(self) -> RationalPolynomial:
        """g(t) = t^r - sum phi_i t^i."""
        return RationalPolynomial([-p for p in self.phi] + [1])

    def moments(self, count: int) -> list[Fraction]:
        g = list(self.seeds[:count])
        r = self.order
        while len(g) < count:
            n = len(g) - r
            g.append(sum(self.phi[i] * g[n + i] for i in range(r)))
        return g

    def moment(self, n: int) -> Fraction:
        """gamma_n; negative n runs the recursion backwards (needs phi_0 != 0)."""
        if n >= 0:
            return self.moments(n + 1)[n]
        if self.phi[0] == 0:
            raise NotIntegrableError("not integrable")
        r = self.order
        window = list(self.seeds)  # gamma_m .. gamma_{m+r-1}, m = 0
        for _ in range(-n):
            prev = (window[r - 1] - sum(self.phi[i] * window[i - 1] for i in range(1, r))) / self.phi[0]
            window = [prev] + window[:-1]
        return window[0]

    def to_sequence(self) -> WeightSequence:
        r = self.order
        g = self.moments(r + 1)
        for n, v in enumerate(g):
            if v <= 0:
                raise SequenceError(f"moment gamma_{n} is not positive")
        return WeightSequence([g[n + 1] / g[n] for n in range(r)], Recursive(self.phi))

    def to_json(self) -> dict:
        return {"phi": [fmt_q(p) for p in self.phi], "gamma": [fmt_q(g) for g in self.seeds]}

    @classmethod
    def from_sequence(cls, seq: WeightSequence, start: int = 0) -> RecursionSpec:
        """Recursion of the subshift from `start` of a shift with a recursive tail."""
        tail = seq.tail
        if not isinstance(tail, Recursive):
            raise InvalidRecursionError("sequence does not have a recursive tail")
        g0 = seq.gamma(start)
        return cls(tail.phi, tuple(seq.gamma(start + k) / g0 for k in range(tail.order)))


@dataclass(frozen=True)
class AtomicMeasure:
    atoms: tuple  # Real, increasing
    densities: tuple  # Real
    valid: bool
    flags: tuple = ()
    reasons: tuple = ()
    recursion: RecursionSpec | None = field(default=None, compare=False)

    @property
    def exact(self) -> bool:
        return all(a.exact for a in self.atoms) and all(d.exact for d in self.densities)

    def moment(self, n: int):
        """int t^n dmu: a Fraction when exact (or recursion-backed), else a Real."""
        if self.recursion is not None and n >= 0:
            return self.recursion.moment(n)
        if self.exact:
            return sum((d.lo * a.lo**n for a, d in zip(self.atoms, self.densities)), Fraction(0))
        total = Real.exact_value(0)
        for a, d in zip(self.atoms, self.densities):
            p = Real.exact_value(1)
            for _ in range(n):
                p = p * a
            total = total + d * p
        return total

    def inverse_moment(self, n: int) -> Fraction:
        from .extension import inverse_moment

        return inverse_moment(self, n)

    def to_json(self, digits: int = 12) -> dict:
        out = {
            "atoms": [a.to_json(digits) for a in self.atoms],
            "densities": [d.to_json(digits) for d in self.densities],
            "valid": self.valid,
        }
        if self.flags:
            out["flags"] = list(self.flags)
        if self.reasons:
            out["reasons"] = list(self.reasons)
        return out


@dataclass(frozen=True)
class BergmanMeasure:
    """(m+1) t^m dt on [0, scale] rescaled: the Berger measure of the Bergman subshift from index m.

    With scale c the weights are c (n+1)/(n+2); int t^k dmu = c^k (m+1)/(m+k+1),
    and int t^{-k} dmu is finite only for k <= m.
    """

    m: int = 0
    scale: Fraction = Fraction(1)

    def moment(self, k: int) -> Fraction:
        if self.m + k + 1 <= 0:
            raise NotIntegrableError("not integrable")
        return Fraction(self.m + 1, self.m + k + 1) * as_fraction(self.scale) ** k

    def inverse_moment(self, n: int) -> Fraction:
        if n > self.m:
            raise NotIntegrableError("not integrable")
        return self.moment(-n)

    def to_json(self, digits: int = 12) -> dict:
        return {"kind": "bergman", "m": self.m, "scale": fmt_q(self.scale), "density": f"{self.m + 1} t^{self.m} on [0, 1]"}


def _lagrange_numerator(spec: RecursionSpec) -> RationalPolynomial:
    """N(s) with rho_i = N(s_i) / g'(s_i).

    g(t)/(t - s) = sum_k h_k(s) t^k and rho_i = sum_k gamma_k h_k(s_i) / g'(s_i).
    """
    g = spec.characteristic
    r = spec.order
    s = RationalPolynomial([0, 1])
    h = [None] * r
    h[r - 1] = RationalPolynomial([1])
    for k in range(r - 1, 0, -1):
        h[k - 1] = h[k] * s + RationalPolynomial([g[k]])
    total = RationalPolynomial([])
    for k in range(r):
        total = total + h[k] * spec.seeds[k]
    return total


def _settle(value_fn, atom: Real, digits: int) -> tuple[Real, Real]:
    """Refine `atom` until value_fn(atom) is an enclosure of the requested width with a decided sign."""
    target = Fraction(1, 10**digits)
    width = atom.width
    while True:
        atom = atom.refine(width)
        if atom.exact:
            return atom, value_fn(atom)
        try:
            val = value_fn(atom)
        except ZeroDivisionError:
            val = None
        if val is not None and val.sign() is not None and val.width <= target * max(Fraction(1), abs(val.lo)):
            return atom, val
        width = atom.width / 1024


def berger_measure(spec: RecursionSpec, precision: int = DEFAULT_PRECISION) -> AtomicMeasure:
    """Atoms = roots of g, densities from the Vandermonde solve."""
    g = spec.characteristic
    r = spec.order
    if g.squarefree().degree < r:
        raise InvalidRecursionError("not a valid recursive subnormal spec")
    roots = isolate_real_roots(g)
    if len(roots) < r:
        return AtomicMeasure((), (), False, reasons=("non-real roots",), recursion=spec)
    numer = _lagrange_numerator(spec)
    dg = g.derivative()
    zero_density = numer.gcd(g)

    def density(atom: Real) -> Real:
        if atom.exact:
            return Real.exact_value(numer(atom.lo) / dg(atom.lo))
        return Real(*numer.eval_interval(atom.lo, atom.hi)) / Real(*dg.eval_interval(atom.lo, atom.hi))

    atoms, dens = [], []
    for root in roots:
        if not root.exact and zero_density.degree > 0 and count_roots(zero_density, root.lo, root.hi) > 0:
            atoms.append(root.refine_digits(precision))
            dens.append(Real.exact_value(0))
            continue
        atom, rho = _settle(density, root, precision)
        # keep the atom at the requested precision and a decided sign
        atom = atom.refine_digits(precision)
        while atom.sign() is None:
            atom = atom.refine(atom.width / 2)
        atoms.append(atom)
        dens.append(rho)
    flags, reasons = [], []
    if any(a.sign() == 0 for a in atoms):
        flags.append("atom at origin")
    if any(a.sign() < 0 for a, d in zip(atoms, dens) if d.sign() != 0):
        reasons.append("negative atom")
    if any(d.sign() < 0 for d in dens):
        reasons.append("negative density")
    return AtomicMeasure(tuple(atoms), tuple(dens), not reasons, tuple(flags), tuple(reasons), spec)


def _moments_match(mu: AtomicMeasure, spec: RecursionSpec) -> bool:
    target = spec.moments(2 * spec.order + 1)
    plain = AtomicMeasure(mu.atoms, mu.densities, mu.valid)
    for n, gam in enumerate(target):
        m = plain.moment(n)
        if isinstance(m, Real):
            if not m.contains(gam):
                return False
        elif m != gam:
            return False
    return True


def is_subnormal_recursive(spec: RecursionSpec, precision: int = DEFAULT_PRECISION) -> Verdict:
    """Certified decision: the Berger measure exists and is a probability measure on [0, inf)."""
    mu = berger_measure(spec, precision)
    if not mu.valid:
        return Verdict.fail(detail=", ".join(mu.reasons))
    if not _moments_match(mu, spec):
        return Verdict(status="unknown", detail="moment reconstruction inconclusive")
    return Verdict.ok(detail="valid finitely atomic Berger measure")


def measure_from_atoms(atoms, densities) -> AtomicMeasure:
    """Exact measure with rational atoms; recursion data derived from the atoms."""
    atoms = [as_fraction(a) for a in atoms]
    densities = [as_fraction(d) for d in densities]
    if len(atoms) != len(densities) or not atoms:
        raise ValueError("atoms and densities must be nonempty and of equal length")
    if len(set(atoms)) != len(atoms):
        raise ValueError("atoms must be distinct")
    pairs = sorted(zip(atoms, densities))
    if sum(densities) != 1:
        raise ValueError("densities must sum to 1")
    g = RationalPolynomial.from_roots([a for a, _ in pairs])
    phi = tuple(-g[i] for i in range(len(pairs)))
    seeds = tuple(sum(d * a**k for a, d in pairs) for k in range(len(pairs)))
    reasons = []
    if any(a < 0 for a, d in pairs if d != 0):
        reasons.append("negative atom")
    if any(d < 0 for _, d in pairs):
        reasons.append("negative density")
    flags = ("atom at origin",) if any(a == 0 for a, _ in pairs) else ()
    return AtomicMeasure(
        tuple(Real.exact_value(a) for a, _ in pairs),
        tuple(Real.exact_value(d) for _, d in pairs),
        not reasons,
        flags,
        tuple(reasons),
        RecursionSpec(phi, seeds),
    )


def shift_from_measure(mu: AtomicMeasure) -> WeightSequence:
    """The weighted shift whose moments are those of `mu` (zero-density atoms dropped)."""
    if not mu.valid:
        raise SequenceError("measure is not a valid Berger measure")
    if mu.exact:
        live = [(a.lo, d.lo) for a, d in zip(mu.atoms, mu.densities) if d.lo != 0]
        return measure_from_atoms([a for a, _ in live], [d for _, d in live]).recursion.to_sequence()
    if mu.recursion is None:
        raise SequenceError("irrational atoms need recursion data")
    return mu.recursion.to_sequence()
