"""Exact weight sequences of unilateral weighted shifts.

Weights are stored as their squares alpha_n^2, which is the form every
criterion in this package consumes.  A sequence is a finite rational
prefix followed by a rule that produces the rest on demand; nothing is
materialized beyond the indices actually probed.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PositiveConeError, SequenceError
from .numerics import RationalPolynomial, as_fraction, fmt_q, isolate_real_roots
from .verdict import Verdict

__all__ = [
    "Constant",
    "RationalInN",
    "Recursive",
    "WeightSequence",
    "weight_sq",
    "gamma",
    "is_hyponormal_up_to",
    "perturb",
    "bergman_shift",
    "flat_shift",
]


@dataclass(frozen=True)
class Constant:
    c: Fraction

    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))

    def validate(self, start: int):
        if self.c <= 0:
            raise SequenceError("constant tail must be positive")

    def value(self, n: int) -> Fraction:
        return self.c

    def limit(self) -> Fraction:
        return self.c

    def to_json(self) -> dict:
        return {"kind": "constant", "c": fmt_q(self.c)}


@dataclass(frozen=True)
class RationalInN:
    """alpha_n^2 = num(n) / den(n) with integer coefficient lists, lowest first."""

    num: tuple
    den: tuple

    kind = "rational_in_n"

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(int(c) for c in self.num))
        object.__setattr__(self, "den", tuple(int(c) for c in self.den))

    @property
    def num_poly(self) -> RationalPolynomial:
        return RationalPolynomial(self.num)

    @property
    def den_poly(self) -> RationalPolynomial:
        return RationalPolynomial(self.den)

    def validate(self, start: int):
        num, den = self.num_poly, self.den_poly
        if num.is_zero() or den.is_zero():
            raise SequenceError("rational_in_n tail needs nonzero num and den")
        if num.degree > den.degree:
            raise SequenceError("rational_in_n tail is unbounded (deg num > deg den)")
        prod = num * den
        # positivity at every integer n >= start: sign of num*den is constant
        # between consecutive real roots, so only integers adjacent to roots matter
        checks = {start}
        if prod.degree > 0:
            for r in isolate_real_roots(prod, Fraction(start - 1), None):
                r = r.refine(Fraction(1, 2))
                checks.update(range(r.lo.__floor__(), r.hi.__ceil__() + 2))
        for n in sorted(checks):
            if n < start:
                continue
            if den(n) == 0:
                raise SequenceError(f"rational_in_n denominator vanishes at n = {n}")
            if prod(n) <= 0:
                raise SequenceError(f"rational_in_n tail is not positive at n = {n}")

    def value(self, n: int) -> Fraction:
        return self.num_poly(n) / self.den_poly(n)

    def limit(self) -> Fraction:
        num, den = self.num_poly, self.den_poly
        if num.degree < den.degree:
            return Fraction(0)
        return num.lc / den.lc

    def to_json(self) -> dict:
        return {"kind": "rational_in_n", "num": list(self.num), "den": list(self.den)}


@dataclass(frozen=True)
class Recursive:
    """Moments obey gamma_{n+r} = phi_0 gamma_n + ... + phi_{r-1} gamma_{n+r-1}.

    Bound to a sequence, the rule remembers the r seed weights preceding
    ``anchor`` (the first generated index), so later edits of the prefix
    never re-seed the generated stream.
    """

    phi: tuple
    seeds: tuple | None = None
    anchor: int | None = None
    _stream: list = field(default_factory=list, compare=False, repr=False)
    _lock: object = field(default_factory=threading.Lock, compare=False, repr=False)

    kind = "recursive"

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(as_fraction(p) for p in self.phi))
        if not self.phi:
            raise SequenceError("recursive tail needs at least one coefficient")
        if self.seeds is not None:
            object.__setattr__(self, "seeds", tuple(as_fraction(s) for s in self.seeds))
            if len(self.seeds) != self.order:
                raise SequenceError(f"recursive tail of order {self.order} needs {self.order} seeds")
            self._stream.extend(self.seeds)

    @property
    def order(self) -> int:
        return len(self.phi)

    @property
    def bound(self) -> bool:
        return self.seeds is not None

    def bind(self, prefix) -> Recursive:
        if self.bound:
            return self
        r = self.order
        if len(prefix) < r:
            raise SequenceError(f"recursive tail of order {r} needs {r} seed weights, got {len(prefix)}")
        return Recursive(self.phi, tuple(prefix[len(prefix) - r:]), len(prefix))

    def validate(self, start: int):
        if not self.bound:
            raise SequenceError("recursive tail is not seeded")
        if start < self.anchor:
            raise SequenceError("prefix shorter than the recursive anchor")

    def next_weight(self, previous) -> Fraction:
        """alpha_m^2 from the r-1 preceding squared weights (oldest first)."""
        r = self.order
        total = self.phi[r - 1]
        denom = Fraction(1)
        for i in range(r - 2, -1, -1):
            denom *= previous[i]
            total += self.phi[i] / denom
        return total

    def value(self, n: int) -> Fraction:
        r = self.order
        offset = self.anchor - r
        with self._lock:
            s = self._stream
            while offset + len(s) <= n:
                m = offset + len(s)
                w = self.next_weight(s[len(s) - (r - 1):] if r > 1 else [])
                if w <= 0:
                    raise PositiveConeError(m)
                s.append(w)
            return s[n - offset]

    def limit(self):
        return None

    def to_json(self) -> dict:
        return {"kind": "recursive", "phi": [fmt_q(p) for p in self.phi]}


_TAILS = {"constant": Constant, "rational_in_n": RationalInN, "recursive": Recursive}


class WeightSequence:
    """Squared weights alpha_0^2, alpha_1^2, ... with memoized moments."""

    def __init__(self, prefix_sq, tail):
        prefix = tuple(as_fraction(v) for v in prefix_sq)
        for i, v in enumerate(prefix):
            if v <= 0:
                raise SequenceError(f"squared weight at index {i} must be positive")
        if tail is None:
            raise SequenceError("weight sequence needs a tail rule")
        if isinstance(tail, Recursive):
            tail = tail.bind(prefix)
        tail.validate(len(prefix))
        self.prefix_sq = prefix
        self.tail = tail
        self._weights = list(prefix)
        self._gammas = [Fraction(1)]
        self._lock = threading.Lock()

    def __repr__(self):
        return f"WeightSequence({[fmt_q(v) for v in self.prefix_sq]}, {self.tail!r})"

    def weight_sq(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("negative weight index")
        if n < len(self.prefix_sq):
            return self.prefix_sq[n]
        with self._lock:
            w = self._weights
            while len(w) <= n:
                m = len(w)
                v = self.tail.value(m)
                if v <= 0:
                    raise PositiveConeError(m)
                w.append(v)
            return w[n]

    def virtual_weight_sq(self, n: int) -> Fraction:
        """alpha_n^2 with the convention alpha_{-1} = alpha_{-2} = 0."""
        return Fraction(0) if n < 0 else self.weight_sq(n)

    def gamma(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("negative moment index")
        if n >= len(self._gammas):
            self.weight_sq(n - 1)
        with self._lock:
            g = self._gammas
            while len(g) <= n:
                g.append(g[-1] * self._weights[len(g) - 1])
            return g[n]

    def weights(self, count: int) -> list[Fraction]:
        return [self.weight_sq(i) for i in range(count)]

    def moments(self, count: int) -> list[Fraction]:
        return [self.gamma(i) for i in range(count)]

    def perturb(self, j: int, x) -> WeightSequence:
        return perturb(self, j, x)

    def is_strictly_increasing(self, upto: int) -> bool:
        """alpha_n^2 < alpha_{n+1}^2 for 0 <= n < upto."""
        return all(self.weight_sq(n) < self.weight_sq(n + 1) for n in range(upto))

    def norm_sq_estimate(self, horizon: int):
        """max(sup of probed alpha_n^2, tail limit when known)."""
        best = max(self.weights(horizon + 1))
        lim = self.tail.limit()
        if lim is not None and lim > best:
            best = lim
        return best

    def to_json(self) -> dict:
        tail = self.tail.to_json()
        if isinstance(self.tail, Recursive):
            r = self.tail.order
            natural = self.prefix_sq[len(self.prefix_sq) - r:]
            if self.tail.anchor != len(self.prefix_sq) or tuple(natural) != self.tail.seeds:
                tail["anchor"] = self.tail.anchor
                tail["seeds"] = [fmt_q(s) for s in self.tail.seeds]
        return {"prefix_sq": [fmt_q(v) for v in self.prefix_sq], "tail": tail}

    @classmethod
    def from_json(cls, data) -> WeightSequence:
        if not isinstance(data, dict):
            raise SequenceError("sequence JSON must be an object")
        prefix = data.get("prefix_sq", [])
        if not isinstance(prefix, list):
            raise SequenceError("prefix_sq must be a list")
        try:
            prefix = [as_fraction(v) for v in prefix]
        except (TypeError, ValueError) as exc:
            raise SequenceError(f"bad prefix_sq entry: {exc}") from exc
        spec = data.get("tail")
        if spec is None:
            raise SequenceError("weight sequence needs a tail rule")
        if not isinstance(spec, dict) or spec.get("kind") not in _TAILS:
            raise SequenceError(f"unknown tail kind: {spec!r}")
        kind = spec["kind"]
        try:
            if kind == "constant":
                tail = Constant(spec["c"])
            elif kind == "rational_in_n":
                tail = RationalInN(spec["num"], spec["den"])
            else:
                if "seeds" in spec:
                    tail = Recursive(spec["phi"], tuple(spec["seeds"]), int(spec["anchor"]))
                else:
                    tail = Recursive(spec["phi"])
        except KeyError as exc:
            raise SequenceError(f"tail of kind {kind!r} is missing field {exc}") from exc
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SequenceError):
                raise
            raise SequenceError(f"bad tail specification: {exc}") from exc
        if not prefix and kind == "recursive":
            raise SequenceError("recursive tail needs seed weights in prefix_sq")
        return cls(prefix, tail)


def weight_sq(seq: WeightSequence, n: int) -> Fraction:
    return seq.weight_sq(n)


def gamma(seq: WeightSequence, n: int) -> Fraction:
    return seq.gamma(n)


def is_hyponormal_up_to(seq: WeightSequence, N: int) -> Verdict:
    """alpha_n^2 <= alpha_{n+1}^2 for 0 <= n < N; reports the least violation."""
    for n in range(N):
        a, b = seq.weight_sq(n), seq.weight_sq(n + 1)
        if a > b:
            return Verdict.fail(n, N=N, witness=b - a, witness_name="witness_diff")
    return Verdict.ok(N)


def perturb(seq: WeightSequence, j: int, x) -> WeightSequence:
    """Copy of `seq` with alpha_j^2 replaced by x; every other index unchanged."""
    x = as_fraction(x)
    if x <= 0:
        raise SequenceError("perturbed squared weight must be positive")
    if j < 0:
        raise SequenceError("weight index must be nonnegative")
    size = max(len(seq.prefix_sq), j + 1)
    prefix = [seq.weight_sq(i) for i in range(size)]
    prefix[j] = x
    return WeightSequence(prefix, seq.tail)


def bergman_shift() -> WeightSequence:
    """alpha_n^2 = (n+1)/(n+2)."""
    return WeightSequence([], RationalInN((1, 1), (2, 1)))


def flat_shift(c=1) -> WeightSequence:
    return WeightSequence([], Constant(c))
