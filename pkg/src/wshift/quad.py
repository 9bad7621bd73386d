"""Quadratic hyponormality of weighted shifts.

For s in C, D_n(s) = P_n [(W + sW^2)^*, W + sW^2] P_n is tridiagonal with
diagonal q_m = u_m + t v_m and |off-diagonal|^2 = t w_m, where t = |s|^2.
Its determinant d_n(t) = sum_i c(n,i) t^i obeys a three-term recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateError, PreconditionError, SequenceError
from .numerics import RationalPolynomial, as_fraction, negative_point_on_halfline
from .shifts import WeightSequence
from .verdict import Verdict

__all__ = [
    "CommutatorData",
    "DnPolynomial",
    "commutator_data",
    "dn_coeffs",
    "dn_table",
    "dn_via_det",
    "dn_matrix",
    "beta",
    "is_positively_quad_hyponormal",
    "is_quad_hyponormal",
    "theorem22_bound_check",
    "lemma41_equivalences",
    "Lemma41Result",
    "theta_and_kn",
    "ThetaSeries",
]


@dataclass(frozen=True)
class CommutatorData:
    n: int
    u: Fraction
    v: Fraction
    w: Fraction
    p: Fraction


def _uvw(seq: WeightSequence, n: int):
    a = seq.virtual_weight_sq
    u = a(n) - a(n - 1)
    v = a(n) * a(n + 1) - a(n - 1) * a(n - 2)
    w = a(n) * (a(n + 1) - a(n - 1)) ** 2
    return u, v, w


def commutator_data(seq: WeightSequence, n: int) -> CommutatorData:
    """(u_n, v_n, w_n, p_n) with alpha_{-1} = alpha_{-2} = 0 and p_n = u_n v_{n+1} - w_n."""
    u, v, w = _uvw(seq, n)
    v_next = _uvw(seq, n + 1)[1]
    return CommutatorData(n, u, v, w, u * v_next - w)


def _series(seq: WeightSequence, N: int):
    rows = [_uvw(seq, m) for m in range(N + 1)]
    return [r[0] for r in rows], [r[1] for r in rows], [r[2] for r in rows]


@dataclass(frozen=True)
class DnPolynomial:
    """d_n(t) = sum_i c(n,i) t^i, coefficients lowest degree first."""

    n: int
    coeffs: tuple

    @property
    def poly(self) -> RationalPolynomial:
        return RationalPolynomial(self.coeffs)

    def __call__(self, t):
        return self.poly(as_fraction(t))

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)


def dn_table(seq: WeightSequence, N: int) -> list[DnPolynomial]:
    """c(n, i) for 0 <= n <= N, 0 <= i <= n+1.

    Rows 0 and 1 are seeded explicitly; later rows use
    c(n+2,i) = u_{n+2} c(n+1,i) + v_{n+2} c(n+1,i-1) - w_{n+1} c(n,i-1).
    """
    u, v, w = _series(seq, max(N, 1))
    rows = [[u[0], v[0]], [u[0] * u[1], u[1] * v[0] + v[1] * u[0] - w[0], v[0] * v[1]]]
    for m in range(2, N + 1):
        prev, prev2 = rows[m - 1], rows[m - 2]
        row = []
        for i in range(m + 2):
            c = u[m] * prev[i] if i <= m else Fraction(0)
            if i >= 1:
                c += v[m] * prev[i - 1]
                if i - 1 <= m - 1:
                    c -= w[m - 1] * prev2[i - 1]
            row.append(c)
        rows.append(row)
    return [DnPolynomial(n, tuple(rows[n])) for n in range(N + 1)]


def dn_coeffs(seq: WeightSequence, n: int) -> DnPolynomial:
    return dn_table(seq, n)[n]


def dn_via_det(seq: WeightSequence, n: int, t) -> Fraction:
    """det D_n(t) by d_{m+1} = q_{m+1} d_m - t w_m d_{m-1}, d_{-1} = 1."""
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t = |s|^2 must be nonnegative")
    u, v, w = _series(seq, n)
    d_prev, d = Fraction(1), u[0] + t * v[0]
    for m in range(1, n + 1):
        d_prev, d = d, (u[m] + t * v[m]) * d - t * w[m - 1] * d_prev
    return d


def dn_matrix(seq: WeightSequence, n: int, t) -> list[list[Fraction]]:
    """Tridiagonal (n+1)x(n+1) matrix with det = det D_n(t).

    Off-diagonal pairs (r_m, conj r_m) only enter the determinant through
    |r_m|^2 = t w_m, so the superdiagonal carries t w_m and the subdiagonal 1.
    """
    t = as_fraction(t)
    u, v, w = _series(seq, n)
    out = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for m in range(n + 1):
        out[m][m] = u[m] + t * v[m]
        if m < n:
            out[m][m + 1] = t * w[m]
            out[m + 1][m] = Fraction(1)
    return out


def _vu_product(v, u, i, n) -> Fraction:
    """v_0 ... v_{i-1} u_i ... u_n."""
    out = Fraction(1)
    for m in range(i):
        out *= v[m]
    for m in range(i, n + 1):
        out *= u[m]
    return out


def beta(seq: WeightSequence, n: int, i: int) -> Fraction:
    """c(n,i) - v_0...v_{i-1} u_i...u_n, with beta(n,0) = 0."""
    if i == 0:
        return Fraction(0)
    u, v, _ = _series(seq, n)
    return dn_coeffs(seq, n)[i] - _vu_product(v, u, i, n)


def is_positively_quad_hyponormal(seq: WeightSequence, N: int, *, strict: bool = False) -> Verdict:
    """All c(n,i) >= 0 (or > 0 with strict=True) for n <= N."""
    for row in dn_table(seq, N):
        for i, c in enumerate(row.coeffs if len(row.coeffs) == row.n + 2 else _pad(row)):
            if c < 0 or (strict and c == 0):
                return Verdict.fail(row.n, N=N, i=i, witness=c, witness_name="witness_coeff")
    return Verdict.ok(N)


def _pad(row: DnPolynomial):
    return tuple(row[i] for i in range(row.n + 2))


def is_quad_hyponormal(seq: WeightSequence, N: int) -> Verdict:
    """D_n(t) >= 0 for every t >= 0 and every n <= N, decided exactly.

    At t = 0 the matrix is diag(u).  For t > 0 it splits into irreducible
    tridiagonal blocks at each m with w_m = 0; an irreducible block is PSD
    iff all its leading minors are >= 0, and those minors are polynomials
    in t whose sign on t >= 0 is settled by Sturm counting.
    """
    u, v, w = _series(seq, N)
    for m in range(N + 1):
        if u[m] < 0:
            return Verdict.fail(m, N=N, witness=Fraction(0), witness_name="witness_t")
    one = RationalPolynomial([1])
    tpoly = RationalPolynomial([0, 1])
    e_prev, e = None, None
    for m in range(N + 1):
        q = RationalPolynomial([u[m], v[m]])
        if m == 0 or w[m - 1] == 0:
            e_prev, e = one, q
        else:
            e_prev, e = e, q * e - tpoly * (w[m - 1] * e_prev)
        t_bad = negative_point_on_halfline(e)
        if t_bad is not None:
            return Verdict.fail(m, N=N, witness=t_bad, witness_name="witness_t")
    return Verdict.ok(N)


def theorem22_bound_check(seq: WeightSequence, N: int) -> Verdict:
    """c(n,i) >= v_0...v_{i-1} u_i...u_n for n <= N, 0 <= i <= n+1.

    Requires 2-hyponormality up to N+2 (checked).
    """
    from .hankel import is_k_hyponormal

    if not is_k_hyponormal(seq, 2, N + 2).holds:
        raise PreconditionError("requires 2-hyponormality")
    u, v, _ = _series(seq, N)
    for row in dn_table(seq, N):
        n = row.n
        for i in range(n + 2):
            gap = row[i] - _vu_product(v, u, i, n)
            if gap < 0:
                return Verdict.fail(n, N=N, i=i, witness=gap, witness_name="witness_gap")
    return Verdict.ok(N)


@dataclass(frozen=True)
class Lemma41Result:
    """Four per-index conditions over the same weights alpha_n .. alpha_{n+3}.

    Entry k of ``first_failure`` is the least n at which condition k fails
    (None when it holds for every n <= N).
    """

    i: bool
    ii: bool
    iii: bool
    iv: bool
    N: int
    first_failure: tuple

    def as_tuple(self):
        return (self.i, self.ii, self.iii, self.iv)

    def agree(self) -> bool:
        return len(set(self.as_tuple())) == 1

    def to_json(self):
        return {
            "N": self.N,
            "two_hyponormal": self.i,
            "weight_inequality": self.ii,
            "ratio_inequality": self.iii,
            "p_nonnegative": self.iv,
            "first_failure": list(self.first_failure),
        }


def lemma41_equivalences(seq: WeightSequence, N: int) -> Lemma41Result:
    """Evaluate the four equivalent forms of 2-hyponormality for n <= N.

    (i) det A(n;2) >= 0; (ii) alpha_{n+1}^2 (u_{n+1}+u_{n+2})^2 <= u_{n+1} v_{n+2};
    (iii) (alpha_n^2/alpha_{n+2}^2)(u_{n+2}/u_{n+3}) <= u_{n+1}/u_{n+2};
    (iv) p_{n+1} >= 0.  Form (iv) is read at n+1 because p_{n+1} depends on
    exactly the weights alpha_n..alpha_{n+3} that (i)-(iii) use at n; p_0 >= 0
    holds for any increasing sequence.
    """
    from .hankel import det_2hypo

    if not seq.is_strictly_increasing(N + 3):
        raise SequenceError("the four 2-hyponormality forms need strictly increasing weights")
    a = seq.weight_sq
    uu = lambda m: _uvw(seq, m)[0]
    vv = lambda m: _uvw(seq, m)[1]
    fails = [None, None, None, None]
    for n in range(N + 1):
        checks = (
            det_2hypo(seq, n) >= 0,
            a(n + 1) * (uu(n + 1) + uu(n + 2)) ** 2 <= uu(n + 1) * vv(n + 2),
            (a(n) / a(n + 2)) * (uu(n + 2) / uu(n + 3)) <= uu(n + 1) / uu(n + 2),
            commutator_data(seq, n + 1).p >= 0,
        )
        for k, ok in enumerate(checks):
            if not ok and fails[k] is None:
                fails[k] = n
    return Lemma41Result(*(f is None for f in fails), N=N, first_failure=tuple(fails))


@dataclass(frozen=True)
class ThetaSeries:
    theta: tuple  # Theta_n = u_{n+1}/u_{n+2}, n = 0..N
    k: tuple  # k_n = v_n/u_n, n = 2..N
    bound: Fraction  # (u_1/u_2) * (||W||^2 / (alpha_0 alpha_1))^2
    N: int

    def to_json(self):
        from .numerics import fmt_q

        return {
            "N": self.N,
            "theta": [fmt_q(x) for x in self.theta],
            "k_n": [fmt_q(x) for x in self.k],
            "theta_upper_bound": fmt_q(self.bound),
        }


def theta_and_kn(seq: WeightSequence, N: int) -> ThetaSeries:
    """Lemma-5.1 quotients and the k_n = v_n/u_n series used for perturbation bounds."""
    u, v, _ = _series(seq, N + 2)
    for m in range(N + 3):
        if u[m] == 0:
            raise DegenerateError("flat segment")
    theta = tuple(u[n + 1] / u[n + 2] for n in range(N + 1))
    ks = tuple(v[n] / u[n] for n in range(2, N + 1))
    norm_sq = seq.norm_sq_estimate(N + 3)
    bound = u[1] / u[2] * norm_sq**2 / (seq.weight_sq(0) * seq.weight_sq(1))
    return ThetaSeries(theta, ks, bound, N)
