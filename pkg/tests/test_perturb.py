import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
import sympy as sp

from conftest import perturbed_bergman, recursive_tail
from wshift.berger import measure_from_atoms, recursively_generated, shift_from_measure
from wshift.errors import NoBracketError, SequenceError, WitnessNotFoundError
from wshift.hankel import det_2hypo, is_k_hyponormal
from wshift.perturb import gap_witness, membership, modulus_h2, omega_interval, prepend, theorem32_check
from wshift.quad import is_positively_quad_hyponormal
from wshift.shifts import bergman_shift, flat_shift, perturb

getcontext().prec = 40
LOWER_BERGMAN = Fraction((Decimal(63) - Decimal(129).sqrt()) / 80)
UPPER_BERGMAN = Fraction(24, 35)
LOWER_RECURSIVE = Fraction(4 - Decimal(6).sqrt())
TOL = Fraction(1, 10**9)


@pytest.fixture(scope="module")
def omega_bergman():
    return omega_interval(bergman_shift(), 2, 1, TOL, 25)


@pytest.fixture(scope="module")
def omega_recursive():
    return omega_interval(recursive_tail(Fraction(2)), 2, 1, TOL, 25)


def test_perturbed_bergman_interval(omega_bergman):
    assert abs(omega_bergman.lower_in - LOWER_BERGMAN) <= TOL and omega_bergman.lower.contains(LOWER_BERGMAN)
    assert abs(omega_bergman.upper_in - UPPER_BERGMAN) <= TOL and omega_bergman.upper.contains(UPPER_BERGMAN)
    assert omega_bergman.lower.width <= TOL and omega_bergman.upper.width <= TOL
    assert omega_bergman.lower_closed and omega_bergman.upper_closed


def test_perturbed_bergman_endpoints_are_closed(omega_bergman):
    member = membership(bergman_shift(), 2, 1, 25)
    assert member(omega_bergman.lower_in) and member(omega_bergman.upper_in)
    assert not member(omega_bergman.lower.lo) and not member(omega_bergman.upper.hi)
    assert member(UPPER_BERGMAN) and not member(UPPER_BERGMAN + Fraction(1, 10**6))


def test_interval_does_not_depend_on_the_current_weight(omega_bergman):
    res = omega_interval(perturbed_bergman(Fraction(7, 10)), 2, 1, TOL, 25)
    assert abs(res.lower_in - omega_bergman.lower_in) <= TOL
    assert abs(res.upper_in - omega_bergman.upper_in) <= TOL


def test_recursive_tail_interval(omega_recursive):
    assert abs(omega_recursive.lower_in - LOWER_RECURSIVE) <= TOL
    assert omega_recursive.upper_in == 2 and omega_recursive.upper.contains(2)


def test_recursive_tail_three_hyponormal_interval_degenerates():
    res = omega_interval(recursive_tail(Fraction(2)), 3, 1, TOL, 25)
    assert res.width < Fraction(1, 10**8)
    assert res.lower.contains(2) and res.upper.contains(2)


def test_empty_bracket():
    broken = perturb(bergman_shift(), 5, Fraction(1, 10))
    with pytest.raises(NoBracketError, match="empty bracket"):
        omega_interval(broken, 2, 1, TOL, 10)


def test_modulus_h2_for_123():
    res = modulus_h2(1, 2, 3, Fraction(1, 10**12), 50)
    assert abs(res.upper_in - Fraction(2, 3)) <= Fraction(1, 10**12)
    assert res.upper_in == Fraction(2, 3)


def test_modulus_h2_symbolic_oracle():
    """Largest x with det A(0;2) >= 0 for (x, 1, 2, 3, 10/3, ...)."""
    x = sp.symbols("x", positive=True)
    w = [x, 1, 2, 3]
    g = [sp.Integer(1)]
    for k in range(4):
        g.append(g[-1] * w[k])
    d0 = sp.factor(sp.Matrix(3, 3, lambda i, j: g[i + j]).det())
    roots = [r for r in sp.solve(d0, x) if r.is_positive]
    assert roots == [sp.Rational(2, 3)]
    assert d0.subs(x, sp.Rational(2, 3) + sp.Rational(1, 100)) < 0


def test_modulus_h2_grid_scan():
    res = modulus_h2(1, 2, 3, Fraction(1, 10**6), 20)
    base = recursively_generated(1, 2, 3)
    step = Fraction(1, 400)
    flips = []
    prev = None
    for i in range(1, 400):
        x = step * i
        ok = all(det_2hypo(prepend(base, x), n) >= 0 for n in range(21))
        if prev is not None and ok != prev:
            flips.append(x)
        prev = ok
    assert len(flips) == 1 and flips[0] - step <= res.upper_in < flips[0]


def test_modulus_h2_degenerate():
    with pytest.raises(ValueError):
        modulus_h2(2, 2, 3)


def test_replacing_first_weight_threshold_is_a():
    res = omega_interval(recursively_generated(1, 2, 3), 2, 0, Fraction(1, 10**12), 50)
    assert res.upper_in == 1
    assert not res.lower_closed and res.lower_in < Fraction(1, 10**11)


@pytest.mark.parametrize(
    "j, x, expected",
    [(1, "2", True), (1, "19/10", False), (1, "201/100", False), (1, "199/100", False), (0, "1/2", True), (0, "1", True), (0, "11/10", False)],
)
def test_subnormal_and_two_hyponormal_agree(j, x, expected):
    sub, two = theorem32_check(1, 2, 3, j, Fraction(x), 50)
    assert sub.holds == two.holds == expected
    assert sub.status != "unknown"


def test_agreement_sweep_for_124():
    for x in [Fraction(k, 20) for k in range(1, 60)]:
        for j in (0, 1, 2):
            sub, two = theorem32_check(1, 2, 4, j, x, 30)
            assert sub.holds == two.holds, (j, x)


@pytest.mark.parametrize("which", ["perturbed_bergman", "recursive_tail"])
def test_gap_witness(which, omega_bergman, omega_recursive):
    seq, interval = (bergman_shift(), omega_bergman) if which == "perturbed_bergman" else (recursive_tail(Fraction(2)), omega_recursive)
    x, two, pqh = gap_witness(seq, 1, TOL, 30, interval=interval)
    assert x < interval.lower.lo
    cand = perturb(seq, 1, x)
    assert is_k_hyponormal(cand, 2, 30).fails and two.fails
    assert is_positively_quad_hyponormal(cand, 30, strict=True).holds and pqh.holds


def test_gap_witness_rejects_flat():
    with pytest.raises(SequenceError, match="not strictly increasing"):
        gap_witness(flat_shift(), 1, TOL, 10)


def test_gap_witness_budget():
    with pytest.raises(WitnessNotFoundError, match="witness not found within budget"):
        gap_witness(bergman_shift(), 1, TOL, 10, budget=0)


def _random_instance(rng):
    if rng.random() < 0.5:
        r = 3
        atoms = sorted({Fraction(rng.randint(1, 24), rng.randint(1, 4)) for _ in range(r)})
        while len(atoms) < 2:
            atoms.append(atoms[-1] + 1)
        dens = [Fraction(rng.randint(1, 6)) for _ in atoms]
        total = sum(dens)
        return shift_from_measure(measure_from_atoms(atoms, [d / total for d in dens])), rng.choice([0, 1, 2])
    return bergman_shift(), rng.choice([1, 2, 3])


def test_interval_structure_has_no_gaps():
    rng = random.Random(2024)
    for _ in range(50):
        seq, j = _random_instance(rng)
        if not is_k_hyponormal(seq, 2, 10).holds:
            continue
        res = omega_interval(seq, 2, j, Fraction(1, 10**6), 10)
        member = membership(seq, 2, j, 10)
        lo = max(res.lower_in - Fraction(1, 10), Fraction(1, 10**6))
        hi = res.upper_in + Fraction(1, 10)
        pattern = [member(lo + (hi - lo) * i / 99) for i in range(100)]
        # in-set points form one contiguous run
        runs = sum(1 for a, b in zip([False] + pattern, pattern) if b and not a)
        assert runs <= 1
        assert member(res.lower_in) and member(res.upper_in)


@pytest.mark.parametrize("make", [bergman_shift, lambda: recursive_tail(Fraction(2))])
def test_endpoints_stable_in_the_horizon(make):
    seq = make()
    ref = omega_interval(seq, 2, 1, TOL, 50)
    for N in (3, 10, 25):
        res = omega_interval(seq, 2, 1, TOL, N)
        assert (res.lower_in, res.upper_in) == (ref.lower_in, ref.upper_in)
