from fractions import Fraction

import pytest
import sympy as sp

from conftest import perturbed_bergman, recursive_tail
from oracles import hankel_det_sympy, psd_by_eigen
from wshift.errors import DegenerateError
from wshift.hankel import det_2hypo, hankel, is_k_hyponormal, lemma64_interpolate
from wshift.numerics import SymMatrix, is_psd
from wshift.shifts import WeightSequence, flat_shift


def test_bergman_hankel_is_hilbert(bergman):
    h = hankel(bergman, 0, 2)
    assert h.tolist() == [[Fraction(1, i + j + 1) for j in range(3)] for i in range(3)]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_bergman_is_k_hyponormal(bergman, k):
    assert is_k_hyponormal(bergman, k, 25).status == "holds_up_to"


def test_certified_upgrade(bergman):
    assert is_k_hyponormal(bergman, 3, 10, certify=True).status == "holds"
    # 7/10 breaks 2-hyponormality, so there is nothing to upgrade
    assert is_k_hyponormal(perturbed_bergman(Fraction(7, 10)), 2, 10, certify=True).fails


def test_perturbed_bergman_fails_at_n1_with_exact_witness():
    v = is_k_hyponormal(perturbed_bergman(Fraction(7, 10)), 2, 25)
    assert v.fails and v.n == 1
    assert v.witness == Fraction(-49, 2560000)
    assert v.to_json()["witness_det"] == "-49/2560000"


def test_perturbed_bergman_determinants_match_symbolic():
    x = sp.symbols("x")
    g = [1, sp.Rational(1, 2), x / 2, x * sp.Rational(3, 8), x * sp.Rational(3, 10), x / 4, x * sp.Rational(3, 14), x * sp.Rational(3, 16)]
    dets = [sp.factor(sp.Matrix(3, 3, lambda i, j: g[n + i + j]).det()) for n in range(3)]
    assert sp.expand(dets[0] + x * (40 * x**2 - 63 * x + 24) / 320) == 0
    assert sp.expand(dets[1] + x**2 * (35 * x - 24) / 12800) == 0
    assert sp.expand(dets[2] - x**3 / 112000) == 0
    for xv in (Fraction(2, 3), Fraction(7, 10), Fraction(13, 20)):
        seq = perturbed_bergman(xv)
        for n in range(3):
            assert det_2hypo(seq, n) == Fraction(str(dets[n].subs(x, sp.Rational(xv.numerator, xv.denominator))))


def test_recursive_tail_matrix_entries():
    for xv in (Fraction(1), Fraction(2), Fraction(7, 3)):
        m = hankel(recursive_tail(xv), 0, 3).tolist()
        assert m[0] == [1, Fraction(1, 2), xv / 2, Fraction(3, 2) * xv]
        assert [m[i][3] for i in range(4)] == [Fraction(3, 2) * xv, 5 * xv, 17 * xv, 58 * xv]


def test_recursive_tail_three_hyponormal_only_at_2():
    assert is_k_hyponormal(recursive_tail(Fraction(2)), 3, 25).holds
    for xv in (Fraction(199, 100), Fraction(201, 100), Fraction(19, 10)):
        assert is_k_hyponormal(recursive_tail(xv), 3, 25).fails


@pytest.mark.parametrize("n,k", [(0, 2), (1, 2), (3, 3), (0, 4)])
def test_hankel_det_against_sympy(n, k):
    seq = recursive_tail(Fraction(9, 5))
    assert hankel(seq, n, k).matrix.det() == hankel_det_sympy(seq.weights(n + 2 * k + 1), n, k)


def test_flat_shift_is_k_hyponormal():
    assert is_k_hyponormal(flat_shift(Fraction(5, 3)), 4, 10).holds


def test_hankel_argument_checks(bergman):
    with pytest.raises(ValueError):
        hankel(bergman, -1, 2)
    with pytest.raises(ValueError):
        hankel(bergman, 0, 0)


# --- interpolation between a matrix and its partial rescaling ------------------------


def _scaled_on(A, J, c):
    n = A.dim
    return SymMatrix([[c * A[i, j] if (i, j) in J else A[i, j] for j in range(n)] for i in range(n)])


def test_interpolation_is_psd_and_has_the_right_entries():
    A = SymMatrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
    J = {(0, 0), (0, 1), (1, 0)}
    c = Fraction(3, 2)
    C = _scaled_on(A, J, c)
    assert is_psd(A) and is_psd(C)
    for b in (Fraction(1), Fraction(5, 4), Fraction(3, 2)):
        M = lemma64_interpolate(A, C, J, c, b)
        assert M == _scaled_on(A, J, b)
        assert is_psd(M) and psd_by_eigen(M.tolist())


def test_interpolation_degenerate_scale():
    A = SymMatrix([[1, 0], [0, 1]])
    J = {(0, 0)}
    assert lemma64_interpolate(A, A, J, 1, 1) == A
    with pytest.raises(DegenerateError, match="degenerate scale"):
        lemma64_interpolate(A, A, J, 1, 2)


def test_interpolation_rejects_inconsistent_input():
    A = SymMatrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        lemma64_interpolate(A, A, {(0, 0)}, 2, Fraction(3, 2))
    with pytest.raises(ValueError):
        lemma64_interpolate(A, _scaled_on(A, {(0, 1)}, 2), {(0, 1)}, 2, Fraction(3, 2))


def test_recursive_tail_quick_fail():
    seq = WeightSequence([Fraction(1, 2), Fraction(3, 2), 3, Fraction(10, 3)], recursive_tail(2).tail)
    v = is_k_hyponormal(seq, 2, 25)
    assert v.fails and v.n == 0
