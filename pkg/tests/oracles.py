"""Independent reference computations used only by the tests.

Nothing here imports the package's numerics.  Determinants and the
quadratic self-commutator come from sympy, with the commutator assembled
from the operator itself.  Eigenvalues come from numpy and integrals
from scipy.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy as sp


def moments_from_weights(weights_sq, count):
    g = [Fraction(1)]
    for k in range(count - 1):
        g.append(g[-1] * weights_sq[k])
    return g


def hankel_det_sympy(weights_sq, n, k):
    g = moments_from_weights(weights_sq, n + 2 * k + 1)
    m = sp.Matrix(k + 1, k + 1, lambda i, j: sp.Rational(g[n + i + j].numerator, g[n + i + j].denominator))
    return Fraction(str(m.det()))


def psd_by_eigen(rows, tol=1e-9) -> bool:
    a = np.array([[float(x) for x in row] for row in rows])
    return bool(np.linalg.eigvalsh(a).min() >= -tol)


def det_sympy(rows):
    m = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in rows])
    return Fraction(str(m.det()))


def operator_dn_polynomial(weights_sq, n):
    """det P_n [(W + sW^2)^*, W + sW^2] P_n as a polynomial in t = |s|^2, from the operator.

    Coefficients lowest degree first, as Fractions.
    """
    a, b = sp.symbols("a b", real=True)
    s = a + sp.I * b
    size = n + 4
    alpha = [sp.sqrt(sp.Rational(w.numerator, w.denominator)) for w in weights_sq[: size + 2]]
    T = sp.zeros(size, size)
    for j in range(size):
        if j + 1 < size:
            T[j + 1, j] += alpha[j]
        if j + 2 < size:
            T[j + 2, j] += s * alpha[j] * alpha[j + 1]
    C = T.H * T - T * T.H
    block = C[: n + 1, : n + 1]
    d = sp.expand(sp.simplify(block.det()))
    t = sp.symbols("t")
    poly = sp.Poly(sp.expand(d.subs(b, 0).subs(a, sp.sqrt(t))), t)
    # the determinant depends on s only through |s|^2: check with b != 0 too
    assert sp.simplify(d.subs({a: sp.Rational(1, 3), b: sp.Rational(1, 2)}) - poly.as_expr().subs(t, sp.Rational(13, 36))) == 0
    return [Fraction(str(c)) for c in reversed(poly.all_coeffs())]


def riemann_moment(density, k, lo=0.0, hi=1.0):
    from scipy.integrate import quad

    return quad(lambda t: t**k * density(t), lo, hi)[0]
