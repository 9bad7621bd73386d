"""Small dense exact matrices: determinants and positive semidefiniteness."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .rational import as_fraction, fmt_q

__all__ = ["SymMatrix", "det", "is_psd", "negative_principal_minor", "leading_pivots"]


class SymMatrix:
    """Symmetric matrix with Fraction entries (immutable)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("SymMatrix needs a nonempty square array")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> SymMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(fmt_q(v) for v in r) for r in self.rows)
        return f"SymMatrix([{body}])"

    def submatrix(self, idx) -> list[list[Fraction]]:
        return [[self.rows[i][j] for j in idx] for i in idx]

    def det(self) -> Fraction:
        return det(self.rows)

    def scaled(self, k) -> SymMatrix:
        k = as_fraction(k)
        return SymMatrix([[k * v for v in r] for r in self.rows])

    def __add__(self, other: SymMatrix) -> SymMatrix:
        return SymMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def det(rows) -> Fraction:
    """Exact determinant by Gaussian elimination with row pivoting."""
    a = [[as_fraction(v) for v in r] for r in rows]
    n = len(a)
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        out *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_c = a[col]
                row_r = a[r]
                for k in range(col + 1, n):
                    row_r[k] -= f * row_c[k]
    return sign * out


def leading_pivots(m: SymMatrix) -> list[Fraction]:
    """Pivots of unpivoted symmetric elimination, stopping at the first <= 0.

    While all pivots so far are positive, the k-th pivot equals the ratio of
    consecutive leading principal minors.
    """
    a = m.tolist()
    n = m.dim
    piv = []
    for col in range(n):
        p = a[col][col]
        piv.append(p)
        if p <= 0:
            break
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for k in range(col + 1, n):
                    a[r][k] -= f * a[col][k]
    return piv


def negative_principal_minor(m: SymMatrix):
    """First principal minor (by size, then lexicographic index) that is < 0.

    Returns (indices, value) or None when all principal minors are >= 0.
    """
    n = m.dim
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            v = det(m.submatrix(idx))
            if v < 0:
                return idx, v
    return None


def is_psd(m: SymMatrix) -> bool:
    """Exact positive semidefiniteness.

    Fast path: if the first n-1 leading pivots are positive, the matrix is
    PSD iff the last pivot is >= 0.  Otherwise every principal minor is
    checked.
    """
    piv = leading_pivots(m)
    if len(piv) == m.dim and all(p > 0 for p in piv[:-1]):
        return piv[-1] >= 0
    return negative_principal_minor(m) is None


def psd_witness(m: SymMatrix):
    """None if PSD, else a negative principal minor value (full det when possible)."""
    piv = leading_pivots(m)
    if len(piv) == m.dim and all(p > 0 for p in piv[:-1]):
        if piv[-1] >= 0:
            return None
        return m.det()
    found = negative_principal_minor(m)
    return None if found is None else found[1]
