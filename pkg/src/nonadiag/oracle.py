"""Dense exact reference: Bareiss determinant and Gauss-Jordan inverse over Q.

Deliberately plain O(n^3) code on :class:`fractions.Fraction`; it shares no
machinery with the structured solver it is used to audit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional

from .band_matrix import DenseMatrix
from .scalar import Scalar

__all__ = ["OracleResult", "as_rational_rows", "bareiss_det", "gauss_jordan_inverse"]


@dataclass(frozen=True)
class OracleResult:
    determinant: Fraction
    inverse: Optional[DenseMatrix]


def _rational(value) -> Fraction:
    if isinstance(value, Scalar):
        return value.as_rational()
    return Fraction(value)


def as_rational_rows(x) -> List[List[Fraction]]:
    rows = x.rows if isinstance(x, DenseMatrix) else x
    out = [[_rational(v) for v in row] for row in rows]
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix must be square")
    return out


def bareiss_det(x, trace=None) -> Fraction:
    """Determinant by fraction-free elimination.

    Rows are swapped (with a sign flip) when a pivot is zero.  Rational input
    is scaled to integers first and the scale divided out at the end.  If
    ``trace`` is a list, every intermediate matrix entry is appended to it.
    """
    rows = as_rational_rows(x)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    ints = []
    for row in rows:
        den = lcm(*(q.denominator for q in row))
        scale *= den
        ints.append([int(q * den) for q in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if ints[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if ints[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            ints[k], ints[swap] = ints[swap], ints[k]
            sign = -sign
        pivot = ints[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ints[i][j] * pivot - ints[i][k] * ints[k][j]
                # exact by Sylvester's identity
                q, r = divmod(num, prev)
                assert r == 0
                ints[i][j] = q
                if trace is not None:
                    trace.append(q)
            ints[i][k] = 0
        prev = pivot
    return Fraction(sign * ints[n - 1][n - 1], scale)


def gauss_jordan_inverse(x) -> OracleResult:
    """Inverse by Gauss-Jordan elimination with first-nonzero pivoting."""
    rows = as_rational_rows(x)
    n = len(rows)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    det = Fraction(1)
    for k in range(n):
        pr = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if pr is None:
            return OracleResult(Fraction(0), None)
        if pr != k:
            aug[k], aug[pr] = aug[pr], aug[k]
            det = -det
        pivot = aug[k][k]
        det *= pivot
        inv_p = 1 / pivot
        pivot_row = [v * inv_p for v in aug[k]]
        aug[k] = pivot_row
        for i in range(n):
            if i != k:
                factor = aug[i][k]
                if factor:
                    row = aug[i]
                    aug[i] = [a - factor * b for a, b in zip(row, pivot_row)]
    return OracleResult(det, DenseMatrix([row[n:] for row in aug]))
