"""Inverse of a cyclic nonadiagonal matrix from its structured LU factors.

The last six columns of ``K^-1`` come straight from the factors: closed forms
for the bottom-right triangle, then back-substitution rows for the rest.
The remaining columns follow from ``K^-1 K = I`` read one column of ``K`` at
a time, each step dividing by a superdiagonal ``z_j`` (never zero in ``K_t``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .band_matrix import CyclicNonadiagonal, DenseMatrix, reverse_rows, to_dense, validate
from .errors import SingularMatrix, VerificationFailed, ZeroPivot
from .factorization import FLOAT_PIVOT_TOL, LUFactors, determinant, factorize

__all__ = [
    "InverseResult",
    "last_six_columns",
    "back_columns",
    "invert",
    "anti_inverse",
]


@dataclass(frozen=True)
class InverseResult:
    inverse: DenseMatrix
    determinant: object
    verified: bool
    substitutions: int = 0


def last_six_columns(lu: LUFactors) -> List[list]:
    """Columns ``C_n, C_{n-1}, ..., C_{n-5}`` of ``K_t^-1`` (1-based lists).

    Each returned list has a dummy slot 0 so that ``col[i]`` is ``S_{i,j}``.
    """
    n = lu.n
    c, e, P, T = lu.c, lu.e, lu.P, lu.T
    f, g, al = lu.f, lu.g, lu.alpha
    k, h, w, v = lu.k, lu.h, lu.w, lu.v
    zero, one = lu.zero, lu.one
    S = {j: [zero] * (n + 1) for j in range(n - 5, n + 1)}

    # bottom-right triangle
    S[n][n] = one / c[n]
    S[n][n - 1] = -(v[n - 1] * S[n][n]) / c[n - 1]

    S[n - 1][n] = -h[n - 1] / c[n]
    S[n - 1][n - 1] = (one - v[n - 1] * S[n - 1][n]) / c[n - 1]

    col = S[n - 2]
    col[n] = (-h[n - 2] + h[n - 1] * k[n - 2]) / c[n]
    col[n - 1] = (-k[n - 2] - v[n - 1] * col[n]) / c[n - 1]
    col[n - 2] = (one - w[n - 2] * col[n - 1] - v[n - 2] * col[n]) / c[n - 2]

    col = S[n - 3]
    col[n] = (
        -h[n - 3] + h[n - 2] * f[n - 2] + h[n - 1] * k[n - 3]
        - h[n - 1] * k[n - 2] * f[n - 2]
    ) / c[n]
    col[n - 1] = (-k[n - 3] + k[n - 2] * f[n - 2] - v[n - 1] * col[n]) / c[n - 1]
    col[n - 2] = (-f[n - 2] - w[n - 2] * col[n - 1] - v[n - 2] * col[n]) / c[n - 2]
    col[n - 3] = (
        one - e[n - 3] * col[n - 2] - w[n - 3] * col[n - 1] - v[n - 3] * col[n]
    ) / c[n - 3]

    col = S[n - 4]
    col[n] = (
        -h[n - 4] + h[n - 3] * f[n - 3] + h[n - 2] * g[n - 2]
        - h[n - 2] * f[n - 2] * f[n - 3]
        + h[n - 1] * k[n - 4] - h[n - 1] * k[n - 3] * f[n - 3]
        - h[n - 1] * k[n - 2] * g[n - 2]
        + h[n - 1] * k[n - 2] * f[n - 2] * f[n - 3]
    ) / c[n]
    col[n - 1] = (
        -k[n - 4] + k[n - 3] * f[n - 3] + k[n - 2] * g[n - 2]
        - k[n - 2] * f[n - 2] * f[n - 3] - v[n - 1] * col[n]
    ) / c[n - 1]
    col[n - 2] = (
        -g[n - 2] + f[n - 2] * f[n - 3] - w[n - 2] * col[n - 1] - v[n - 2] * col[n]
    ) / c[n - 2]
    col[n - 3] = (
        -f[n - 3] - e[n - 3] * col[n - 2] - w[n - 3] * col[n - 1] - v[n - 3] * col[n]
    ) / c[n - 3]
    col[n - 4] = (
        one - e[n - 4] * col[n - 3] - P[n - 4] * col[n - 2]
        - w[n - 4] * col[n - 1] - v[n - 4] * col[n]
    ) / c[n - 4]

    col = S[n - 5]
    # the last factor of the fourth h_{n-2} product is f_{n-4}
    col[n] = (
        -h[n - 5] + h[n - 4] * f[n - 4] + h[n - 3] * g[n - 3]
        - h[n - 3] * f[n - 3] * f[n - 4]
        + h[n - 2] * al[n - 2] - h[n - 2] * g[n - 2] * f[n - 4]
        - h[n - 2] * f[n - 2] * g[n - 3]
        + h[n - 2] * f[n - 2] * f[n - 3] * f[n - 4]
        + h[n - 1] * k[n - 5] - h[n - 1] * k[n - 4] * f[n - 4]
        - h[n - 1] * k[n - 3] * g[n - 3]
        + h[n - 1] * k[n - 3] * f[n - 3] * f[n - 4]
        - h[n - 1] * k[n - 2] * al[n - 2]
        + h[n - 1] * k[n - 2] * g[n - 2] * f[n - 4]
        + h[n - 1] * k[n - 2] * f[n - 2] * g[n - 3]
        - h[n - 1] * k[n - 2] * f[n - 2] * f[n - 3] * f[n - 4]
    ) / c[n]
    col[n - 1] = (
        -k[n - 5] + k[n - 4] * f[n - 4] + k[n - 3] * g[n - 3]
        - k[n - 3] * f[n - 3] * f[n - 4]
        + k[n - 2] * al[n - 2] - k[n - 2] * g[n - 2] * f[n - 4]
        - k[n - 2] * f[n - 2] * g[n - 3]
        + k[n - 2] * f[n - 2] * f[n - 3] * f[n - 4]
        - v[n - 1] * col[n]
    ) / c[n - 1]
    col[n - 2] = (
        -al[n - 2] + g[n - 2] * f[n - 4] + f[n - 2] * g[n - 3]
        - f[n - 2] * f[n - 3] * f[n - 4]
        - w[n - 2] * col[n - 1] - v[n - 2] * col[n]
    ) / c[n - 2]
    col[n - 3] = (
        -g[n - 3] + f[n - 3] * f[n - 4] - e[n - 3] * col[n - 2]
        - w[n - 3] * col[n - 1] - v[n - 3] * col[n]
    ) / c[n - 3]
    col[n - 4] = (
        -f[n - 4] - e[n - 4] * col[n - 3] - P[n - 4] * col[n - 2]
        - w[n - 4] * col[n - 1] - v[n - 4] * col[n]
    ) / c[n - 4]
    col[n - 5] = (
        one - e[n - 5] * col[n - 4] - P[n - 5] * col[n - 3] - T[n - 5] * col[n - 2]
        - w[n - 5] * col[n - 1] - v[n - 5] * col[n]
    ) / c[n - 5]

    # rows n-2 .. n-5 above the triangle
    for j in (n, n - 1):
        S[j][n - 2] = -(w[n - 2] * S[j][n - 1] + v[n - 2] * S[j][n]) / c[n - 2]
    for j in (n, n - 1, n - 2):
        S[j][n - 3] = -(
            e[n - 3] * S[j][n - 2] + w[n - 3] * S[j][n - 1] + v[n - 3] * S[j][n]
        ) / c[n - 3]
    for j in range(n, n - 4, -1):
        S[j][n - 4] = -(
            e[n - 4] * S[j][n - 3] + P[n - 4] * S[j][n - 2]
            + w[n - 4] * S[j][n - 1] + v[n - 4] * S[j][n]
        ) / c[n - 4]
    for j in range(n, n - 5, -1):
        S[j][n - 5] = -(
            e[n - 5] * S[j][n - 4] + P[n - 5] * S[j][n - 3] + T[n - 5] * S[j][n - 2]
            + w[n - 5] * S[j][n - 1] + v[n - 5] * S[j][n]
        ) / c[n - 5]

    # generic upward sweep, rows n-6 .. 1
    for j in range(n, n - 6, -1):
        col = S[j]
        for i in range(n - 6, 0, -1):
            col[i] = -(
                e[i] * col[i + 1] + P[i] * col[i + 2] + T[i] * col[i + 3]
                + lu.band("z", i) * col[i + 4] + w[i] * col[n - 1] + v[i] * col[n]
            ) / c[i]

    return [S[j] for j in range(n, n - 6, -1)]


def _combine(lu: LUFactors, unit_row: int, terms, divisor_index: int, cols):
    """``(E_r - sum(coef * C_m)) / z_j`` as a 1-based column list."""
    n = lu.n
    divisor = lu.band("z", divisor_index)
    if lu.mode == "float" and abs(divisor) < FLOAT_PIVOT_TOL:
        raise ZeroPivot("z", divisor_index, divisor)
    out = [lu.zero] * (n + 1)
    out[unit_row] = lu.one
    for coef, m in terms:
        if not coef:
            continue
        col = cols[m]
        for i in range(1, n + 1):
            if col[i]:
                out[i] = out[i] - coef * col[i]
    for i in range(1, n + 1):
        out[i] = out[i] / divisor
    return out


def back_columns(lu: LUFactors, six: List[list]) -> DenseMatrix:
    """All ``n`` columns of ``K_t^-1``, given the last six."""
    n = lu.n
    band = lu.band
    cols = {n - r: six[r] for r in range(6)}

    cols[n - 6] = _combine(
        lu,
        n - 2,
        [
            (band("M", n - 5), n - 5),
            (band("A", n - 4), n - 4),
            (band("a", n - 3), n - 3),
            (band("d", n - 2), n - 2),
            (band("b", n - 1), n - 1),
            (band("B", n), n),
        ],
        n - 6,
        cols,
    )
    cols[n - 7] = _combine(
        lu,
        n - 3,
        [
            (band("M", n - 6), n - 6),
            (band("A", n - 5), n - 5),
            (band("a", n - 4), n - 4),
            (band("d", n - 3), n - 3),
            (band("b", n - 2), n - 2),
            (band("B", n - 1), n - 1),
            (band("N", n), n),
        ],
        n - 7,
        cols,
    )
    for j in range(n - 8, 0, -1):
        cols[j] = _combine(
            lu,
            j + 4,
            [
                (band("M", j + 1), j + 1),
                (band("A", j + 2), j + 2),
                (band("a", j + 3), j + 3),
                (band("d", j + 4), j + 4),
                (band("b", j + 5), j + 5),
                (band("B", j + 6), j + 6),
                (band("N", j + 7), j + 7),
                (band("R", j + 8), j + 8),
            ],
            j,
            cols,
        )
    return DenseMatrix(
        [[cols[j][i] for j in range(1, n + 1)] for i in range(1, n + 1)]
    )


def invert(
    m: CyclicNonadiagonal, verify: Optional[bool] = None, mode: str = "exact"
) -> InverseResult:
    """Determinant and inverse of ``m``.

    ``verify`` (default: on in exact mode, off in float mode) multiplies the
    input by the computed inverse and demands the identity exactly.
    """
    validate(m)
    if verify is None:
        verify = mode == "exact"
    if mode == "float" and verify:
        raise ValueError("verification needs exact mode")
    lu = factorize(m, mode=mode)
    det = determinant(lu)
    if mode == "exact" and det == 0:
        raise SingularMatrix()
    if mode == "float" and det == 0.0:
        raise SingularMatrix()
    inv_t = back_columns(lu, last_six_columns(lu))
    if mode == "exact":
        inverse = inv_t.map(lambda s: s.eval_at_zero())
    else:
        inverse = inv_t
    if verify:
        product = to_dense(m).map(lambda s: s.as_rational()) @ inverse
        if product != DenseMatrix.identity(m.n, one=1, zero=0):
            raise VerificationFailed("K @ K^-1 differs from the identity")
    return InverseResult(inverse, det, bool(verify), len(lu.substitutions))


def anti_inverse(
    m: CyclicNonadiagonal, verify: Optional[bool] = None, mode: str = "exact"
) -> InverseResult:
    """Inverse of the anti-nonadiagonal ``Y = K R``, which is ``R K^-1``."""
    res = invert(m, verify=verify, mode=mode)
    return InverseResult(reverse_rows(res.inverse), res.determinant, res.verified, res.substitutions)
