"""Structured Doolittle factorization ``K = L U`` of a cyclic nonadiagonal matrix.

``L`` is unit lower triangular with four subdiagonals ``f, g, alpha, gamma``
in rows ``<= n-2`` and two full bottom rows ``k`` (row n-1) and ``h``
(row n).  ``U`` is upper triangular with diagonal ``c``, superdiagonals
``e, P, T`` and ``z`` (copied from K) and two full right columns ``w``
(column n-1) and ``v`` (column n).

Exact mode works in Q(t).  Before factoring, every zero ``z_i``
(``i <= n-6``) and every zero ``R_i`` becomes ``t``; every pivot that comes
out as the t-free zero becomes ``t`` as well, which is the same as adding
``t`` to ``d_i``.  The working matrix ``K_t`` records all of that, so
``L U = K_t`` holds identically and ``K_t`` at ``t = 0`` is the input.

Float mode runs the same recurrences on doubles and gives up on a tiny
pivot instead of substituting.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .band_matrix import CyclicNonadiagonal, DenseMatrix, validate
from .errors import StructurallySingular, ZeroPivot
from .scalar import ONE, T, ZERO

__all__ = [
    "FLOAT_PIVOT_TOL",
    "LUFactors",
    "Substitution",
    "factorize",
    "determinant",
    "determinant_t",
    "assemble_L",
    "assemble_U",
]

FLOAT_PIVOT_TOL = 1e-12

# 1-based index ranges of the coefficient sequences, as (first, last)
RANGES = {
    "c": lambda n: (1, n),
    "e": lambda n: (1, n - 3),
    "P": lambda n: (1, n - 4),
    "T": lambda n: (1, n - 5),
    "f": lambda n: (2, n - 2),
    "g": lambda n: (3, n - 2),
    "alpha": lambda n: (4, n - 2),
    "gamma": lambda n: (5, n - 2),
    "k": lambda n: (1, n - 2),
    "h": lambda n: (1, n - 1),
    "w": lambda n: (1, n - 2),
    "v": lambda n: (1, n - 1),
}


@dataclass(frozen=True)
class Substitution:
    """One place where ``t`` replaced a zero: band ``z``/``R`` or pivot ``c``."""

    name: str
    index: int

    def __str__(self):
        return f"{self.name}_{self.index}"


class Seq:
    """Read-only 1-based sequence with a first index other than 1."""

    __slots__ = ("first", "values")

    def __init__(self, first: int, values):
        self.first = first
        self.values = tuple(values)

    @property
    def last(self) -> int:
        return self.first + len(self.values) - 1

    def __getitem__(self, i: int):
        if not self.first <= i <= self.last:
            raise IndexError(f"index {i} outside {self.first}..{self.last}")
        return self.values[i - self.first]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def items(self):
        return zip(range(self.first, self.last + 1), self.values)

    def __eq__(self, other):
        if isinstance(other, Seq):
            return self.first == other.first and self.values == other.values
        return NotImplemented

    def __repr__(self):
        return f"Seq({self.first}, {list(self.values)!r})"


@dataclass(frozen=True)
class LUFactors:
    n: int
    c: Seq
    e: Seq
    P: Seq
    T: Seq
    f: Seq
    g: Seq
    alpha: Seq
    gamma: Seq
    k: Seq
    h: Seq
    w: Seq
    v: Seq
    K_t: CyclicNonadiagonal
    substitutions: Tuple[Substitution, ...]
    mode: str = "exact"

    @property
    def zero(self):
        return ZERO if self.mode == "exact" else 0.0

    @property
    def one(self):
        return ONE if self.mode == "exact" else 1.0

    def band(self, name: str, i: int):
        """Entry ``name_i`` of ``K_t`` in this factorization's number type."""
        value = self.K_t.get(name, i)
        return value if self.mode == "exact" else float(value.as_rational())


class _Recurrence:
    """Shared state of one factorization run."""

    def __init__(self, m: CyclicNonadiagonal, mode: str):
        self.m = m
        self.n = m.n
        self.mode = mode
        self.subs: List[Substitution] = []
        self.bands: Dict[str, Dict[int, object]] = {}
        start = {"N": 4, "R": 5}
        for name, values in m.bands.items():
            first = start.get(name, 1)
            if mode == "exact":
                self.bands[name] = {first + i: v for i, v in enumerate(values)}
            else:
                self.bands[name] = {
                    first + i: float(v.as_rational()) for i, v in enumerate(values)
                }

    def pivot(self, i: int, d, terms):
        """``c_i = d - sum(terms)`` with the zero-pivot rule applied."""
        c = d
        for term in terms:
            c = c - term
        if self.mode == "float":
            if abs(c) < FLOAT_PIVOT_TOL:
                raise ZeroPivot("c", i, c)
            return c
        if not c.is_zero():
            return c
        if any(not term.is_constant() for term in terms):
            raise StructurallySingular(i)
        self.bands["d"][i] = self.bands["d"][i] + T
        self.subs.append(Substitution("c", i))
        return T

    def substitute_zero_bands(self):
        if self.mode != "exact":
            return
        n = self.n
        z, R = self.bands["z"], self.bands["R"]
        for i in range(1, n - 5):
            if z[i].is_zero():
                z[i] = T
                self.subs.append(Substitution("z", i))
        # R_5 feeds gamma_5, so the R sweep starts at 5
        for i in range(5, n + 1):
            if R[i].is_zero():
                R[i] = T
                self.subs.append(Substitution("R", i))

    def working_matrix(self) -> CyclicNonadiagonal:
        if self.mode != "exact":
            return self.m
        bands = {
            name: tuple(vals[i] for i in sorted(vals)) for name, vals in self.bands.items()
        }
        return CyclicNonadiagonal(self.n, bands)


def factorize(m: CyclicNonadiagonal, mode: str = "exact") -> LUFactors:
    """Factor ``m`` as ``L U``; see the module docstring for the zero rules.

    Raises :class:`StructurallySingular` if a pivot that already depends on
    ``t`` cancels to zero, :class:`ZeroPivot` in float mode.
    """
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    validate(m)
    run = _Recurrence(m, mode)
    run.substitute_zero_bands()
    n = m.n
    bd = run.bands
    d, a, A, M, z = bd["d"], bd["a"], bd["A"], bd["M"], bd["z"]
    b, B, N, R = bd["b"], bd["B"], bd["N"], bd["R"]

    c: dict = {}
    e: dict = {}
    P: dict = {}
    Tt: dict = {}
    f: dict = {}
    g: dict = {}
    al: dict = {}
    ga: dict = {}
    k: dict = {}
    h: dict = {}
    w: dict = {}
    v: dict = {}

    # rows 1..4
    c[1] = run.pivot(1, d[1], [])
    f[2] = b[2] / c[1]
    g[3] = B[3] / c[1]
    e[1] = a[1]
    P[1] = A[1]
    al[4] = N[4] / c[1]
    Tt[1] = M[1]
    k[1] = A[n - 1] / c[1]
    w[1] = B[1]
    h[1] = a[n] / c[1]
    v[1] = b[1]

    c[2] = run.pivot(2, d[2], [f[2] * e[1]])
    f[3] = (b[3] - g[3] * e[1]) / c[2]
    g[4] = (B[4] - al[4] * e[1]) / c[2]
    e[2] = a[2] - f[2] * P[1]
    P[2] = A[2] - f[2] * Tt[1]
    Tt[2] = M[2] - f[2] * z[1]
    k[2] = -(k[1] * e[1]) / c[2]
    w[2] = -f[2] * w[1]
    h[2] = (A[n] - h[1] * e[1]) / c[2]
    v[2] = B[2] - f[2] * v[1]

    c[3] = run.pivot(3, d[3], [g[3] * P[1], f[3] * e[2]])
    f[4] = (b[4] - al[4] * P[1] - g[4] * e[2]) / c[3]
    e[3] = a[3] - g[3] * Tt[1] - f[3] * P[2]
    P[3] = A[3] - g[3] * z[1] - f[3] * Tt[2]
    Tt[3] = M[3] - f[3] * z[2]
    k[3] = -(k[1] * P[1] + k[2] * e[2]) / c[3]
    w[3] = -g[3] * w[1] - f[3] * w[2]
    h[3] = -(h[1] * P[1] + h[2] * e[2]) / c[3]
    v[3] = -g[3] * v[1] - f[3] * v[2]

    c[4] = run.pivot(4, d[4], [al[4] * Tt[1], g[4] * P[2], f[4] * e[3]])
    e[4] = a[4] - al[4] * z[1] - g[4] * Tt[2] - f[4] * P[3]
    P[4] = A[4] - g[4] * z[2] - f[4] * Tt[3]
    Tt[4] = M[4] - f[4] * z[3]
    k[4] = -(k[1] * Tt[1] + k[2] * P[2] + k[3] * e[3]) / c[4]
    w[4] = -al[4] * w[1] - g[4] * w[2] - f[4] * w[3]
    h[4] = -(h[1] * Tt[1] + h[2] * P[2] + h[3] * e[3]) / c[4]
    v[4] = -al[4] * v[1] - g[4] * v[2] - f[4] * v[3]

    # band rows 5..n-2; T_i and P_i are needed one and two rows later, so
    # they are formed here rather than after the loop
    for i in range(5, n - 1):
        ga[i] = R[i] / c[i - 4]
        al[i] = (N[i] - ga[i] * e[i - 4]) / c[i - 3]
        g[i] = (B[i] - ga[i] * P[i - 4] - al[i] * e[i - 3]) / c[i - 2]
        f[i] = (b[i] - ga[i] * Tt[i - 4] - al[i] * P[i - 3] - g[i] * e[i - 2]) / c[i - 1]
        if i <= n - 3:
            e[i] = a[i] - al[i] * z[i - 3] - g[i] * Tt[i - 2] - f[i] * P[i - 1]
        c[i] = run.pivot(
            i,
            d[i],
            [ga[i] * z[i - 4], al[i] * Tt[i - 3], g[i] * P[i - 2], f[i] * e[i - 1]],
        )
        if i <= n - 5:
            Tt[i] = M[i] - f[i] * z[i - 1]
        if i <= n - 4:
            P[i] = A[i] - g[i] * z[i - 2] - f[i] * Tt[i - 1]

    # row n-1 of L and column n-1 of U
    for i in range(5, n - 5):
        k[i] = -(
            k[i - 4] * z[i - 4] + k[i - 3] * Tt[i - 3] + k[i - 2] * P[i - 2] + k[i - 1] * e[i - 1]
        ) / c[i]
        w[i] = -ga[i] * w[i - 4] - al[i] * w[i - 3] - g[i] * w[i - 2] - f[i] * w[i - 1]
    k[n - 5] = (
        R[n - 1] - k[n - 9] * z[n - 9] - k[n - 8] * Tt[n - 8] - k[n - 7] * P[n - 7]
        - k[n - 6] * e[n - 6]
    ) / c[n - 5]
    k[n - 4] = (
        N[n - 1] - k[n - 8] * z[n - 8] - k[n - 7] * Tt[n - 7] - k[n - 6] * P[n - 6]
        - k[n - 5] * e[n - 5]
    ) / c[n - 4]
    k[n - 3] = (
        B[n - 1] - k[n - 7] * z[n - 7] - k[n - 6] * Tt[n - 6] - k[n - 5] * P[n - 5]
        - k[n - 4] * e[n - 4]
    ) / c[n - 3]
    k[n - 2] = (
        b[n - 1] - k[n - 6] * z[n - 6] - k[n - 5] * Tt[n - 5] - k[n - 4] * P[n - 4]
        - k[n - 3] * e[n - 3]
    ) / c[n - 2]
    # K[n-5, n-1] is z_{n-5}; K[n-4, n] below is z_{n-4}
    w[n - 5] = (
        z[n - 5] - ga[n - 5] * w[n - 9] - al[n - 5] * w[n - 8] - g[n - 5] * w[n - 7]
        - f[n - 5] * w[n - 6]
    )
    w[n - 4] = (
        M[n - 4] - ga[n - 4] * w[n - 8] - al[n - 4] * w[n - 7] - g[n - 4] * w[n - 6]
        - f[n - 4] * w[n - 5]
    )
    w[n - 3] = (
        A[n - 3] - ga[n - 3] * w[n - 7] - al[n - 3] * w[n - 6] - g[n - 3] * w[n - 5]
        - f[n - 3] * w[n - 4]
    )
    w[n - 2] = (
        a[n - 2] - ga[n - 2] * w[n - 6] - al[n - 2] * w[n - 5] - g[n - 2] * w[n - 4]
        - f[n - 2] * w[n - 3]
    )
    c[n - 1] = run.pivot(n - 1, d[n - 1], [k[i] * w[i] for i in range(1, n - 1)])

    # row n of L and column n of U
    for i in range(5, n - 4):
        h[i] = -(
            h[i - 4] * z[i - 4] + h[i - 3] * Tt[i - 3] + h[i - 2] * P[i - 2] + h[i - 1] * e[i - 1]
        ) / c[i]
        v[i] = -ga[i] * v[i - 4] - al[i] * v[i - 3] - g[i] * v[i - 2] - f[i] * v[i - 1]
    h[n - 4] = (
        R[n] - h[n - 8] * z[n - 8] - h[n - 7] * Tt[n - 7] - h[n - 6] * P[n - 6]
        - h[n - 5] * e[n - 5]
    ) / c[n - 4]
    h[n - 3] = (
        N[n] - h[n - 7] * z[n - 7] - h[n - 6] * Tt[n - 6] - h[n - 5] * P[n - 5]
        - h[n - 4] * e[n - 4]
    ) / c[n - 3]
    h[n - 2] = (
        B[n] - h[n - 6] * z[n - 6] - h[n - 5] * Tt[n - 5] - h[n - 4] * P[n - 4]
        - h[n - 3] * e[n - 3]
    ) / c[n - 2]
    h_dot_w = _dot([h[i] for i in range(1, n - 1)], [w[i] for i in range(1, n - 1)])
    h[n - 1] = (b[n] - h_dot_w) / c[n - 1]
    v[n - 4] = (
        z[n - 4] - ga[n - 4] * v[n - 8] - al[n - 4] * v[n - 7] - g[n - 4] * v[n - 6]
        - f[n - 4] * v[n - 5]
    )
    v[n - 3] = (
        M[n - 3] - ga[n - 3] * v[n - 7] - al[n - 3] * v[n - 6] - g[n - 3] * v[n - 5]
        - f[n - 3] * v[n - 4]
    )
    v[n - 2] = (
        A[n - 2] - ga[n - 2] * v[n - 6] - al[n - 2] * v[n - 5] - g[n - 2] * v[n - 4]
        - f[n - 2] * v[n - 3]
    )
    k_dot_v = _dot([k[i] for i in range(1, n - 1)], [v[i] for i in range(1, n - 1)])
    v[n - 1] = a[n - 1] - k_dot_v
    c[n] = run.pivot(n, d[n], [h[i] * v[i] for i in range(1, n)])

    def seq(name, values):
        first, last = RANGES[name](n)
        return Seq(first, (values[i] for i in range(first, last + 1)))

    return LUFactors(
        n=n,
        c=seq("c", c),
        e=seq("e", e),
        P=seq("P", P),
        T=seq("T", Tt),
        f=seq("f", f),
        g=seq("g", g),
        alpha=seq("alpha", al),
        gamma=seq("gamma", ga),
        k=seq("k", k),
        h=seq("h", h),
        w=seq("w", w),
        v=seq("v", v),
        K_t=run.working_matrix(),
        substitutions=tuple(run.subs),
        mode=mode,
    )


def _dot(xs, ys):
    total = None
    for x, y in zip(xs, ys):
        total = x * y if total is None else total + x * y
    return total


def determinant_t(lu: LUFactors):
    """``prod(c)``; in exact mode this is ``det(K_t)``, a polynomial in t."""
    prod = lu.c[1]
    for i in range(2, lu.n + 1):
        prod = prod * lu.c[i]
    return prod


def determinant(lu: LUFactors):
    """Determinant of the input matrix (``det(K_t)`` at ``t = 0``)."""
    prod = determinant_t(lu)
    if lu.mode == "float":
        return prod
    return prod.eval_at_zero()


def assemble_L(lu: LUFactors) -> DenseMatrix:
    n = lu.n
    rows = [[lu.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = lu.one
    for name, off in (("f", 1), ("g", 2), ("alpha", 3), ("gamma", 4)):
        for i, val in getattr(lu, name).items():
            rows[i - 1][i - 1 - off] = val
    for j, val in lu.k.items():
        rows[n - 2][j - 1] = val
    for j, val in lu.h.items():
        rows[n - 1][j - 1] = val
    return DenseMatrix(rows)


def assemble_U(lu: LUFactors) -> DenseMatrix:
    n = lu.n
    rows = [[lu.zero] * n for _ in range(n)]
    for name, off in (("c", 0), ("e", 1), ("P", 2), ("T", 3)):
        for i, val in getattr(lu, name).items():
            rows[i - 1][i - 1 + off] = val
    for i in range(1, n - 5):
        rows[i - 1][i + 3] = lu.band("z", i)
    # column n-1 and n overwrite nothing of the bands above: e, P, T, z stop
    # at column n-2
    for i, val in lu.w.items():
        rows[i - 1][n - 2] = val
    for i, val in lu.v.items():
        rows[i - 1][n - 1] = val
    return DenseMatrix(rows)
