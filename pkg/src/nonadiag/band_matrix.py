"""Compact storage for cyclic nonadiagonal matrices and dense matrices.

A cyclic nonadiagonal matrix of order ``n`` has nine diagonals (offsets
-4..+4) plus six corner cells that wrap around::

    (1, n) = b_1      (1, n-1) = B_1     (2, n) = B_2
    (n-1, 1) = A_{n-1}   (n, 1) = a_n    (n, 2) = A_n

Band names follow the usual letters: ``d`` main diagonal, ``a A M z`` the
superdiagonals +1..+4, ``b B N R`` the subdiagonals -1..-4.  All public
indices are 1-based.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Tuple

from .errors import BadBandLength, IndexOutOfRange, MatrixSyntaxError, OrderTooSmall
from .scalar import ONE, ZERO, Scalar, as_scalar, format_rational

__all__ = [
    "BAND_NAMES",
    "MIN_ORDER",
    "MIN_STRUCTURED_ORDER",
    "CyclicNonadiagonal",
    "DenseMatrix",
    "band_range",
    "validate",
    "entry",
    "to_dense",
    "from_dense",
    "reverse_rows",
    "parse",
    "serialize",
    "load",
    "render_cell",
    "dense_to_json",
    "dense_to_csv",
]

BAND_NAMES = ("d", "a", "A", "M", "z", "b", "B", "N", "R")

# diagonal offset (column - row) of each band
OFFSETS = {"d": 0, "a": 1, "A": 2, "M": 3, "z": 4, "b": -1, "B": -2, "N": -3, "R": -4}

# smallest order for which the nine bands and six wrap cells never collide
MIN_ORDER = 8
# smallest order handled by the structured factorization (see README)
MIN_STRUCTURED_ORDER = 12


def band_range(name: str, n: int) -> range:
    """Valid 1-based indices of band ``name`` for order ``n``."""
    if name in ("d", "a", "A", "b", "B"):
        return range(1, n + 1)
    if name == "M":
        return range(1, n - 2)
    if name == "z":
        return range(1, n - 3)
    if name == "N":
        return range(4, n + 1)
    if name == "R":
        return range(5, n + 1)
    raise KeyError(name)


@dataclass(frozen=True)
class CyclicNonadiagonal:
    """The nine band vectors of a cyclic nonadiagonal matrix.

    ``bands[name]`` is a tuple holding the band's values in increasing index
    order over :func:`band_range`; wrap cells are the band entries
    ``b_1, B_1, B_2, a_n, A_{n-1}, A_n`` and are not stored separately.
    """

    n: int
    bands: Mapping[str, Tuple[Scalar, ...]] = field(repr=False)

    @classmethod
    def from_bands(cls, n: int, bands: Mapping[str, Iterable]) -> "CyclicNonadiagonal":
        converted = {}
        for name in BAND_NAMES:
            if name not in bands:
                raise BadBandLength(name, len(band_range(name, n)), 0)
            converted[name] = tuple(as_scalar(v) for v in bands[name])
        extra = set(bands) - set(BAND_NAMES)
        if extra:
            raise KeyError(f"unknown bands: {sorted(extra)}")
        return cls(n, converted)

    def get(self, name: str, i: int) -> Scalar:
        """Band value ``name_i`` (1-based)."""
        rng = band_range(name, self.n)
        if i not in rng:
            raise IndexOutOfRange(f"{name}_{i} outside {rng.start}..{rng.stop - 1}")
        return self.bands[name][i - rng.start]

    def replace(self, name: str, i: int, value) -> "CyclicNonadiagonal":
        """Copy with ``name_i`` set to ``value``."""
        rng = band_range(name, self.n)
        if i not in rng:
            raise IndexOutOfRange(f"{name}_{i} outside {rng.start}..{rng.stop - 1}")
        values = list(self.bands[name])
        values[i - rng.start] = as_scalar(value)
        bands = dict(self.bands)
        bands[name] = tuple(values)
        return CyclicNonadiagonal(self.n, bands)

    def map(self, fn: Callable[[Scalar], object]) -> Dict[str, list]:
        return {name: [fn(v) for v in self.bands[name]] for name in BAND_NAMES}

    def scaled(self, s) -> "CyclicNonadiagonal":
        s = as_scalar(s)
        return CyclicNonadiagonal(
            self.n, {name: tuple(v * s for v in vals) for name, vals in self.bands.items()}
        )

    def is_t_free(self) -> bool:
        return all(v.is_constant() for vals in self.bands.values() for v in vals)

    def __eq__(self, other):
        if not isinstance(other, CyclicNonadiagonal):
            return NotImplemented
        return self.n == other.n and all(
            tuple(self.bands[k]) == tuple(other.bands[k]) for k in BAND_NAMES
        )

    def __hash__(self):
        return hash((self.n, tuple(tuple(self.bands[k]) for k in BAND_NAMES)))


def validate(m: CyclicNonadiagonal, structured: bool = True) -> None:
    """Raise unless ``m`` has correct band lengths and a supported order.

    With ``structured`` the order must reach :data:`MIN_STRUCTURED_ORDER`;
    otherwise only the layout minimum :data:`MIN_ORDER` applies.
    """
    n = m.n
    if not isinstance(n, int) or n < MIN_ORDER:
        raise OrderTooSmall(n, MIN_ORDER)
    for name in BAND_NAMES:
        expected = len(band_range(name, n))
        actual = len(m.bands.get(name, ()))
        if actual != expected:
            raise BadBandLength(name, expected, actual)
    if structured and n < MIN_STRUCTURED_ORDER:
        raise OrderTooSmall(n, MIN_STRUCTURED_ORDER)


def _wrap_cells(n: int) -> Dict[Tuple[int, int], Tuple[str, int]]:
    return {
        (1, n): ("b", 1),
        (1, n - 1): ("B", 1),
        (2, n): ("B", 2),
        (n - 1, 1): ("A", n - 1),
        (n, 1): ("a", n),
        (n, 2): ("A", n),
    }


_BY_OFFSET = {off: name for name, off in OFFSETS.items()}


def _locate(n: int, i: int, j: int):
    """Band name and index stored at cell (i, j), or None for a zero cell."""
    wrap = _wrap_cells(n).get((i, j))
    if wrap is not None:
        return wrap
    name = _BY_OFFSET.get(j - i)
    if name is None:
        return None
    if i in band_range(name, n):
        return name, i
    return None


def entry(m: CyclicNonadiagonal, i: int, j: int) -> Scalar:
    n = m.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange(f"cell ({i}, {j}) outside 1..{n}")
    loc = _locate(n, i, j)
    if loc is None:
        return ZERO
    return m.get(*loc)


def row_support(n: int, i: int) -> List[int]:
    """Columns of row ``i`` that can hold a nonzero entry."""
    return [j for j in range(1, n + 1) if _locate(n, i, j) is not None]


def to_dense(m: CyclicNonadiagonal) -> "DenseMatrix":
    validate(m, structured=False)
    n = m.n
    return DenseMatrix(
        [[entry(m, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    )


def from_dense(x: "DenseMatrix") -> CyclicNonadiagonal:
    """Extract the bands of a dense matrix with the nonadiagonal pattern.

    Raises ``ValueError`` if a nonzero sits outside the pattern.
    """
    n = x.n
    if n < MIN_ORDER:
        raise OrderTooSmall(n, MIN_ORDER)
    bands = {name: [ZERO] * len(band_range(name, n)) for name in BAND_NAMES}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            value = as_scalar(x[i, j])
            loc = _locate(n, i, j)
            if loc is None:
                if value:
                    raise ValueError(f"nonzero at ({i}, {j}) outside the band pattern")
                continue
            name, k = loc
            bands[name][k - band_range(name, n).start] = value
    return CyclicNonadiagonal(n, {k: tuple(v) for k, v in bands.items()})


class DenseMatrix:
    """Square matrix stored as a tuple of row tuples.

    ``x[i, j]`` is 1-based; ``x.rows`` exposes the 0-based storage.  Cells
    may be Scalars, Fractions or floats; arithmetic only needs ``+ - *``.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("DenseMatrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, one=ONE, zero=ZERO) -> "DenseMatrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def exchange(cls, n: int, one=ONE, zero=ZERO) -> "DenseMatrix":
        return cls([[one if i + j == n - 1 else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: Tuple[int, int]):
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexOutOfRange(f"cell ({i}, {j}) outside 1..{self.n}")
        return self.rows[i - 1][j - 1]

    def column(self, j: int) -> list:
        return [row[j - 1] for row in self.rows]

    def map(self, fn: Callable) -> "DenseMatrix":
        return DenseMatrix([[fn(v) for v in row] for row in self.rows])

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("order mismatch")
        n = self.n
        out = []
        for row in self.rows:
            acc = None
            for k, a in enumerate(row):
                if not a:
                    continue
                right = other.rows[k]
                if acc is None:
                    acc = [a * b for b in right]
                else:
                    acc = [s + a * b for s, b in zip(acc, right)]
            if acc is None:
                acc = [other.rows[0][0] * 0] * n
            out.append(acc)
        return DenseMatrix(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"DenseMatrix(n={self.n})"

    def tolist(self) -> List[list]:
        return [list(r) for r in self.rows]


def reverse_rows(x: DenseMatrix) -> DenseMatrix:
    """Row ``i`` of the result is row ``n + 1 - i`` of ``x`` (i.e. ``R @ x``)."""
    return DenseMatrix(reversed(x.rows))


# -- file format -----------------------------------------------------------


def _cell_value(value, name: str, line: int):
    if isinstance(value, bool):
        raise MatrixSyntaxError(line, f"band {name!r}: boolean is not a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return as_scalar(value).as_rational()
        except ValueError as exc:
            raise MatrixSyntaxError(line, f"band {name!r}: {exc}") from None
    raise MatrixSyntaxError(
        line, f"band {name!r}: expected integer or \"p/q\" string, got {value!r}"
    )


def _line_of(text: str, needle: str) -> int:
    pos = text.find(needle)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else 1


def parse(text: str) -> CyclicNonadiagonal:
    """Read the JSON matrix format into a :class:`CyclicNonadiagonal`.

    Band lengths are checked; the order only has to reach :data:`MIN_ORDER`
    so that small matrices can still go to the dense oracle.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixSyntaxError(exc.lineno, exc.msg) from None
    if not isinstance(doc, dict):
        raise MatrixSyntaxError(1, "top level must be an object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise MatrixSyntaxError(_line_of(text, '"n"'), "missing or non-integer 'n'")
    if n < MIN_ORDER:
        raise OrderTooSmall(n, MIN_ORDER)
    bands = doc.get("bands")
    if not isinstance(bands, dict):
        raise MatrixSyntaxError(_line_of(text, '"bands"'), "missing 'bands' object")
    unknown = sorted(set(bands) - set(BAND_NAMES))
    if unknown:
        raise MatrixSyntaxError(_line_of(text, f'"{unknown[0]}"'), f"unknown band {unknown[0]!r}")
    parsed = {}
    for name in BAND_NAMES:
        line = _line_of(text, f'"{name}"')
        if name not in bands:
            raise MatrixSyntaxError(_line_of(text, '"bands"'), f"missing band {name!r}")
        values = bands[name]
        if not isinstance(values, list):
            raise MatrixSyntaxError(line, f"band {name!r} must be an array")
        expected = len(band_range(name, n))
        if len(values) != expected:
            raise BadBandLength(name, expected, len(values))
        parsed[name] = tuple(Scalar.from_rational(_cell_value(v, name, line)) for v in values)
    return CyclicNonadiagonal(n, parsed)


def _json_value(s: Scalar):
    q = s.as_rational()
    return q.numerator if q.denominator == 1 else format_rational(q)


def serialize(m: CyclicNonadiagonal) -> str:
    """Canonical text of ``m``: one band per line, integers unquoted."""
    validate(m, structured=False)
    lines = ["{", f'  "n": {m.n},', '  "bands": {']
    for k, name in enumerate(BAND_NAMES):
        values = json.dumps([_json_value(v) for v in m.bands[name]])
        comma = "," if k < len(BAND_NAMES) - 1 else ""
        lines.append(f'    "{name}": {values}{comma}')
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"


def load(path) -> CyclicNonadiagonal:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def render_cell(value) -> str:
    """Text of one dense-matrix cell: ``p``, ``p/q`` or 17 significant digits."""
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Scalar):
        return str(value)
    return format_rational(value)


def dense_to_json(x: DenseMatrix) -> str:
    return json.dumps([[render_cell(v) for v in row] for row in x.rows]) + "\n"


def dense_to_csv(x: DenseMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in x.rows:
        writer.writerow([render_cell(v) for v in row])
    return buf.getvalue()
