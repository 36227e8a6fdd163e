"""Instance generators shared by the test modules."""
from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

from nonadiag import (
    CyclicNonadiagonal,
    DenseMatrix,
    StructurallySingular,
    bareiss_det,
    factorize,
    from_dense,
    to_dense,
)
from nonadiag.band_matrix import BAND_NAMES, band_range

DATA = Path(__file__).parent / "data"
EXAMPLE_FILE = DATA / "example12.json"


def golden():
    with open(DATA / "golden_example.json") as fh:
        raw = json.load(fh)
    return {
        "K": raw["K"],
        "K_inverse": [[Fraction(x) for x in row] for row in raw["K_inverse"]],
        "Y_inverse": [[Fraction(x) for x in row] for row in raw["Y_inverse"]],
    }


def example_matrix() -> CyclicNonadiagonal:
    return from_dense(DenseMatrix(golden()["K"]))


def identity_bands(n: int) -> CyclicNonadiagonal:
    bands = {name: [1 if name == "d" else 0 for _ in band_range(name, n)] for name in BAND_NAMES}
    return CyclicNonadiagonal.from_bands(n, bands)


def random_instance(rng: random.Random, n: int, low=-5, high=5, nonzero=False):
    pool = [v for v in range(low, high + 1) if v or not nonzero]
    bands = {name: [rng.choice(pool) for _ in band_range(name, n)] for name in BAND_NAMES}
    return CyclicNonadiagonal.from_bands(n, bands)


def random_suite(count=200, seed=2024):
    """The fixed random population used by the reconstruction/oracle checks."""
    rng = random.Random(seed)
    return [random_instance(rng, rng.randint(12, 24)) for _ in range(count)]


def rational_det(m: CyclicNonadiagonal) -> Fraction:
    return bareiss_det(to_dense(m))


def mat_vec(x: DenseMatrix, col):
    """``x @ col`` for a 1-based column list (slot 0 unused)."""
    n = len(x.rows)
    out = []
    for row in x.rows:
        acc = 0
        for k in range(n):
            if row[k] != 0:
                acc = row[k] * col[k + 1] + acc
        out.append(acc)
    return out


def planted_zero_instance(rng: random.Random):
    """A nonsingular matrix with planted zeros that the rescue must handle.

    Plants a zero pivot c_p whose defining terms are t-free, zeros z_j with
    p - 3 <= j <= n - 6 and R_j with j > p (all rescued), and sometimes a zero
    z_{n-5} or z_{n-4}, which the algorithm never rescues.  Every other entry
    is drawn nonzero.  Returns ``(matrix, expected substitutions)``; instances
    that turn out singular, or that hit an accidental extra zero pivot, are
    redrawn.
    """
    while True:
        n = rng.randint(12, 20)
        m = random_instance(rng, n, nonzero=True)
        p = rng.randint(1, n - 8)
        planted = set()
        z_slots = list(range(max(1, p - 3), n - 5))
        for j in rng.sample(z_slots, k=min(len(z_slots), rng.randint(1, 3))):
            m = m.replace("z", j, 0)
            planted.add(("z", j))
        R_slots = list(range(max(5, p + 1), n + 1))
        for j in rng.sample(R_slots, k=rng.randint(1, 3)):
            m = m.replace("R", j, 0)
            planted.add(("R", j))
        if rng.random() < 0.5:
            m = m.replace("z", rng.choice((n - 5, n - 4)), 0)

        # make c_p vanish by shifting d_p; its terms involve no t by construction
        try:
            lu = factorize(m)
        except StructurallySingular:
            continue
        c_p = lu.c[p]
        if not c_p.is_constant():
            continue
        m = m.replace("d", p, m.get("d", p) - c_p)
        planted.add(("c", p))

        if rational_det(m) == 0:
            continue
        try:
            lu = factorize(m)
        except StructurallySingular:
            continue
        got = {(s.name, s.index) for s in lu.substitutions}
        if got != planted:
            continue
        return m, planted
