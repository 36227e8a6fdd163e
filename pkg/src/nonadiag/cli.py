"""Command-line front end.

::

    nonadiag det FILE        determinant
    nonadiag inv FILE        inverse K^-1
    nonadiag anti-inv FILE   inverse of Y = K R, i.e. R K^-1

Exit status: 0 success, 1 singular matrix, 2 bad input, 3 failed
self-check.  Results go to stdout (or ``--output``); one summary line goes
to stderr.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .band_matrix import (
    BAND_NAMES,
    DenseMatrix,
    CyclicNonadiagonal,
    band_range,
    dense_to_csv,
    dense_to_json,
    load,
    render_cell,
    reverse_rows,
    serialize,
    to_dense,
)
from .errors import (
    BadBandLength,
    MatrixSyntaxError,
    NonadiagError,
    OrderTooSmall,
    PoleAtZero,
    SingularMatrix,
    StructurallySingular,
    VerificationFailed,
    ZeroPivot,
)
from .factorization import determinant, factorize
from .inversion import anti_inverse, invert
from .oracle import as_rational_rows, bareiss_det, gauss_jordan_inverse

EXIT_OK = 0
EXIT_SINGULAR = 1
EXIT_INPUT = 2
EXIT_VERIFY = 3

COMMANDS = ("det", "inv", "anti-inv")
MODES = ("exact", "float", "oracle")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    output_path: Optional[str] = None
    mode: str = "exact"
    verify: bool = True
    format: str = "json"

    def __post_init__(self):
        if self.command == "anti-inv" and self.mode not in ("exact", "oracle"):
            raise ValueError("anti-inv needs --mode exact or --mode oracle")
        if self.mode == "float" and self.verify:
            object.__setattr__(self, "verify", False)


class _Outcome:
    def __init__(self):
        self.det = None
        self.matrix: Optional[DenseMatrix] = None
        self.substitutions = 0
        self.verified = False


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="matrix file (JSON band format)")
    common.add_argument("--mode", choices=MODES, default="exact")
    common.add_argument(
        "--verify",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="check K @ K^-1 == I exactly (default: on unless --mode float)",
    )
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(
        prog="nonadiag",
        description="Determinant and inverse of cyclic nonadiagonal matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{det,inv,anti-inv}")
    sub.add_parser("det", parents=[common], help="determinant")
    sub.add_parser("inv", parents=[common], help="inverse matrix")
    sub.add_parser("anti-inv", parents=[common], help="inverse of the anti-nonadiagonal K R")

    gen = sub.add_parser("gen-random")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--low", type=int, default=-5)
    gen.add_argument("--high", type=int, default=5)
    gen.add_argument("--nonzero", action="store_true", help="never draw 0")
    gen.add_argument("--output", "-o")
    return parser


def random_matrix(n: int, seed: int, low: int = -5, high: int = 5, nonzero: bool = False):
    rng = random.Random(seed)
    pool = [v for v in range(low, high + 1) if v or not nonzero]
    bands = {name: [rng.choice(pool) for _ in band_range(name, n)] for name in BAND_NAMES}
    return CyclicNonadiagonal.from_bands(n, bands)


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _solve(cfg: RunConfig, m: CyclicNonadiagonal) -> _Outcome:
    out = _Outcome()
    if cfg.mode == "oracle":
        dense = as_rational_rows(to_dense(m))
        if cfg.command == "det":
            out.det = bareiss_det(dense)
            return out
        res = gauss_jordan_inverse(dense)
        out.det = res.determinant
        if res.inverse is None:
            raise SingularMatrix()
        inverse = res.inverse
        if cfg.verify:
            if DenseMatrix(dense) @ inverse != DenseMatrix.identity(m.n, one=1, zero=0):
                raise VerificationFailed("K @ K^-1 differs from the identity")
            out.verified = True
        out.matrix = reverse_rows(inverse) if cfg.command == "anti-inv" else inverse
        return out

    if cfg.command == "det":
        lu = factorize(m, mode=cfg.mode)
        out.det = determinant(lu)
        out.substitutions = len(lu.substitutions)
        return out
    solver = anti_inverse if cfg.command == "anti-inv" else invert
    res = solver(m, verify=cfg.verify, mode=cfg.mode)
    out.det = res.determinant
    out.matrix = res.inverse
    out.substitutions = res.substitutions
    out.verified = res.verified
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "gen-random":
        m = random_matrix(args.n, args.seed, args.low, args.high, args.nonzero)
        _emit(serialize(m), args.output)
        return EXIT_OK

    verify = args.verify if args.verify is not None else args.mode != "float"
    try:
        cfg = RunConfig(args.command, args.input, args.output, args.mode, verify, args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    start = time.perf_counter()
    try:
        m = load(cfg.input_path)
        out = _solve(cfg, m)
    except OSError as exc:
        print(f"error: cannot read {cfg.input_path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MatrixSyntaxError, BadBandLength, OrderTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ZeroPivot as exc:
        print(f"error: {exc}; retry with --mode exact", file=sys.stderr)
        return EXIT_INPUT
    except SingularMatrix:
        print("singular matrix", file=sys.stderr)
        if cfg.command == "det":
            _emit("0\n", cfg.output_path)
        return EXIT_SINGULAR
    except StructurallySingular as exc:
        # K itself may be nonsingular; only the structured recurrence is stuck
        print(f"singular matrix ({exc}); --mode oracle decides", file=sys.stderr)
        return EXIT_SINGULAR
    except (VerificationFailed, PoleAtZero) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except NonadiagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - start

    det_text = render_cell(out.det)
    print(
        f"n={m.n} mode={cfg.mode} det={det_text} substitutions={out.substitutions} "
        f"verified={'yes' if out.verified else 'no'} elapsed={elapsed:.3f}s",
        file=sys.stderr,
    )
    if cfg.command == "det":
        _emit(det_text + "\n", cfg.output_path)
        return EXIT_SINGULAR if out.det == 0 else EXIT_OK
    render = dense_to_csv if cfg.format == "csv" else dense_to_json
    _emit(render(out.matrix), cfg.output_path)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
