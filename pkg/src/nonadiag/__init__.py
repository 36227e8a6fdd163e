"""Determinant and exact inverse of cyclic nonadiagonal matrices."""
from .band_matrix import (
    CyclicNonadiagonal,
    DenseMatrix,
    entry,
    from_dense,
    load,
    parse,
    reverse_rows,
    serialize,
    to_dense,
    validate,
)
from .errors import (
    BadBandLength,
    DivisionByZero,
    IndexOutOfRange,
    MatrixSyntaxError,
    NonadiagError,
    OrderTooSmall,
    PoleAtZero,
    SingularMatrix,
    StructurallySingular,
    VerificationFailed,
    ZeroPivot,
)
from .factorization import LUFactors, assemble_L, assemble_U, determinant, factorize
from .inversion import InverseResult, anti_inverse, back_columns, invert, last_six_columns
from .oracle import OracleResult, bareiss_det, gauss_jordan_inverse
from .scalar import ONE, ZERO, T, Scalar, as_scalar

__version__ = "0.1.0"

__all__ = [
    "CyclicNonadiagonal",
    "DenseMatrix",
    "entry",
    "from_dense",
    "load",
    "parse",
    "reverse_rows",
    "serialize",
    "to_dense",
    "validate",
    "BadBandLength",
    "DivisionByZero",
    "IndexOutOfRange",
    "MatrixSyntaxError",
    "NonadiagError",
    "OrderTooSmall",
    "PoleAtZero",
    "SingularMatrix",
    "StructurallySingular",
    "VerificationFailed",
    "ZeroPivot",
    "LUFactors",
    "assemble_L",
    "assemble_U",
    "determinant",
    "factorize",
    "InverseResult",
    "anti_inverse",
    "back_columns",
    "invert",
    "last_six_columns",
    "OracleResult",
    "bareiss_det",
    "gauss_jordan_inverse",
    "ONE",
    "ZERO",
    "T",
    "Scalar",
    "as_scalar",
]
