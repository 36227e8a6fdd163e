"""Exception types shared by the solver modules."""


class NonadiagError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(NonadiagError, ZeroDivisionError):
    pass


class PoleAtZero(NonadiagError):
    """A rational function has a vanishing denominator at t = 0."""


class BadBandLength(NonadiagError, ValueError):
    def __init__(self, band, expected, actual):
        self.band = band
        self.expected = expected
        self.actual = actual
        super().__init__(f"band {band!r} has {actual} entries, expected {expected}")


class OrderTooSmall(NonadiagError, ValueError):
    def __init__(self, n, minimum):
        self.n = n
        self.minimum = minimum
        super().__init__(
            f"order n={n} is below the structured minimum {minimum}; "
            "use the dense oracle (--mode oracle) for small orders"
        )


class IndexOutOfRange(NonadiagError, IndexError):
    pass


class MatrixSyntaxError(NonadiagError, ValueError):
    """Malformed matrix file."""

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class StructurallySingular(NonadiagError, ArithmeticError):
    """A pivot that already depends on t cancelled to the zero function."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"pivot c_{index} vanishes identically in t; no rescue left")


class ZeroPivot(NonadiagError, ArithmeticError):
    """Float mode hit a (numerically) zero divisor."""

    def __init__(self, name, index, value):
        self.name = name
        self.index = index
        self.value = value
        super().__init__(f"{name}_{index} = {value!r} is numerically zero")


class SingularMatrix(NonadiagError, ArithmeticError):
    def __init__(self, message="singular matrix"):
        super().__init__(message)


class VerificationFailed(NonadiagError, AssertionError):
    pass
