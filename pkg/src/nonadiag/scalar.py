"""Exact arithmetic in Q(t), the rational functions of one symbol ``t``.

A :class:`Scalar` is stored as a pair of integer polynomials ``N/D`` with
no common factor in Z[t] and a positive leading coefficient in ``D``.  That
pair is unique for every element of Q(t), so equality is tuple equality.
The public :attr:`Scalar.num` / :attr:`Scalar.den` views rescale it to the
usual field form: rational coefficients with ``den`` monic.

Scalars that do not depend on ``t`` go through an integer-fraction fast
path, which is what keeps the t-free solver path cheap.
"""
from __future__ import annotations

import re
from contextlib import contextmanager
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterator, Sequence, Tuple, Union

from .errors import DivisionByZero, PoleAtZero

__all__ = [
    "Scalar",
    "T",
    "ZERO",
    "ONE",
    "as_scalar",
    "parse_rational",
    "format_rational",
    "count_ops",
    "OpCounter",
]

IPoly = Tuple[int, ...]
Number = Union["Scalar", int, Fraction]


# -- integer polynomial helpers --------------------------------------------
# Coefficient tuples, lowest power first, never with a trailing zero.


def _trim(coeffs) -> IPoly:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


def _padd(p: IPoly, q: IPoly) -> IPoly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _pmul(p: IPoly, q: IPoly) -> IPoly:
    if not p or not q:
        return ()
    if len(p) == 1:
        c = p[0]
        return tuple(c * x for x in q)
    if len(q) == 1:
        c = q[0]
        return tuple(c * x for x in p)
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def _pdivexact(p: IPoly, q: IPoly) -> IPoly:
    """``p / q`` for a primitive divisor ``q`` (Gauss: quotient is integral)."""
    rem = list(p)
    lead = q[-1]
    dq = len(q) - 1
    quot = [0] * (len(p) - dq)
    for k in range(len(quot) - 1, -1, -1):
        coef, r = divmod(rem[k + dq], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = coef
        if coef:
            for i, b in enumerate(q):
                rem[k + i] -= coef * b
    if any(rem[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return tuple(quot)


def _pp(p: IPoly) -> IPoly:
    """Primitive part with positive leading coefficient."""
    content = gcd(*p)
    if p[-1] < 0:
        content = -content
    if content == 1:
        return p
    return tuple(x // content for x in p)


def _prem(a: IPoly, b: IPoly) -> IPoly:
    """Pseudo-remainder of ``a`` by ``b``, ``deg a >= deg b``."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while r and len(r) - 1 >= db:
        coef = r[-1]
        shift = len(r) - 1 - db
        g = gcd(coef, lead)
        mul_r, mul_b = lead // g, coef // g
        r = [x * mul_r for x in r]
        for i, y in enumerate(b):
            r[shift + i] -= mul_b * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


_PRIME = (1 << 61) - 1


def _coprime_mod_prime(p: IPoly, q: IPoly) -> bool:
    """True if ``p`` and ``q`` are provably coprime over Q.

    Runs Euclid over GF(_PRIME).  With both leading coefficients nonzero
    mod the prime, the modular gcd degree bounds the true one from above,
    so a constant modular gcd settles it.  False means "unknown".
    """
    a = [c % _PRIME for c in p]
    b = [c % _PRIME for c in q]
    if not a[-1] or not b[-1]:
        return False
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        inv = pow(b[-1], -1, _PRIME)
        db = len(b) - 1
        while len(a) - 1 >= db:
            coef = a[-1] * inv % _PRIME
            shift = len(a) - 1 - db
            for i in range(db):
                a[shift + i] = (a[shift + i] - coef * b[i]) % _PRIME
            a.pop()
            while a and not a[-1]:
                a.pop()
            if not a:
                return False
        a, b = b, a
    return True


def _pgcd(p: IPoly, q: IPoly) -> IPoly:
    """Primitive gcd over Z[t] (content ignored) by primitive remainders."""
    if _coprime_mod_prime(p, q):
        return (1,)
    a, b = _pp(p), _pp(q)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            return b
        a, b = b, _pp(r)
    return (1,)


def _peval(p: IPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


# -- operation counting ----------------------------------------------------


class OpCounter:
    """Tally of Scalar field operations performed while active."""

    __slots__ = ("add", "sub", "mul", "div")

    def __init__(self):
        self.add = self.sub = self.mul = self.div = 0

    @property
    def total(self) -> int:
        return self.add + self.sub + self.mul + self.div

    def __repr__(self):
        return (
            f"OpCounter(add={self.add}, sub={self.sub}, "
            f"mul={self.mul}, div={self.div})"
        )


_counter: OpCounter | None = None


@contextmanager
def count_ops() -> Iterator[OpCounter]:
    """Count Scalar add/sub/mul/div inside the ``with`` block.

    Not thread safe; intended for measurements in tests and benchmarks.
    """
    global _counter
    previous = _counter
    _counter = counter = OpCounter()
    try:
        yield counter
    finally:
        _counter = previous


# -- the field element -----------------------------------------------------


class Scalar:
    """Immutable element of Q(t) in canonical reduced form."""

    __slots__ = ("_n", "_d", "_hash")

    def __new__(cls, num: Sequence = (), den: Sequence = (1,)):
        num = [Fraction(c) for c in num]
        den = [Fraction(c) for c in den]
        if not _trim(den):
            raise DivisionByZero("zero denominator")
        scale = lcm(*(c.denominator for c in num + den))
        n = _trim([int(c * scale) for c in num])
        d = _trim([int(c * scale) for c in den])
        return _normalized(n, d)

    @classmethod
    def from_rational(cls, value) -> "Scalar":
        q = Fraction(value)
        return _const(q.numerator, q.denominator)

    # -- field-form views

    @property
    def num(self) -> Tuple[Fraction, ...]:
        """Numerator coefficients (lowest power first), ``den`` made monic."""
        lead = self._d[-1]
        return tuple(Fraction(c, lead) for c in self._n)

    @property
    def den(self) -> Tuple[Fraction, ...]:
        lead = self._d[-1]
        return tuple(Fraction(c, lead) for c in self._d)

    # -- predicates and conversions

    def is_zero(self) -> bool:
        """True iff this is the zero function (not merely zero at t = 0)."""
        return not self._n

    def is_constant(self) -> bool:
        return len(self._d) == 1 and len(self._n) <= 1

    @property
    def degree(self) -> Tuple[int, int]:
        """Degrees of numerator and denominator (zero polynomial has -1)."""
        return len(self._n) - 1, len(self._d) - 1

    def as_rational(self) -> Fraction:
        """The value of a t-free scalar; ``ValueError`` if it depends on t."""
        if not self.is_constant():
            raise ValueError(f"{self} depends on t")
        return Fraction(self._n[0], self._d[0]) if self._n else Fraction(0)

    def eval_at_zero(self) -> Fraction:
        d0 = self._d[0]
        if not d0:
            raise PoleAtZero(f"{self} has a pole at t = 0")
        return Fraction(self._n[0] if self._n else 0, d0)

    def subs(self, value) -> Fraction:
        """Evaluate at a rational point ``t = value``."""
        x = Fraction(value)
        d = _peval(self._d, x)
        if not d:
            raise DivisionByZero(f"{self} has a pole at t = {x}")
        return _peval(self._n, x) / d

    # -- arithmetic

    def __add__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if _counter is not None:
            _counter.add += 1
        return _add(self._n, self._d, other._n, other._d)

    def __radd__(self, other: Number) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if _counter is not None:
            _counter.add += 1
        return _add(other._n, other._d, self._n, self._d)

    def __sub__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if _counter is not None:
            _counter.sub += 1
        return _add(self._n, self._d, tuple(-c for c in other._n), other._d)

    def __rsub__(self, other: Number) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if _counter is not None:
            _counter.sub += 1
        return _add(other._n, other._d, tuple(-c for c in self._n), self._d)

    def __mul__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if _counter is not None:
            _counter.mul += 1
        return _mul(self._n, self._d, other._n, other._d)

    def __rmul__(self, other: Number) -> "Scalar":
        return self.__mul__(other)

    def __truediv__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if not other._n:
            raise DivisionByZero("division by the zero scalar")
        if _counter is not None:
            _counter.div += 1
        return _mul(self._n, self._d, other._d, other._n)

    def __rtruediv__(self, other: Number) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other.__truediv__(self)

    def __neg__(self) -> "Scalar":
        return _raw(tuple(-c for c in self._n), self._d)

    def __pos__(self) -> "Scalar":
        return self

    def reciprocal(self) -> "Scalar":
        if not self._n:
            raise DivisionByZero("division by the zero scalar")
        n, d = self._d, self._n
        if d[-1] < 0:
            n = tuple(-c for c in n)
            d = tuple(-c for c in d)
        return _raw(n, d)

    # -- comparison, hashing, rendering

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.as_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.as_rational())
            else:
                self._hash = hash((self._n, self._d))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._n)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        if self.is_constant():
            return format_rational(self.as_rational())
        num = _format_poly(self.num)
        if len(self._d) == 1:
            return num
        return f"({num})/({_format_poly(self.den)})"

    def __reduce__(self):
        return (Scalar, (self.num, self.den))


def _raw(n: IPoly, d: IPoly) -> Scalar:
    self = object.__new__(Scalar)
    self._n = n
    self._d = d
    self._hash = None
    return self


def _const(p: int, q: int = 1) -> Scalar:
    return _raw((p,) if p else (), (q,))


def _normalized(n: IPoly, d: IPoly) -> Scalar:
    """Reduce ``n/d`` to the canonical integer pair."""
    if not n:
        return ZERO
    if len(d) > 1 and len(n) > 1:
        g = _pgcd(n, d)
        if len(g) > 1:
            n = _pdivexact(n, g)
            d = _pdivexact(d, g)
    content = gcd(gcd(*n), gcd(*d))
    if d[-1] < 0:
        content = -content
    if content != 1:
        n = tuple(c // content for c in n)
        d = tuple(c // content for c in d)
    return _raw(n, d)


def _canonical(n: IPoly, d: IPoly) -> Scalar:
    """``n/d`` already coprime over Q: strip integer content, fix the sign."""
    content = gcd(gcd(*n), gcd(*d))
    if d[-1] < 0:
        content = -content
    if content != 1:
        n = tuple(c // content for c in n)
        d = tuple(c // content for c in d)
    return _raw(n, d)


def _add(xn: IPoly, xd: IPoly, yn: IPoly, yd: IPoly) -> Scalar:
    if not xn:
        return _raw(yn, yd) if yn else ZERO
    if not yn:
        return _raw(xn, xd)
    if len(xd) == 1 and len(yd) == 1 and len(xn) == 1 and len(yn) == 1:
        p, q, r, s = xn[0], xd[0], yn[0], yd[0]
        num = p * s + r * q
        if not num:
            return ZERO
        den = q * s
        g = gcd(num, den)
        return _const(num // g, den // g)
    # Henrici: only gcd(xd, yd) can survive into the sum's denominator
    if xd == yd:
        g = xd if len(xd) > 1 else (1,)
    elif len(xd) > 1 and len(yd) > 1:
        g = _pgcd(xd, yd)
    else:
        g = (1,)
    if len(g) == 1:
        num = _padd(_pmul(xn, yd), _pmul(yn, xd))
        if not num:
            return ZERO
        return _canonical(num, _pmul(xd, yd))
    xs = _pdivexact(xd, g)
    ys = _pdivexact(yd, g)
    num = _padd(_pmul(xn, ys), _pmul(yn, xs))
    if not num:
        return ZERO
    den = _pmul(xs, yd)
    if len(num) > 1:
        g2 = _pgcd(num, g)
        if len(g2) > 1:
            num = _pdivexact(num, g2)
            den = _pdivexact(den, g2)
    return _canonical(num, den)


def _mul(xn: IPoly, xd: IPoly, yn: IPoly, yd: IPoly) -> Scalar:
    """``(xn/xd) * (yn/yd)``; either pair may have a negative leading ``d``."""
    if not xn or not yn:
        return ZERO
    if len(xd) == 1 and len(yd) == 1 and len(xn) == 1 and len(yn) == 1:
        p, q = xn[0] * yn[0], xd[0] * yd[0]
        g = gcd(p, q)
        if q < 0:
            g = -g
        return _const(p // g, q // g)
    # cross-cancel before multiplying
    if len(xn) > 1 and len(yd) > 1:
        g = _pgcd(xn, yd)
        if len(g) > 1:
            xn, yd = _pdivexact(xn, g), _pdivexact(yd, g)
    if len(yn) > 1 and len(xd) > 1:
        g = _pgcd(yn, xd)
        if len(g) > 1:
            yn, xd = _pdivexact(yn, g), _pdivexact(xd, g)
    return _canonical(_pmul(xn, yn), _pmul(xd, yd))


def _coerce(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, int):
        return _const(value)
    if isinstance(value, Rational):
        return _const(value.numerator, value.denominator)
    return NotImplemented


def as_scalar(value) -> Scalar:
    """Convert an int, Fraction, "p/q" string or Scalar to a Scalar."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        q = parse_rational(value)
        return _const(q.numerator, q.denominator)
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")
    return coerced


ZERO = _raw((), (1,))
ONE = _raw((1,), (1,))
T = _raw((0, 1), (1,))


# -- text forms ------------------------------------------------------------

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; nothing else (no decimals, no t)."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f"not a rational literal: {text!r}")
    p, q = match.groups()
    if q is not None and int(q) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(p), int(q) if q is not None else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_poly(p: Sequence[Fraction]) -> str:
    if not p:
        return "0"
    parts = []
    for power in range(len(p) - 1, -1, -1):
        c = p[power]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if power == 0:
            body = format_rational(mag)
        else:
            mono = "t" if power == 1 else f"t^{power}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
