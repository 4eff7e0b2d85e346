"""Exact scalars: rationals and the extended positive half line.

All scalar values in the library are `fractions.Fraction` instances, which
are always in lowest terms with positive denominator.  The extended
positive half line adjoins a single absorbing point `INFINITY`; the
conventions for its arithmetic are

    inf + r = inf,   r * inf = inf (r > 0),   0 * inf = 0,
    inf * 0 = 0,     inf * r = inf (r > 0),   inf * inf = inf,

and every scalar satisfies r <= inf.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import SchemaError


class _Infinity:
    """The adjoined top point of the extended positive half line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"

    def __deepcopy__(self, memo):
        return self

    def __hash__(self):
        return hash("ordmeasure.infinity")


INFINITY = _Infinity()

ExtScalar = Union[Fraction, _Infinity]


def is_infinite(r: ExtScalar) -> bool:
    return r is INFINITY


def ensure_nonneg(r: ExtScalar, what: str = "scalar") -> ExtScalar:
    if r is INFINITY:
        return r
    if r < 0:
        raise ValueError(f"{what} must be >= 0, got {r}")
    return r


def ext_scalar_add(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    if a is INFINITY or b is INFINITY:
        return INFINITY
    return a + b


def ext_scalar_mul(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    """Product on the extended half line, with 0 absorbing against infinity."""
    if a is INFINITY:
        return INFINITY if b != 0 else Fraction(0)
    if b is INFINITY:
        return INFINITY if a != 0 else Fraction(0)
    return a * b


def ext_scalar_leq(a: ExtScalar, b: ExtScalar) -> bool:
    if b is INFINITY:
        return True
    if a is INFINITY:
        return False
    return a <= b


def ext_scalar_min(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    return a if ext_scalar_leq(a, b) else b


def ext_scalar_max(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    return b if ext_scalar_leq(a, b) else a


def parse_rational(text: str, path: str = "") -> Fraction:
    """Parse "p/q" or "p" into an exact rational; reject zero denominators."""
    if not isinstance(text, str):
        raise SchemaError(f"expected rational string, got {text!r}", path)
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            num, den = int(parts[0]), int(parts[1])
            if den == 0:
                raise SchemaError(f"zero denominator in {text!r}", path)
            return Fraction(num, den)
    except ValueError:
        pass
    raise SchemaError(f"malformed rational {text!r}", path)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_ext_scalar(value, path: str = "") -> ExtScalar:
    if value == "infinity":
        return INFINITY
    return parse_rational(value, path)


def format_ext_scalar(r: ExtScalar) -> str:
    if r is INFINITY:
        return "infinity"
    return format_rational(r)
