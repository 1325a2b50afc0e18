"""Rational scalars: coercion and the "p/q" text form used by every file format."""

from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(x):
    """Coerce ints, Fractions and "p/q" strings to Fraction. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(s):
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        q = int(q)
        if q == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(int(p), q)
    return Fraction(int(s))


def format_rational(x):
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
