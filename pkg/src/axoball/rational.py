"""Exact rational scalars and their text encoding.

Every closed-form quantity in this package is a rational number, so the
scalar type throughout is the stdlib ``fractions.Fraction`` (always reduced,
denominator positive, arithmetic exact and closed).  This module pins the
text encoding used at the I/O boundary: ``"p/q"`` or integer or decimal
strings in, canonical ``"p"`` / ``"p/q"`` strings out.  Decimal input
converts exactly through power-of-ten denominators, never through binary
floats.
"""

from fractions import Fraction

Rational = Fraction


def parse_rational(value):
    """Convert ``value`` into an exact Fraction.

    Accepts ints, Fractions, and strings such as ``"3"``, ``"-7/2"``,
    ``"1.25"`` or ``"2e-3"``.  Binary floats are rejected: a float literal
    has already lost its decimal identity, so callers must keep decimals as
    text up to this point.

    Raises ValueError with a readable message on malformed input or a zero
    denominator.
    """
    if isinstance(value, bool):
        raise ValueError("expected a rational number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ValueError(
            "refusing to convert a binary float; pass the value as a string"
        )
    if not isinstance(value, str):
        raise ValueError(f"expected a rational number, got {type(value).__name__}")
    text = value.strip()
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {value!r}") from None
    except ValueError:
        raise ValueError(f"not a rational number: {value!r}") from None


def format_rational(q):
    """Canonical text form, ``"p"`` or ``"p/q"``; round-trips exactly."""
    return str(Fraction(q))
