"""Exact-rational helpers on top of :class:`fractions.Fraction`."""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidParameter


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def parse_fraction(s: str) -> Fraction:
    s = s.strip()
    try:
        if "." in s or "e" in s.lower():
            # decimal literals are exact in base 10, e.g. "0.5"
            return Fraction(s)
        num, _, den = s.partition("/")
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise InvalidParameter(f"not a rational number: {s!r}") from None


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, precision: int = 2) -> str:
    """Round half-to-even at ``precision`` places and render without floats.

    >>> decimal_str(Fraction(33, 14))
    '2.36'
    >>> decimal_str(Fraction(5, 3))
    '1.67'
    """
    if precision < 0:
        raise InvalidParameter("precision must be nonnegative")
    scaled = round(Fraction(x) * 10**precision)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(precision + 1, "0")
    if precision == 0:
        return sign + digits
    return f"{sign}{digits[:-precision]}.{digits[-precision:]}"
