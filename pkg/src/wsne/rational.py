"""Exact rational scalars and their text renderings.

``fractions.Fraction`` already guarantees everything the rest of the library
needs from a scalar: arbitrary-precision numerator, positive denominator,
lowest-terms canonical form, and exact arithmetic and comparisons.  This
module pins it as the single scalar type and adds the strict conversion and
formatting helpers used at every I/O boundary.

Floats are rejected everywhere: a binary float that prints as ``0.005913759``
does not equal the rational 5913759/10^9, and that difference is large enough
to flip the certificate searches in :mod:`wsne.prooflab`.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def as_rational(value: int | str | Fraction) -> Fraction:
    """Convert exact inputs to Fraction; reject floats outright.

    Strings may be integers ("3"), ratios ("1/3"), or decimal literals
    ("0.25", "5e-3"); decimal literals convert with their exact decimal value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(
            "refusing float %r: pass a string or Fraction for exact value" % value
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def as_rational_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(as_rational(v) for v in row) for row in rows)


def format_exact(value: Fraction) -> str:
    """Render as "p/q", or "p" for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction) -> str:
    """Shortest decimal that round-trips to the nearest binary double."""
    try:
        return repr(float(value))
    except OverflowError:
        return "inf" if value > 0 else "-inf"


def format_dual(value: Fraction) -> str:
    """Exact rendering with the informative decimal alongside."""
    return f"{format_exact(value)} ({format_decimal(value)})"
