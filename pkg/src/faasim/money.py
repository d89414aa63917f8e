"""Exact money arithmetic.

Dollar amounts are held as `fractions.Fraction` throughout the library.
Unit prices such as $0.03 per 2,592,000 requests are non-terminating in
decimal, so exact rationals are the only representation under which the
bundled regression values reproduce bit-for-bit. Display quantizes:
cents by default, six decimal places in JSON reports.
"""

from __future__ import annotations

from decimal import Decimal, ROUND_HALF_UP
from fractions import Fraction

USD = Fraction

# Quantization used when "full precision" is requested for a rational
# whose decimal expansion does not terminate.
FULL_PRECISION_PLACES = 12


def usd(value) -> Fraction:
    """Convert a price-like value into an exact Fraction of dollars.

    Accepts int, str (plain, scientific, or "p/q" rational), Decimal and
    Fraction. Floats are interpreted by their shortest decimal repr, i.e.
    the literal the user wrote, not the binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(Decimal(repr(value)))
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a dollar amount")


def usd_decimal(amount: Fraction, places: int = 6) -> Decimal:
    """Quantize an exact dollar amount to a Decimal, rounding half-up."""
    quantum = Decimal(1).scaleb(-places)
    return (Decimal(amount.numerator) / Decimal(amount.denominator)).quantize(
        quantum, rounding=ROUND_HALF_UP
    )


def usd_json(amount: Fraction, places: int = 6) -> float:
    """Dollar amount as a JSON number at report precision."""
    return float(usd_decimal(amount, places))


def usd_str(amount: Fraction, places: int | None = 2) -> str:
    """Render dollars for tables: cents by default, 12 places when asked."""
    if places is None:
        places = FULL_PRECISION_PLACES
    return f"{usd_decimal(amount, places)}"
