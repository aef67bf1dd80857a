"""Exact decimal rendering of rational values.

All quantities in this package are computed as `fractions.Fraction`; floats
never enter a comparison. These helpers only affect how values are printed.
"""

from __future__ import annotations

from fractions import Fraction


def rational_str(x: Fraction) -> str:
    """Canonical "num/den" form ("41/6"); integers print without a denominator."""
    return str(Fraction(x))


def fixed_str(x: Fraction, places: int = 5) -> str:
    """Render with exactly `places` decimals, rounding half away from zero."""
    if places < 0:
        raise ValueError("places must be >= 0")
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    num, den = abs(x.numerator), x.denominator
    scaled, rem = divmod(num * 10**places, den)
    if 2 * rem >= den:
        scaled += 1
    digits = str(scaled).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def sig_str(x: Fraction, sig: int = 6) -> str:
    """Render with `sig` significant digits, half away from zero, zeros trimmed.

    This matches the precision conventions of the reference values used in the
    test suite: 41/6 -> "6.83333", 227/12 -> "18.9167", 12 -> "12".
    """
    if sig < 1:
        raise ValueError("sig must be >= 1")
    x = Fraction(x)
    if x == 0:
        return "0"
    num, den = abs(x.numerator), x.denominator
    # exponent e of the leading digit: 10^e <= |x| < 10^(e+1)
    if num >= den:
        e = 0
        while num >= den * 10 ** (e + 1):
            e += 1
    else:
        k = 1
        while num * 10**k < den:
            k += 1
        e = -k
    places = sig - 1 - e
    if places < 0:
        # round to a power of ten above the decimal point
        unit = 10**-places
        scaled, rem = divmod(num, den * unit)
        if 2 * rem >= den * unit:
            scaled += 1
        out = str(scaled * unit)
    else:
        out = fixed_str(Fraction(num, den), places)
    if "." in out:
        out = out.rstrip("0").rstrip(".")
    return ("-" if x < 0 else "") + out
