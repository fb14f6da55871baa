"""Exact half-up rounding on rational values.

Python's round() is banker's rounding; the reported figures here need
classic half-up (0.0005 -> 0.001), computed on exact ratios rather than
floats so ties are real ties.
"""

from decimal import Decimal, ROUND_HALF_UP, localcontext
from fractions import Fraction


def round_half_up(value, ndigits):
    """Round a Fraction/int/float half-up to `ndigits` decimals, as float."""
    if isinstance(value, Fraction):
        with localcontext() as ctx:
            ctx.prec = 50
            dec = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        dec = Decimal(repr(value)) if isinstance(value, float) else Decimal(value)
    quantum = Decimal(1).scaleb(-ndigits)
    return float(dec.quantize(quantum, rounding=ROUND_HALF_UP))
