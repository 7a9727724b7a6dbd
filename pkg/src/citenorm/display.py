"""Display rounding. Computation never rounds; only output does."""
from decimal import ROUND_HALF_UP, Decimal


def round_half_away(value, digits: int = 2) -> str:
    """Format ``value`` with ``digits`` decimals, ties rounded away from zero.

    Rounds the shortest decimal repr of the float, so 8.725 prints as 8.73
    even though the nearest binary double lies just below 8.725.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, int)):
        return str(value)
    quantum = Decimal(1).scaleb(-digits)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))
