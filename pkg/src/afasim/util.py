from fractions import Fraction
import functools
import logging
import math
import re


DECIMAL_PLACES = 18
RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


logger = logging.getLogger(__name__)


def parse_rational(text):
    """
    Parse an exact rational written as ``num/den`` or a bare integer.

    Decimal notation is rejected so that every parsed value is exact.

    :raise ValueError: on anything else, or a zero denominator
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    match = RATIONAL_RE.match(str(text))
    if match is None:
        raise ValueError("expected num/den or an integer, not {!r}".format(text))
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError("zero denominator in {!r}".format(text))
    return Fraction(int(num), int(den or 1))


def format_rational(q):
    """``num/den`` with an explicit denominator, as in the automaton text format."""
    q = Fraction(q)
    return "{}/{}".format(q.numerator, q.denominator)


def format_decimal(q, places=DECIMAL_PLACES):
    """
    Render a rational as a decimal rounded half-up to `places` digits,
    trailing zeros removed.

    >>> format_decimal(Fraction(3, 4))
    '0.75'
    """
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    scaled = abs(q) * 10 ** places
    digits = int(scaled) + (1 if scaled - int(scaled) >= Fraction(1, 2) else 0)
    whole, frac = divmod(digits, 10 ** places)
    frac_text = str(frac).rjust(places, "0").rstrip("0")
    if digits == 0:
        sign = ""
    if not frac_text:
        return "{}{}".format(sign, whole)
    return "{}{}.{}".format(sign, whole, frac_text)


def describe_rational(q):
    """The ``3/4 (0.75)`` rendering used on the command line."""
    q = Fraction(q)
    return "{} ({})".format(format_rational(q), format_decimal(q))


def lcm_of(values):
    """Least common multiple of a sequence of positive integers (1 if empty)."""
    return functools.reduce(math.lcm, values, 1)


def denominators(values):
    return (Fraction(v).denominator for v in values)


def ceil_log2(n):
    """Smallest b with 2**b >= n, for n >= 1."""
    return (n - 1).bit_length()
