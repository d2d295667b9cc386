"""Small helpers for the dual float / exact-rational number handling.

Model quantities are plain Python numbers: ``int`` and ``Fraction`` drive
the exact path, ``float`` the fast path.  Arithmetic mixes naturally, so
most code does not care which mode it runs in; these helpers cover the
few places that do.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, float]


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def all_rational(*xs) -> bool:
    return all(is_rational(x) for x in xs)


def as_fraction(x) -> Fraction:
    """Exact conversion; floats go through Fraction(float) exactly."""
    return x if isinstance(x, Fraction) else Fraction(x)


def parse_number(text):
    """Parse "3", "2/7", "0.25" style strings; "p/q" stays exact."""
    s = str(text).strip()
    if "/" in s:
        return Fraction(s)
    try:
        return int(s)
    except ValueError:
        return float(s)


def format_number(x) -> str:
    """Round-trippable text form: Fractions as p/q, floats via repr."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def integer_nth_root(value: int, n: int):
    """Largest r with r**n <= value, for value >= 0, n >= 1."""
    if value < 0 or n < 1:
        raise ValueError("integer_nth_root needs value >= 0 and n >= 1")
    if value in (0, 1) or n == 1:
        return value
    r = int(round(value ** (1.0 / n)))
    # float seed can be off by a few ulps on large ints; walk to the floor
    while r > 0 and r ** n > value:
        r -= 1
    while (r + 1) ** n <= value:
        r += 1
    return r


def exact_nth_root(x, n: int):
    """Exact n-th root of a nonnegative rational, or None if irrational."""
    fr = as_fraction(x)
    if fr < 0:
        return None
    rn = integer_nth_root(fr.numerator, n)
    rd = integer_nth_root(fr.denominator, n)
    if rn ** n == fr.numerator and rd ** n == fr.denominator:
        return Fraction(rn, rd)
    return None


def exact_pow(x, exponent: Fraction):
    """x ** exponent kept exact when possible, else None.

    exponent = m/n in lowest terms; requires an exact n-th root of x.
    Negative exponents invert the base first.
    """
    fr = as_fraction(x)
    m, n = exponent.numerator, exponent.denominator
    if m < 0:
        if fr == 0:
            return None
        fr, m = 1 / fr, -m
    root = exact_nth_root(fr, n)
    return None if root is None else root ** m
