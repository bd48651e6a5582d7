"""Small helpers for exact rational vectors.

Rationals travel as ``fractions.Fraction``; vectors as tuples.  JSON carries
them as strings like ``"3/4"`` (integers are accepted too).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]


def frac(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction (exact)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)  # exact binary rational
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fvec(values) -> Vec:
    return tuple(frac(v) for v in values)


def fdot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def fsub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def fadd(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def fscale(t, a) -> Vec:
    t = frac(t)
    return tuple(t * x for x in a)


def format_frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def clear_denominators(vec) -> tuple[int, ...]:
    """Scale a rational vector by the lcm of denominators; returns int tuple."""
    vec = fvec(vec)
    lcm = 1
    for x in vec:
        d = x.denominator
        lcm = lcm * d // gcd(lcm, d)
    return tuple(int(x * lcm) for x in vec)


def primitive(vec) -> tuple[int, ...]:
    """Primitive integer direction of a nonzero rational vector."""
    ints = clear_denominators(vec)
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no direction")
    return tuple(x // g for x in ints)
