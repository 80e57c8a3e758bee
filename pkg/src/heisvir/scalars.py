"""Exact scalar arithmetic helpers.

Everything in this package computes over the rationals. This module pins the
concrete type (stdlib ``fractions.Fraction``), the wire format for rationals
(always with an explicit denominator, e.g. ``"-4/1"``), and a couple of small
random generators used by the property tests and the CLI's axiom checks.
"""

from __future__ import annotations

import random
from fractions import Fraction

Rational = Fraction


def rat(p: int | str | Fraction, q: int | None = None) -> Fraction:
    """Build a Fraction from ints, a "p/q" string, or pass one through."""
    if q is not None:
        return Fraction(p, q)
    if isinstance(p, str):
        return parse_rational(p)
    return Fraction(p)


def rat_str(value: Fraction) -> str:
    """Serialize with an explicit denominator: 0 -> "0/1", -4 -> "-4/1"."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a bare integer/decimal string into a Fraction.

    Raises ValueError on malformed input (including division by zero).
    """
    s = text.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


def random_rational(rng: random.Random, span: int = 6, den: int = 5) -> Fraction:
    """A random fraction with numerator in [-span, span] and denominator in [1, den]."""
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_noninteger(rng: random.Random, span: int = 6, den: int = 5) -> Fraction:
    """A random non-integer fraction; retries until the value leaves Z."""
    while True:
        q = random_rational(rng, span=span, den=den)
        if q.denominator != 1:
            return q
