"""Exact rationals are ``fractions.Fraction``; this module only formats them."""
from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def fmt(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def approx(q: Fraction, digits: int = 6) -> str:
    return f"{float(q):.{digits}g}"
