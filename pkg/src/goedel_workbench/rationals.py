"""Exact rational IO: ``p/q`` or integers only, decimals are rejected."""
from __future__ import annotations

import re
from fractions import Fraction

_RAT = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class RationalError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    m = _RAT.match(text)
    if not m:
        raise RationalError(f"not an exact rational: {text!r} (write p/q)")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise RationalError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_unit(text: str) -> Fraction:
    v = parse_rational(text)
    if not 0 <= v <= 1:
        raise RationalError(f"value {text!r} outside [0, 1]")
    return v


def fmt(v: Fraction) -> str:
    return str(Fraction(v))
