"""Parsing and formatting of exact rationals in ``p/q`` form."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

Number = int | Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction; the sign goes on the numerator."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise DomainError(f"not a rational literal: {text!r}")
    if "/" in s and int(s.split("/")[1]) == 0:
        raise DomainError(f"zero denominator: {text!r}")
    return Fraction(s)


def format_rational(value: Number) -> str:
    return str(Fraction(value))


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"expected an exact rational, got {type(value).__name__}")


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated rational vector such as ``"1/2,3"``."""
    parts = [p for p in text.split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise DomainError(f"malformed vector: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def format_vector(values: Iterable[Number]) -> list[str]:
    return [format_rational(v) for v in values]


def vector_str(values: Sequence[Number]) -> str:
    return "(" + ", ".join(format_rational(v) for v in values) + ")"
