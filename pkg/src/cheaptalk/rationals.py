"""Exact rational arithmetic backend and canonical text form.

Every probability and utility in this package is an exact rational; no
floating point is ever used in equilibrium logic, because equilibrium
verification hinges on exact ties between expected utilities.

gmpy2.mpq is used when available (roughly an order of magnitude faster than
fractions.Fraction on the small values that dominate this workload) and
fractions.Fraction otherwise.  Both keep rationals in canonical form:
positive denominator, gcd(|numerator|, denominator) = 1.

Canonical text form: "a/b" or "a" for integers, optional leading "-",
denominator strictly positive and coprime with the numerator.  Parsing and
printing are mutually inverse on canonical strings.
"""

from __future__ import annotations

import re

try:  # pragma: no cover - exercised implicitly by the whole suite
    from gmpy2 import mpq as Q

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

    BACKEND = "fractions"

ZERO = Q(0)
ONE = Q(1)

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class RationalParseError(ValueError):
    """Raised when a token is not a canonical rational string."""


def rational(value) -> Q:
    """Coerce ints, rational strings, or rationals to the backend type.

    Floats are rejected: silently converting them would smuggle rounding
    error into exact computations.
    """
    if isinstance(value, float):
        raise RationalParseError(f"floats are not exact rationals: {value!r}")
    if isinstance(value, str):
        return parse_rational(value)
    return Q(value)


def parse_rational(text: str) -> Q:
    """Parse the canonical text form "a" or "a/b" (b > 0)."""
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise RationalParseError(f"not a rational literal: {text!r}")
    if "/" in token:
        num, den = token.split("/")
        return Q(int(num), int(den))
    return Q(int(token))


def format_rational(value) -> str:
    """Canonical text form; inverse of parse_rational on canonical inputs."""
    value = Q(value)
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def qsum(values) -> Q:
    total = ZERO
    for v in values:
        total += v
    return total


def dot(u, v) -> Q:
    total = ZERO
    for a, b in zip(u, v):
        total += a * b
    return total
