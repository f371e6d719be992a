"""Exact rational arithmetic used throughout the package.

All weights, dual variables and LP values are exact rationals; the solvers
test exact tightness (level == weight), so floats are never used in any
algorithmic path. Backed by gmpy2.mpq, which is an order of magnitude faster
than fractions.Fraction on CPython.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from gmpy2 import mpq

Q = mpq
QLike = Union[int, str, Fraction, mpq]

Q0 = Q(0)
Q1 = Q(1)


def as_q(value: QLike) -> mpq:
    """Coerce ints, num/den strings, Fractions or mpq to mpq.

    Floats are rejected: they would silently break the exact-tightness
    bookkeeping of the primal-dual solvers.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, Fraction or 'num/den' string")
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    return Q(value)


def format_q(q: mpq) -> str:
    """Render as 'num' or 'num/den' (canonical lowest terms)."""
    return str(q)


def parse_q(text: str) -> mpq:
    """Parse 'num' or 'num/den'. Raises ValueError on anything else."""
    return Q(text.strip())


def ceil_q(q: mpq) -> int:
    """Ceiling of an exact rational, as int."""
    num, den = q.numerator, q.denominator
    return int(-((-num) // den))


def floor_q(q: mpq) -> int:
    return int(q.numerator // q.denominator)
