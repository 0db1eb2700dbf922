"""Exact Bernoulli numbers and polynomials."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from threading import Lock

_TABLE: list[Fraction] = [Fraction(1)]
_LOCK = Lock()


def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n >= len(_TABLE):
        with _LOCK:
            # extend with sum_{j<m+1} C(m+1, j) B_j = 0
            while len(_TABLE) <= n:
                m = len(_TABLE)
                s = sum(comb(m + 1, j) * _TABLE[j] for j in range(m))
                _TABLE.append(-s / (m + 1))
    return _TABLE[n]


@lru_cache(maxsize=None)
def bernoulli_poly_coeffs(n: int) -> tuple[Fraction, ...]:
    """Coefficients of B_n(x) in ascending powers of x."""
    return tuple(comb(n, j) * bernoulli_number(n - j) for j in range(n + 1))


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(bernoulli_poly_coeffs(n)):
        acc = acc * x + c
    return acc
