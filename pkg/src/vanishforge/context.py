"""Precision settings shared by every numerical routine.

A :class:`PrecisionContext` owns its own mpmath context, so two contexts
with different precisions never disturb each other and values can be
shared freely between threads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import mpmath

GUARD_BITS = 32
DEFAULT_PRECISION = 256
DEFAULT_VANISH = 2.0 ** -100
DEFAULT_RANK = 2.0 ** -64
PRECISION_ENV = "VANISHFORGE_PRECISION"


class AmbiguityError(ArithmeticError):
    """A quantity landed between the vanishing band and the nonzero band."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class HypothesisError(ValueError):
    """Input parameters violate a hypothesis of the construction."""


class VerificationError(RuntimeError):
    """A numerical self-check did not pass."""


@lru_cache(maxsize=None)
def _mp_at(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    precision_bits: int = DEFAULT_PRECISION
    vanish_threshold: float = DEFAULT_VANISH
    rank_threshold: float = DEFAULT_RANK

    def __post_init__(self):
        if int(self.precision_bits) != self.precision_bits or self.precision_bits < 64:
            raise ValueError("precision_bits must be an integer >= 64")
        for name in ("vanish_threshold", "rank_threshold"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ValueError(f"{name} must lie strictly between 0 and 1, got {v}")
        if self.vanish_threshold > self.rank_threshold:
            raise ValueError("vanish_threshold must not exceed rank_threshold")

    @property
    def mp(self):
        """mpmath context at working precision (target plus guard bits)."""
        return _mp_at(self.precision_bits + GUARD_BITS)

    def extra(self, bits: int):
        """mpmath context with ``bits`` more precision than :attr:`mp`."""
        return _mp_at(self.precision_bits + GUARD_BITS + max(0, int(bits)))

    @property
    def vanish(self):
        return self.mp.mpf(self.vanish_threshold)

    @property
    def rank(self):
        return self.mp.mpf(self.rank_threshold)

    @property
    def digits(self) -> int:
        """Decimal digits needed to serialize a value without loss."""
        return int(math.ceil(self.precision_bits * math.log10(2))) + 3

    def classify(self, value, scale, what: str = "quantity", index: int | None = None) -> bool:
        """Return True if ``value`` is nonzero relative to ``scale``.

        Values at most ``vanish_threshold * scale`` count as zero, values at
        least ``rank_threshold * scale`` as nonzero; anything between raises
        :class:`AmbiguityError`.
        """
        mp = self.mp
        a = abs(value)
        scale = abs(scale)
        if a <= self.vanish * scale:
            return False
        if a >= self.rank * scale:
            return True
        raise AmbiguityError(
            f"{what} is ambiguous: |value| = {mp.nstr(a, 5)} against scale "
            f"{mp.nstr(scale, 5)} lies between the vanish and rank thresholds; "
            "raise the precision",
            index,
        )


def context_from_env(precision: int | None = None, vanish: float | None = None,
                     rank: float | None = None) -> PrecisionContext:
    """Flags win over the environment, which wins over defaults."""
    if precision is None:
        env = os.environ.get(PRECISION_ENV)
        precision = int(env) if env else DEFAULT_PRECISION
    return PrecisionContext(
        precision_bits=precision,
        vanish_threshold=DEFAULT_VANISH if vanish is None else vanish,
        rank_threshold=DEFAULT_RANK if rank is None else rank,
    )


DEFAULT_CONTEXT = PrecisionContext()
