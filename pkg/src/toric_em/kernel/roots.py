"""Roots of unity stored by their exact phase, plus the numeric evaluator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

# >= 64 fractional bits for every numeric cross-check
WORKING_PRECISION_BITS = 113


def numeric_context():
    """Fresh mpmath context at the working precision (thread-confined)."""
    ctx = mpmath.MPContext()
    ctx.prec = WORKING_PRECISION_BITS
    return ctx


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """``exp(2 pi i * phase)`` with ``0 <= phase < 1``."""

    phase: Fraction

    def __post_init__(self):
        q = Fraction(self.phase)
        object.__setattr__(self, "phase", q - (q.numerator // q.denominator))

    @classmethod
    def one(cls):
        return cls(Fraction(0))

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.phase + other.phase)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.phase)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.phase * k)

    def is_one(self) -> bool:
        return self.phase == 0

    @property
    def order(self) -> int:
        return self.phase.denominator

    def value(self, ctx=None):
        ctx = ctx or numeric_context()
        if self.phase == 0:
            return ctx.mpc(1)
        if self.phase == Fraction(1, 2):
            return ctx.mpc(-1)
        return ctx.expjpi(2 * ctx.mpf(self.phase.numerator) / self.phase.denominator)

    def __str__(self):
        return f"e^(2πi·{self.phase})"
