"""Univariate polynomials in the Hirzebruch parameter ``y`` over the rationals.

``YPoly`` is deliberately small: it only needs to behave like a commutative
ring element so that it can sit inside the coefficient slots of the sparse
polynomial and series types, next to plain ``Fraction`` values.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to Fraction")


class YPoly:
    """Polynomial ``c_0 + c_1 y + ... + c_d y^d`` with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def y(cls) -> "YPoly":
        return cls((0, 1))

    @classmethod
    def one_plus_y_pow(cls, k: int) -> "YPoly":
        """``(1+y)^k`` for ``k >= 0``."""
        if k < 0:
            raise ValueError("negative power of (1+y) is not a polynomial")
        out = cls((1,))
        base = cls((1, 1))
        for _ in range(k):
            out = out * base
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, y):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeff(0)

    # ring operations -----------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, YPoly):
            return other
        try:
            return YPoly((_as_fraction(other),))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return YPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return YPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return YPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return YPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by rational scalars is meaningful here
        d = _as_fraction(other)
        return YPoly(c / d for c in self.coeffs)

    def __pow__(self, k: int):
        out = YPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeff(0))
        return hash(self.coeffs)

    def __repr__(self):
        return f"YPoly({str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "y" if k == 1 else f"y^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def as_ypoly(value) -> YPoly:
    if isinstance(value, YPoly):
        return value
    return YPoly((value,))


def specialize(value, y):
    """Evaluate a coefficient that may or may not depend on ``y``."""
    if isinstance(value, YPoly):
        return value(y)
    return value
