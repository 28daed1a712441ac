"""Sparse Laurent polynomials, truncated multivariate series and univariate
Laurent series over ``Fraction`` (or ``YPoly``) coefficients.

Exponent vectors are plain tuples of ints.  All values are immutable once
built; arithmetic always returns fresh objects.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial

from .ypoly import YPoly


def _clean(terms: dict) -> dict:
    return {e: c for e, c in terms.items() if c}


def _add_into(acc: dict, key, value) -> None:
    cur = acc.get(key)
    acc[key] = value if cur is None else cur + value


def _scalar(value):
    if isinstance(value, (YPoly, Fraction)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


def _exp_str(exp, names) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


class LaurentPoly:
    """Finite sum ``sum_e c_e x^e`` with integer (possibly negative) exponents.

    Also used for ordinary polynomials, e.g. functions of the dilation
    parameters ``h`` or of lattice coordinates ``m``.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if c:
                _add_into(clean, e, _scalar(c))
        self.terms = _clean(clean)

    # constructors --------------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp, c=1):
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    @classmethod
    def variable(cls, nvars, i, c=1):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    @classmethod
    def linear(cls, coeffs, const=0):
        n = len(coeffs)
        out = cls.const(n, const)
        for i, a in enumerate(coeffs):
            if a:
                out = out + cls.variable(n, i, Fraction(a))
        return out

    # queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    # arithmetic ----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return LaurentPoly.const(self.nvars, other)

    def __add__(self, other):
        o = self._lift(other)
        acc = dict(self.terms)
        for e, c in o.terms.items():
            _add_into(acc, e, c)
        return LaurentPoly(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _scalar(other)
            return LaurentPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        o = self._lift(other)
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                _add_into(acc, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return LaurentPoly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def shift(self, exp):
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def map_coeffs(self, fn):
        return LaurentPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def diff(self, i: int):
        acc = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                acc[tuple(e2)] = c * e[i]
        return LaurentPoly(self.nvars, acc)

    def embed(self, nvars: int, offset: int = 0):
        """Reinterpret in a ring with ``nvars`` variables, ours starting at ``offset``."""
        acc = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            new[offset:offset + self.nvars] = e
            acc[tuple(new)] = c
        return LaurentPoly(nvars, acc)

    def substitute(self, images):
        """Compose: replace variable ``i`` by the polynomial ``images[i]``.

        Only nonnegative exponents are supported.
        """
        target = images[0].nvars if images else 0
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k if k <= 1 else power(i, k - 1) * images[i]
            return cache[key]

        out = LaurentPoly.zero(target)
        for e, c in self.terms.items():
            if any(k < 0 for k in e):
                raise ValueError("substitute needs nonnegative exponents")
            term = LaurentPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point):
        """Exact value at a point (sequence of rationals)."""
        acc = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * (Fraction(x) ** k)
            acc = acc + v
        return acc

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self})"

    def to_string(self, names=None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = _exp_str(e, names)
            cs = str(c)
            if isinstance(c, YPoly) and len([x for x in c.coeffs if x]) > 1:
                cs = f"({cs})"
            if not mono:
                out.append(cs)
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{cs}*{mono}")
        return " + ".join(out).replace("+ -", "- ")

    __str__ = to_string


Poly = LaurentPoly


class TruncSeries:
    """Power series in ``nvars`` variables known exactly through total degree ``order``."""

    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order: int, terms=None):
        self.nvars = nvars
        self.order = order
        acc = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e}")
            if sum(e) <= order and c:
                _add_into(acc, e, _scalar(c))
        self.terms = _clean(acc)

    @classmethod
    def const(cls, nvars, order, c=1):
        return cls(nvars, order, {(0,) * nvars: c})

    @classmethod
    def from_poly(cls, poly: LaurentPoly, order: int):
        return cls(poly.nvars, order, poly.terms)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(self.nvars, self.terms)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def homogeneous(self, d: int) -> LaurentPoly:
        return LaurentPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, order: int):
        return TruncSeries(self.nvars, min(order, self.order), self.terms)

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return TruncSeries.from_poly(other, self.order)
        return TruncSeries.const(self.nvars, self.order, other)

    def __add__(self, other):
        o = self._lift(other)
        acc = dict(self.terms)
        for e, c in o.terms.items():
            _add_into(acc, e, c)
        return TruncSeries(self.nvars, min(self.order, o.order), acc)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (TruncSeries, LaurentPoly)):
            c = _scalar(other)
            return TruncSeries(self.nvars, self.order, {e: v * c for e, v in self.terms.items()})
        o = self._lift(other)
        order = min(self.order, o.order)
        acc: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in o.terms.items():
                if d1 + sum(e2) <= order:
                    _add_into(acc, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return TruncSeries(self.nvars, order, acc)

    __rmul__ = __mul__

    def mul_exact_poly(self, poly: LaurentPoly, gain: int):
        """Multiply by an exact homogeneous polynomial of degree ``gain``.

        Multiplying by a degree-``gain`` form raises the degree through which
        the product is known by ``gain``.
        """
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in poly.terms.items():
                _add_into(acc, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return TruncSeries(self.nvars, self.order + gain, acc)

    def inverse(self):
        c0 = self.constant_term()
        if isinstance(c0, YPoly):
            if not c0.is_constant():
                raise ZeroDivisionError("constant term depends on y")
            c0 = c0.constant()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        one = TruncSeries.const(self.nvars, self.order, 1)
        rest = one - self * (Fraction(1) / c0)  # inverse = (1/c0) * sum rest^k
        out = one
        power = one
        for _ in range(self.order):
            power = power * rest
            out = out + power
        return out * (Fraction(1) / c0)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.truncate(order).terms == other.truncate(order).terms

    __hash__ = None

    def along(self, direction) -> "UniLaurentSeries":
        """Substitute ``t_i -> s * direction[i]``; a series in ``s``."""
        coeffs = [Fraction(0)] * (self.order + 1)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(direction, e):
                if k:
                    v = v * (Fraction(x) ** k)
            coeffs[sum(e)] = coeffs[sum(e)] + v
        return UniLaurentSeries(0, coeffs, self.order)

    def map_coeffs(self, fn):
        return TruncSeries(self.nvars, self.order, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        body = LaurentPoly(self.nvars, self.terms).to_string([f"t{i + 1}" for i in range(self.nvars)])
        return f"TruncSeries({body} + O(deg {self.order + 1}))"


class UniLaurentSeries:
    """``sum_{k=low}^{order} c_k s^k`` with everything above ``order`` unknown."""

    __slots__ = ("low", "order", "coeffs")

    def __init__(self, low: int, coeffs, order: int):
        self.low = low
        self.order = order
        cs = [(_scalar(c) if c else Fraction(0)) for c in coeffs][: max(order - low + 1, 0)]
        cs += [Fraction(0)] * (max(order - low + 1, 0) - len(cs))
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c, order: int):
        return cls(0, [c], order)

    def coeff(self, k: int):
        if k > self.order:
            raise ValueError(f"degree {k} beyond known order {self.order}")
        if k < self.low:
            return Fraction(0)
        return self.coeffs[k - self.low]

    def negative_part(self) -> dict:
        return {k: self.coeff(k) for k in range(self.low, min(0, self.order + 1)) if self.coeff(k)}

    def _lift(self, other):
        if isinstance(other, UniLaurentSeries):
            return other
        return UniLaurentSeries(0, [other], max(self.order, 0))

    def __add__(self, other):
        o = self._lift(other)
        low = min(self.low, o.low)
        order = min(self.order, o.order)
        cs = [self.coeff(k) + o.coeff(k) for k in range(low, order + 1)]
        return UniLaurentSeries(low, cs, order)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return UniLaurentSeries(self.low, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        if not isinstance(other, UniLaurentSeries):
            c = _scalar(other)
            return UniLaurentSeries(self.low, [v * c for v in self.coeffs], self.order)
        low = self.low + other.low
        order = min(self.order + other.low, other.order + self.low)
        cs = [Fraction(0)] * max(order - low + 1, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(cs):
                    break
                cs[k] = cs[k] + a * b
        return UniLaurentSeries(low, cs, order)

    __rmul__ = __mul__

    def shift(self, k: int):
        """Multiply by ``s^k``."""
        return UniLaurentSeries(self.low + k, self.coeffs, self.order + k)

    def truncate(self, order: int):
        return UniLaurentSeries(self.low, self.coeffs, min(order, self.order))

    def __eq__(self, other):
        if not isinstance(other, UniLaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.low, other.low)
        return all(self.coeff(k) == other.coeff(k) for k in range(lo, order + 1))

    __hash__ = None

    def __repr__(self):
        items = ", ".join(f"{k}: {self.coeff(k)}" for k in range(self.low, self.order + 1) if self.coeff(k))
        return f"UniLaurentSeries({{{items}}}, order={self.order})"


# ---------------------------------------------------------------------------
# standard expansions


def exp_coeffs(order: int):
    return [Fraction(1, factorial(k)) for k in range(order + 1)]


def bernoulli_todd_coeffs(max_deg: int):
    """Coefficients ``c_0..c_max_deg`` of ``x / (1 - e^{-x})``.

    These are ``B_k^+ / k!`` (Bernoulli numbers with ``B_1 = +1/2``).

    >>> [str(c) for c in bernoulli_todd_coeffs(4)]
    ['1', '1/2', '1/12', '0', '-1/720']
    """
    if max_deg < 0:
        raise ValueError("max_deg must be >= 0")
    # (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    a = [Fraction((-1) ** k, factorial(k + 1)) for k in range(max_deg + 1)]
    inv = [Fraction(0)] * (max_deg + 1)
    inv[0] = 1 / a[0]
    for k in range(1, max_deg + 1):
        inv[k] = -sum(a[j] * inv[k - j] for j in range(1, k + 1)) / a[0]
    return inv


def compose_linear(coeffs, linear, order: int) -> TruncSeries:
    """``sum_k coeffs[k] * L^k`` truncated at ``order``, ``L = sum_i linear[i] t_i``."""
    n = len(linear)
    lin = TruncSeries(n, order, LaurentPoly.linear([Fraction(a) for a in linear]).terms)
    out = TruncSeries.const(n, order, coeffs[0] if coeffs else 0)
    power = TruncSeries.const(n, order, 1)
    for k in range(1, min(order, len(coeffs) - 1) + 1):
        power = power * lin
        if coeffs[k]:
            out = out + power * coeffs[k]
    return out


def series_exp(linear, order: int) -> TruncSeries:
    """Truncation of ``exp(sum_i a_i t_i)`` to total degree ``order``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return compose_linear(exp_coeffs(order), linear, order)


def uni_exp(a, order: int) -> UniLaurentSeries:
    """``exp(a s)`` through degree ``order``."""
    a = Fraction(a)
    return UniLaurentSeries(0, [a**k / factorial(k) for k in range(order + 1)], order)


def monomials_upto(nvars: int, degree: int):
    """All exponent vectors of total degree <= ``degree``, graded lexicographic."""
    out = []
    for d in range(degree + 1):
        out.extend(monomials_of_degree(nvars, d))
    return out


def monomials_of_degree(nvars: int, d: int):
    if nvars == 0:
        return [()] if d == 0 else []
    res = [e for e in product(range(d + 1), repeat=nvars) if sum(e) == d]
    return sorted(res, reverse=True)
