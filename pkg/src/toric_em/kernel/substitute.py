"""Specialisation ``x^m -> exp(s <m, xi>)`` of Laurent polynomials and
binomial-denominator rational functions into Laurent series in ``s``."""

from __future__ import annotations

from fractions import Fraction

from ..errors import NonGenericDirection
from .poly import LaurentPoly, UniLaurentSeries, bernoulli_todd_coeffs, uni_exp


def pairing(m, xi) -> Fraction:
    return sum(Fraction(a) * b for a, b in zip(m, xi))


def inverse_binomial_series(a, order: int) -> UniLaurentSeries:
    """Laurent expansion of ``1 / (1 - e^{a s})`` through degree ``order`` (a != 0).

    Uses ``1/(1 - e^{u}) = td(-u) / (-u)`` with ``td(x) = x / (1 - e^{-x})``.
    """
    a = Fraction(a)
    if a == 0:
        raise NonGenericDirection("binomial factor pairs to zero")
    td = bernoulli_todd_coeffs(order + 1)
    coeffs = [c * (-a) ** k for k, c in enumerate(td)]  # td(-a s)
    return UniLaurentSeries(0, coeffs, order + 1).shift(-1) * (Fraction(-1) / a)


def generic_direction(denominators, n: int):
    """``(1, q, ..., q^{n-1})`` for the smallest ``q >= 2`` avoiding every ``<w, xi> = 0``."""
    q = 2
    while True:
        xi = tuple(q**i for i in range(n))
        if all(pairing(w, xi) != 0 for w in denominators):
            return xi
        q += 1


def laurent_substitute(f, xi, order: int) -> UniLaurentSeries:
    """Expand ``f`` along ``x^m -> exp(s <m, xi>)`` through ``s^order``.

    ``f`` is either a :class:`LaurentPoly` or any object exposing
    ``numerator`` (LaurentPoly) and ``denominators`` (exponent vectors of the
    factors ``1 - x^w``).
    """
    if isinstance(f, LaurentPoly):
        numerator, dens = f, ()
    else:
        numerator, dens = f.numerator, tuple(f.denominators)
    pairs = [pairing(w, xi) for w in dens]
    bad = [w for w, p in zip(dens, pairs) if p == 0]
    if bad:
        raise NonGenericDirection(f"<{bad[0]}, {tuple(xi)}> = 0")
    k = len(dens)
    work = order + k  # each factor has a simple pole
    num = UniLaurentSeries(0, [0], work)
    for m, c in numerator.terms.items():
        num = num + uni_exp(pairing(m, xi), work) * c
    out = num
    for p in pairs:
        out = out * inverse_binomial_series(p, work)
    return out.truncate(order)
