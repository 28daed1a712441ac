"""Rational generating functions of cones, weighted local classes, Brion
assembly and the Molien-type group average.

Convention: the monomial ``x^m`` stands for the lattice point ``m`` and
evaluation sends ``x^m -> exp(<m, z>)``.  Formulas written with the
character ``chi^{-m}`` differ by ``CHARACTER_SIGN = -1`` in the exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import EvaluationPole, PoleResidueNonzero
from .fan import SimplicialConeData, polytope_cone_data
from .kernel.linalg import dot
from .kernel.poly import LaurentPoly, UniLaurentSeries
from .kernel.roots import numeric_context
from .kernel.substitute import generic_direction, laurent_substitute
from .kernel.ypoly import YPoly, specialize
from .polytope import LatticePolytope, enumerate_lattice_points, require_simple

CHARACTER_SIGN = -1


def to_mp(ctx, x):
    """Exact rationals become working-precision floats; numbers pass through."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return ctx.mpf(x.numerator) / x.denominator
    return x


def _binomial(w) -> LaurentPoly:
    w = tuple(w)
    return LaurentPoly(len(w), {(0,) * len(w): 1, w: -1})


@dataclass(frozen=True)
class ConeRationalFunction:
    """``numerator / prod_w (1 - x^w)`` with a sorted multiset of ``w``."""

    numerator: LaurentPoly
    denominators: tuple

    def __post_init__(self):
        dens = tuple(sorted(tuple(int(a) for a in w) for w in self.denominators))
        if any(not any(w) for w in dens):
            raise ValueError("zero denominator exponent")
        object.__setattr__(self, "denominators", dens)

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @classmethod
    def polynomial(cls, poly: LaurentPoly):
        return cls(poly, ())

    def denominator_poly(self) -> LaurentPoly:
        out = LaurentPoly.const(self.nvars, 1)
        for w in self.denominators:
            out = out * _binomial(w)
        return out

    def _expand_to(self, dens):
        """Numerator over the (multi)set ``dens`` containing ours."""
        extra = list(dens)
        for w in self.denominators:
            extra.remove(w)
        num = self.numerator
        for w in extra:
            num = num * _binomial(w)
        return num

    def __add__(self, other):
        if not isinstance(other, ConeRationalFunction):
            other = ConeRationalFunction.polynomial(LaurentPoly.const(self.nvars, other))
        counts: dict = {}
        for src in (self.denominators, other.denominators):
            local: dict = {}
            for w in src:
                local[w] = local.get(w, 0) + 1
            for w, k in local.items():
                counts[w] = max(counts.get(w, 0), k)
        dens = tuple(w for w in sorted(counts) for _ in range(counts[w]))
        return ConeRationalFunction(self._expand_to(dens) + other._expand_to(dens), dens)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, ConeRationalFunction):
            return ConeRationalFunction(self.numerator * other.numerator, self.denominators + other.denominators)
        if isinstance(other, LaurentPoly):
            return ConeRationalFunction(self.numerator * other, self.denominators)
        return ConeRationalFunction(self.numerator * other, self.denominators)

    __rmul__ = __mul__

    def shift(self, v):
        """Multiply by ``x^v``."""
        return ConeRationalFunction(self.numerator.shift(v), self.denominators)

    def __eq__(self, other):
        if not isinstance(other, ConeRationalFunction):
            return NotImplemented
        return self.numerator * other.denominator_poly() == other.numerator * self.denominator_poly()

    __hash__ = None

    def specialize_y(self, y):
        return ConeRationalFunction(self.numerator.map_coeffs(lambda c: specialize(c, y)), self.denominators)

    def y_coefficient(self, k: int):
        def pick(c):
            return c.coeff(k) if isinstance(c, YPoly) else (c if k == 0 else Fraction(0))

        return ConeRationalFunction(self.numerator.map_coeffs(pick), self.denominators)

    def evaluate(self, z, y=0, ctx=None):
        """Numeric value at ``x^m = exp(<m, z>)`` (extended precision)."""
        ctx = ctx or numeric_context()
        zc = [to_mp(ctx, a) for a in z]
        num = ctx.mpf(0)
        for m, c in self.numerator.terms.items():
            num += to_mp(ctx, specialize(c, to_mp(ctx, y))) * ctx.exp(ctx.fsum(a * b for a, b in zip(m, zc)))
        den = ctx.mpf(1)
        for w in self.denominators:
            d = 1 - ctx.exp(ctx.fsum(a * b for a, b in zip(w, zc)))
            if d == 0:
                raise EvaluationPole(f"factor 1 - x^{w} vanishes")
            den *= d
        return num / den

    def substitute(self, xi, order: int) -> UniLaurentSeries:
        return laurent_substitute(self, xi, order)

    def to_text(self) -> str:
        dens = " ".join(f"(1-x^{list(w)})" for w in self.denominators) or "1"
        return f"[{self.numerator}] / {dens}"


# -- cone generating functions ---------------------------------------------

def cone_genfun(data: SimplicialConeData, mode="closed") -> ConeRationalFunction:
    """Generating function of ``sigma^vee ∩ M`` (``mode="closed"``) or of
    ``M ∩ Relint Cone(w_i : i in S)`` (``mode=S``, a set of dual-ray indices)."""
    n = data.n
    if mode == "closed":
        num = LaurentPoly(n, {p: 1 for p in data.parallelepiped})
        return ConeRationalFunction(num, data.dual_rays)
    support = tuple(sorted(mode))
    if not support:
        return ConeRationalFunction.polynomial(LaurentPoly.const(n, 1))
    pts = data.parallelepiped_face(support, half_open_top=True)
    num = LaurentPoly(n, {p: 1 for p in pts})
    return ConeRationalFunction(num, tuple(data.dual_rays[i] for i in support))


def weighted_face_terms(data: SimplicialConeData):
    """``[(S, (1+y)^{|S|}, relint genfun of the face S of sigma^vee)]``."""
    out = []
    for k in range(data.n + 1):
        for S in combinations(range(data.n), k):
            out.append((S, YPoly.one_plus_y_pow(k), cone_genfun(data, S)))
    return out


def weighted_cone_class(data: SimplicialConeData) -> ConeRationalFunction:
    """``sum_S (1+y)^{|S|} Relint-genfun(S)`` over the common denominator ``prod (1 - x^{w_i})``."""
    n = data.n
    dens = tuple(sorted(data.dual_rays))
    total = LaurentPoly.zero(n)
    for _, weight, g in weighted_face_terms(data):
        total = total + g._expand_to(dens) * weight
    return ConeRationalFunction(total, dens)


def smooth_product_class(data: SimplicialConeData) -> ConeRationalFunction:
    """``prod_i (1 + y x^{w_i}) / (1 - x^{w_i})`` (the smooth-cone closed form)."""
    n = data.n
    num = LaurentPoly.const(n, YPoly((1,)))
    for w in data.dual_rays:
        num = num * LaurentPoly(n, {(0,) * n: YPoly((1,)), tuple(w): YPoly.y()})
    return ConeRationalFunction(num, data.dual_rays)


def molien_average(data: SimplicialConeData, z, y, ctx=None):
    """``(1/|G|) sum_g prod_i (1 + y a_i(g^-1) X_i) / (1 - a_i(g^-1) X_i)``, ``X_i = exp(<m'_i, z>)``."""
    ctx = ctx or numeric_context()
    zc = [to_mp(ctx, a) for a in z]
    yv = to_mp(ctx, y)
    xs = [ctx.exp(ctx.fsum(to_mp(ctx, a) * b for a, b in zip(m, zc))) for m in data.dual_basis]
    total = ctx.mpc(0)
    for chars in data.group:
        term = ctx.mpc(1)
        for a, X in zip(chars, xs):
            ax = a.inverse().value(ctx) * X
            den = 1 - ax
            if abs(den) < ctx.mpf(2) ** (-ctx.prec // 2):
                raise EvaluationPole(f"1 - a X vanishes at z={tuple(z)}")
            term *= (1 + yv * ax) / den
        total += term
    return total / len(data.group)


# -- Brion assembly ---------------------------------------------------------

@dataclass(frozen=True)
class BrionTerm:
    vertex: tuple
    function: ConeRationalFunction  # already multiplied by x^vertex

    @property
    def shift(self):
        return self.vertex


def brion_assembly(P: LatticePolytope, weighted: bool = False):
    require_simple(P)
    terms = []
    for v, data in zip(P.vertices, polytope_cone_data(P)):
        g = weighted_cone_class(data) if weighted else cone_genfun(data, "closed")
        terms.append(BrionTerm(v, g.shift(v)))
    return terms


def brion_sum(terms) -> ConeRationalFunction:
    total = None
    for t in terms:
        total = t.function if total is None else total + t.function
    return total


def lattice_point_polynomial(P: LatticePolytope, weighted: bool = False) -> LaurentPoly:
    """``sum x^m`` over ``P ∩ M`` (or with face weights ``(1+y)^{dim E}``), by enumeration."""
    if not weighted:
        return LaurentPoly(P.dim, {m: 1 for m in enumerate_lattice_points(P)})
    acc = LaurentPoly.zero(P.dim)
    for E in P.faces:
        w = YPoly.one_plus_y_pow(E.dim)
        for m in enumerate_lattice_points(P, E, "relative_interior"):
            acc = acc + LaurentPoly.monomial(m, w)
    return acc


def brion_matches_polynomial(P: LatticePolytope, weighted: bool = False) -> bool:
    """Cross-multiplied identity ``sum_v x^v G_v = sum_{P ∩ M} x^m``."""
    return brion_sum(brion_assembly(P, weighted)) == ConeRationalFunction.polynomial(lattice_point_polynomial(P, weighted))


def brion_direction(P: LatticePolytope, terms=None):
    terms = terms if terms is not None else brion_assembly(P)
    dens = [w for t in terms for w in t.function.denominators]
    return generic_direction(dens, P.dim)


@dataclass(frozen=True)
class BrionEvaluation:
    series: UniLaurentSeries
    direction: tuple

    @property
    def value(self):
        return self.series.coeff(0)


def evaluate_brion(P: LatticePolytope, weighted: bool = False, order: int = 0, xi=None) -> BrionEvaluation:
    terms = brion_assembly(P, weighted)
    xi = tuple(xi) if xi is not None else brion_direction(P, terms)
    total = None
    for t in terms:
        s = laurent_substitute(t.function, xi, order)
        total = s if total is None else total + s
    bad = total.negative_part()
    if bad:
        raise PoleResidueNonzero(f"surviving negative degrees {sorted(bad)} for {P.name}")
    return BrionEvaluation(total, xi)


def pairing(m, z):
    return dot(m, z)
