"""Localized equivariant classes at torus-fixed points.

Cohomological variables ``t_1..t_n`` are coordinates on ``M ⊗ Q`` with
``c(m) = <m, t>`` and ``ch(x^m) = e^{-<m, t>}``.  Pairing a class with
``z in N_C`` means ``t = -z``, so the Brion substitution
``x^m -> e^{s<m, xi>}`` is the evaluation ``t = -s xi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import MismatchAtVertex, NonGenericDirection, PoleResidueNonzero
from .fan import (
    SimplicialConeData,
    face_cone,
    polytope_cone_data,
    summand_vertex_at,
)
from .genfunc import (
    ConeRationalFunction,
    to_mp,
    molien_average,
    weighted_cone_class,
    weighted_face_terms,
)
from .kernel.linalg import dot
from .kernel.poly import (
    LaurentPoly,
    TruncSeries,
    UniLaurentSeries,
    bernoulli_todd_coeffs,
    compose_linear,
    series_exp,
)
from .kernel.roots import RootOfUnity, numeric_context
from .kernel.substitute import generic_direction
from .kernel.ypoly import YPoly, specialize
from .polytope import Face, LatticePolytope, require_simple, weighted_count_oracle

# fixed rational sample points (published list; no randomness anywhere)
SAMPLE_POINTS = (
    (Fraction(3, 7), Fraction(-5, 11), Fraction(2, 13)),
    (Fraction(-1, 3), Fraction(4, 9), Fraction(7, 17)),
    (Fraction(5, 8), Fraction(1, 6), Fraction(-3, 10)),
    (Fraction(-2, 5), Fraction(-3, 7), Fraction(1, 4)),
    (Fraction(1, 9), Fraction(5, 12), Fraction(-4, 11)),
    (Fraction(7, 10), Fraction(-1, 8), Fraction(3, 5)),
    (Fraction(-3, 4), Fraction(2, 9), Fraction(-1, 7)),
    (Fraction(2, 11), Fraction(-7, 12), Fraction(5, 9)),
    (Fraction(4, 13), Fraction(3, 8), Fraction(2, 7)),
    (Fraction(-5, 9), Fraction(1, 10), Fraction(-6, 13)),
    (Fraction(6, 7), Fraction(-2, 3), Fraction(1, 11)),
    (Fraction(-1, 12), Fraction(5, 7), Fraction(3, 8)),
    (Fraction(3, 11), Fraction(4, 5), Fraction(-2, 9)),
    (Fraction(-4, 7), Fraction(-1, 9), Fraction(5, 6)),
    (Fraction(1, 5), Fraction(-3, 13), Fraction(-7, 10)),
    (Fraction(8, 9), Fraction(2, 11), Fraction(1, 3)),
    (Fraction(-6, 11), Fraction(3, 4), Fraction(-1, 5)),
    (Fraction(2, 3), Fraction(-4, 9), Fraction(6, 11)),
    (Fraction(-7, 13), Fraction(1, 2), Fraction(2, 5)),
    (Fraction(5, 12), Fraction(-5, 8), Fraction(-3, 7)),
    (Fraction(1, 7), Fraction(6, 13), Fraction(4, 9)),
    (Fraction(-2, 9), Fraction(-6, 7), Fraction(1, 12)),
    (Fraction(9, 10), Fraction(1, 13), Fraction(-5, 12)),
    (Fraction(-3, 8), Fraction(7, 11), Fraction(-2, 13)),
)

TOLERANCE = 1e-9


def sample_points(n: int, count: int, avoid=()):
    """First ``count`` fixed sample points (in ``n`` coordinates) off every hyperplane ``<w, z> = 0``."""
    out = []
    for p in SAMPLE_POINTS:
        z = p[:n]
        if all(dot(w, z) != 0 for w in avoid):
            out.append(z)
        if len(out) == count:
            break
    return out


def linear_form(m, n=None) -> LaurentPoly:
    """``<m, t>`` as a homogeneous linear polynomial."""
    return LaurentPoly.linear([Fraction(a) for a in m])


@dataclass(frozen=True)
class LocalizedClass:
    """``scale * numerator / prod(denominators)``; denominators are linear forms in ``t``."""

    numerator: TruncSeries
    denominators: tuple
    scale: Fraction = Fraction(1)

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def known_through(self) -> int:
        """Total degree through which the class is known (negative degrees count)."""
        return self.numerator.order - len(self.denominators)

    def __eq__(self, other):
        if not isinstance(other, LocalizedClass):
            return NotImplemented
        a = self.numerator * self.scale
        for m in other.denominators:
            a = a.mul_exact_poly(linear_form(m), 1)
        b = other.numerator * other.scale
        for m in self.denominators:
            b = b.mul_exact_poly(linear_form(m), 1)
        return a == b

    __hash__ = None

    def along(self, direction, order: int | None = None) -> UniLaurentSeries:
        """Substitute ``t = s * direction``; a Laurent series in ``s``."""
        s = self.numerator.along(direction)
        k = len(self.denominators)
        c = Fraction(self.scale)
        for m in self.denominators:
            val = dot(m, direction)
            if val == 0:
                raise NonGenericDirection(f"<{m}, {tuple(direction)}> = 0")
            c /= val
        out = (s * c).shift(-k)
        return out.truncate(order) if order is not None else out

    def times_series(self, series: TruncSeries) -> "LocalizedClass":
        return LocalizedClass(self.numerator * series, self.denominators, self.scale)

    def evaluate(self, t, y=0, ctx=None):
        """Numeric value of the truncated class at a point (for diagnostics only)."""
        ctx = ctx or numeric_context()
        tv = [to_mp(ctx, a) for a in t]
        num = ctx.mpf(0)
        for e, c in self.numerator.terms.items():
            term = to_mp(ctx, specialize(c, to_mp(ctx, y)))
            for x, k in zip(tv, e):
                term *= x**k
            num += term
        den = ctx.mpf(1)
        for m in self.denominators:
            den *= ctx.fsum(to_mp(ctx, a) * b for a, b in zip(m, tv))
        return to_mp(ctx, self.scale) * num / den


def euler_class(data: SimplicialConeData) -> LaurentPoly:
    """``Eu = mult * prod_i <m'_i, t>`` (a homogeneous degree-``n`` polynomial)."""
    out = LaurentPoly.const(data.n, data.mult)
    for m in data.dual_basis:
        out = out * linear_form(m)
    return out


def _unit_inverse(w, order: int) -> TruncSeries:
    """Inverse of the unit ``(1 - e^{-L}) / L`` with ``L = <w, t>``, i.e. ``td(L)``."""
    unit = compose_linear([Fraction((-1) ** k, factorial(k + 1)) for k in range(order + 1)], w, order)
    return unit.inverse()


def chern_character(f: ConeRationalFunction, order: int) -> LocalizedClass:
    """``ch`` of an exact rational function: ``x^m -> e^{-<m,t>}`` and
    ``1 - x^w -> <w,t> * (1 - e^{-<w,t>}) / <w,t>``, the unit inverted."""
    n = f.nvars
    num = TruncSeries(n, order)
    for m, c in f.numerator.terms.items():
        num = num + series_exp([-a for a in m], order) * c
    for w in f.denominators:
        num = num * _unit_inverse(w, order)
    return LocalizedClass(num, tuple(tuple(Fraction(a) for a in w) for w in f.denominators))


def localized_hirzebruch(data: SimplicialConeData, order: int) -> LocalizedClass:
    """``T_y`` localized at the fixed point: ``ch`` of the weighted cone class.

    ``order`` is the degree through which the numerator is known; the class
    itself is then known through ``order - n``.
    """
    return chern_character(weighted_cone_class(data), order)


def localized_hirzebruch_direct(data: SimplicialConeData, order: int) -> LocalizedClass:
    """Same class assembled face by face from Todd coefficients.

    Each relatively open face ``S`` of the dual cone contributes
    ``sum_p e^{-<p,t>} prod_{i in S} td(L_i) / L_i`` with ``L_i = <w_i, t>``;
    everything is put over ``prod_i L_i``.
    """
    n = data.n
    td = bernoulli_todd_coeffs(order)
    num = TruncSeries(n, order)
    for S, weight, g in weighted_face_terms(data):
        inner = order - (n - len(S))
        if inner < 0:
            continue
        part = TruncSeries(n, inner)
        for p, c in g.numerator.terms.items():
            part = part + series_exp([-a for a in p], inner) * c
        for i in S:
            part = part * compose_linear(td, data.dual_rays[i], inner)
        for i in range(n):
            if i not in S:
                part = part.mul_exact_poly(linear_form(data.dual_rays[i]), 1)
        num = num + part * weight
    return LocalizedClass(num, tuple(tuple(Fraction(a) for a in w) for w in data.dual_rays))


def smooth_hirzebruch_product(data: SimplicialConeData, order: int) -> LocalizedClass:
    """``prod_i td(L_i)(1 + y e^{-L_i}) / L_i`` for a smooth cone."""
    n = data.n
    td = bernoulli_todd_coeffs(order)
    num = TruncSeries.const(n, order, 1)
    for w in data.dual_rays:
        factor = compose_linear(td, w, order) * (TruncSeries.const(n, order, 1) + series_exp([-a for a in w], order) * YPoly.y())
        num = num * factor
    return LocalizedClass(num, tuple(tuple(Fraction(a) for a in w) for w in data.dual_rays))


def todd_times_euler(data: SimplicialConeData, order: int) -> TruncSeries:
    """``i_sigma^* td = Eu * td_{x_sigma}`` as a power series through ``order``."""
    cls = chern_character(weighted_cone_class(data).specialize_y(0), order)
    k = 1
    for kk in data.dual_scale:
        k *= kk
    return cls.numerator * Fraction(data.mult, k)


# -- localization sums ------------------------------------------------------

CLASS_CHOICES = ("structure", "canonical", "hirzebruch")


def _vertex_class(data, order, choice):
    cls = localized_hirzebruch(data, order)
    if choice == "hirzebruch":
        return cls
    if choice == "structure":
        return LocalizedClass(cls.numerator.map_coeffs(lambda c: specialize(c, 0)), cls.denominators, cls.scale)
    if choice == "canonical":
        n = data.n

        def top(c):
            return c.coeff(n) if isinstance(c, YPoly) else Fraction(0)

        return LocalizedClass(cls.numerator.map_coeffs(top), cls.denominators, cls.scale)
    raise ValueError(f"unknown class choice {choice!r}")


@dataclass(frozen=True)
class LocalizationResult:
    series: UniLaurentSeries
    direction: tuple

    @property
    def value(self):
        return self.series.coeff(0)


def localization_direction(P: LatticePolytope, datas=None):
    datas = datas if datas is not None else polytope_cone_data(P)
    return generic_direction([w for d in datas for w in d.dual_rays], P.dim)


def chi_equivariant(P: LatticePolytope, twist=None, choice: str = "hirzebruch", order: int = 0, xi=None) -> LocalizationResult:
    """``sum_sigma e^{-<m_sigma, t>} T_{x_sigma}`` along ``t = -s xi`` through ``s^order``.

    ``twist`` is ``None`` (the divisor of ``P`` itself) or a summand ``Q``
    whose vertex ``m_sigma`` at each fixed point gives ``O(D')``.
    """
    require_simple(P)
    datas = polytope_cone_data(P)
    xi = tuple(xi) if xi is not None else localization_direction(P, datas)
    n = P.dim
    work = order + n
    total = None
    for i, (v, data) in enumerate(zip(P.vertices, datas)):
        m = v if twist is None else summand_vertex_at(P, twist, i)
        cls = _vertex_class(data, work, choice).times_series(series_exp([-a for a in m], work))
        s = cls.along([-a for a in xi], order)
        total = s if total is None else total + s
    bad = total.negative_part()
    if bad:
        raise PoleResidueNonzero(f"localization sum keeps negative degrees {sorted(bad)}")
    return LocalizationResult(total, xi)


def orbit_closure_restriction(P: LatticePolytope, E: Face, vertex: int, data: SimplicialConeData) -> LaurentPoly:
    """``[V_E]_T`` restricted to the fixed point of ``vertex``:
    ``mult(sigma_E) prod_{rho in sigma_E(1)} <m'_{sigma,rho}, t>`` if ``v in E``, else 0."""
    n = P.dim
    if vertex not in E.vertices:
        return LaurentPoly.zero(n)
    tight = P.vertex_facets[vertex]
    out = LaurentPoly.const(n, face_cone(P, E).mult)
    for j in sorted(E.tight):
        out = out * linear_form(data.dual_basis[tight.index(j)])
    return out


def orbit_closure_class(P: LatticePolytope, E: Face):
    """Restriction tuple ``{vertex index: polynomial}`` of ``[V_E]_T``."""
    datas = polytope_cone_data(P)
    return {i: orbit_closure_restriction(P, E, i, d) for i, d in enumerate(datas)}


# -- global Hirzebruch class, checked fixed point by fixed point -----------

def global_group(P: LatticePolytope, datas=None):
    """``G_Sigma`` as the set of distinct phase tuples over all rays (0 off ``sigma(1)``)."""
    datas = datas if datas is not None else polytope_cone_data(P)
    r = len(P.facets)
    out = set()
    for i, d in enumerate(datas):
        tight = P.vertex_facets[i]
        for chars in d.group:
            full = [Fraction(0)] * r
            for j, a in zip(tight, chars):
                full[j] = a.phase
            out.add(tuple(full))
    return sorted(out)


@dataclass
class GlobalCheckRecord:
    vertex: tuple
    y: Fraction
    sample: tuple
    deviation: float
    surviving_elements: int  # group elements not killed by an F -> 0 factor


@dataclass
class GlobalCheckReport:
    records: list
    group_size: int
    n: int
    r: int

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.records), default=0.0)

    @property
    def ok(self) -> bool:
        return self.max_deviation < TOLERANCE


def verify_global_hirzebruch(P: LatticePolytope, ys=(0, 1, 3), samples: int = 10, tolerance: float = TOLERANCE) -> GlobalCheckReport:
    """Restrict the global formula to every fixed point and compare with the
    localized class; raises ``MismatchAtVertex`` on failure."""
    require_simple(P)
    ctx = numeric_context()
    datas = polytope_cone_data(P)
    n, r = P.dim, len(P.facets)
    G = global_group(P, datas)

    records = []
    for i, data in enumerate(datas):
        tight = P.vertex_facets[i]
        forms = {j: data.dual_basis[k] for k, j in enumerate(tight)}
        exact = weighted_cone_class(data)
        pts = sample_points(n, samples, avoid=list(data.dual_rays) + list(data.dual_basis))
        for y in ys:
            yv = to_mp(ctx, y)
            for zs in pts:
                t = [-a for a in zs]
                total = ctx.mpc(0)
                survivors = 0
                for g in G:
                    term = ctx.mpc(1)
                    for j in range(r):
                        a = RootOfUnity(g[j]).value(ctx)
                        if j in forms:
                            F = ctx.fsum(to_mp(ctx, c) * b for c, b in zip(forms[j], t))
                            ae = a * ctx.exp(-F)
                            term *= F * (1 + yv * ae) / (1 - ae)
                        elif g[j] == 0:
                            term *= 1 + yv  # F -> 0 limit of F (1 + y e^{-F}) / (1 - e^{-F})
                        else:
                            term = ctx.mpc(0)  # F -> 0 with a != 1
                            break
                    if term != 0:
                        survivors += 1
                    total += term
                restricted = (1 + yv) ** (n - r) * total
                eu = data.mult
                for m in data.dual_basis:
                    eu *= ctx.fsum(to_mp(ctx, c) * b for c, b in zip(m, t))
                lhs = restricted / eu
                local = molien_average(data, zs, y, ctx)  # ch of the local formula at t = -z
                direct = exact.evaluate(zs, y, ctx)
                dev = float(max(abs(lhs - local), abs(lhs - direct)))
                rec = GlobalCheckRecord(P.vertices[i], Fraction(y), tuple(zs), dev, survivors)
                records.append(rec)
                if not dev < tolerance:
                    raise MismatchAtVertex(P.vertices[i], tuple(zs), dev)
                if survivors != len(data.group):
                    raise MismatchAtVertex(P.vertices[i], tuple(zs), f"{survivors} surviving group elements, expected {len(data.group)}")
    return GlobalCheckReport(records, len(G), n, r)


# -- chi_y face formula -------------------------------------------------------

def chi_y_face_formula(P: LatticePolytope, order: int = 0):
    """Oracle face sum against the localization sum; returns ``(oracle, localization t^0, ok)``."""
    oracle = weighted_count_oracle(P)
    loc = chi_equivariant(P, None, "hirzebruch", order).value
    return oracle, loc, oracle == loc


# -- per-vertex numeric and exact checks ------------------------------------

MOLIEN_YS = (0, 1, -1, 3)


@dataclass
class VertexCheck:
    vertex: tuple
    deviation: float
    ok: bool


def molien_check(P: LatticePolytope, ys=MOLIEN_YS, count: int = 20, tolerance: float = TOLERANCE):
    """Group average against the exact parallelepiped function, per vertex cone."""
    ctx = numeric_context()
    out = []
    for v, data in zip(P.vertices, polytope_cone_data(P)):
        exact = weighted_cone_class(data)
        pts = sample_points(P.dim, count, avoid=data.dual_rays)
        if len(pts) < count:
            raise NonGenericDirection(f"only {len(pts)} usable sample points at {v}")
        dev = 0.0
        for y in ys:
            for z in pts:
                dev = max(dev, float(abs(molien_average(data, z, y, ctx) - exact.evaluate(z, y, ctx))))
        out.append(VertexCheck(v, dev, dev < tolerance))
    return out


def hrr_check(P: LatticePolytope, order: int | None = None):
    """Chern character of the weighted class against the direct face-by-face class."""
    K = P.dim + 3 if order is None else order
    out = []
    for v, data in zip(P.vertices, polytope_cone_data(P)):
        same = localized_hirzebruch(data, K) == localized_hirzebruch_direct(data, K)
        out.append(VertexCheck(v, 0.0 if same else float("inf"), same))
    return out
