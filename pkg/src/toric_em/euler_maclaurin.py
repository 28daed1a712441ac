"""Euler-Maclaurin identities over dilated polytopes and over faces.

Operators in the facet derivatives ``d_rho = d/dh_rho`` are stored as
truncated series in ``r`` variables.  A monomial whose support is not a cone
of the normal fan annihilates every vertex term of ``int_{P(h)}``, so the
Hirzebruch-type operators are stored *folded*: only monomials supported on
cones are kept.  This is what makes the ``(1+y)^{n-r}`` prefactor collapse to
honest polynomials in ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .classes import linear_form, orbit_closure_restriction, todd_times_euler
from .errors import InconsistentSystem, NotDelzant, TruncationTooLow
from .fan import Summand, face_cone, fibration_multiplicities, polytope_cone_data, summand_offsets, summand_relint_points
from .kernel.linalg import dot, nullspace, rref
from .kernel.poly import (
    LaurentPoly,
    TruncSeries,
    UniLaurentSeries,
    bernoulli_todd_coeffs,
    compose_linear,
    monomials_of_degree,
    series_exp,
    uni_exp,
)
from .kernel.substitute import generic_direction
from .kernel.ypoly import YPoly
from .polytope import (
    Face,
    LatticePolytope,
    enumerate_lattice_points,
    integrate_over_face,
    is_delzant,
    lattice_sum,
    require_simple,
    volume_polynomial,
    weighted_sum_oracle,
)

VARIANTS = ("todd", "dual_todd", "hirzebruch_y", "twisted", "face")
FACE_SUBVARIANTS = ("todd", "dual_todd", "hirzebruch_y")


# -- operators --------------------------------------------------------------

@dataclass(frozen=True)
class DiffOpSeries:
    series: TruncSeries  # variables = facets

    @property
    def order(self) -> int:
        return self.series.order

    def coefficient(self, alpha):
        return self.series.coefficient(alpha)

    def apply(self, poly: LaurentPoly):
        """``op(d/dh) poly`` evaluated at ``h = 0``: ``sum_a c_a a! [h^a] poly``."""
        total = Fraction(0)
        for alpha, c in self.series.terms.items():
            coeff = poly.coefficient(alpha)
            if coeff:
                w = 1
                for k in alpha:
                    w *= factorial(k)
                total = total + c * coeff * w
        return total

    def fold(self, P: LatticePolytope) -> "DiffOpSeries":
        cones = {frozenset(E.tight) for E in P.faces}
        keep = {a: c for a, c in self.series.terms.items() if frozenset(i for i, k in enumerate(a) if k) in cones}
        return DiffOpSeries(TruncSeries(self.series.nvars, self.order, keep))

    def __eq__(self, other):
        return isinstance(other, DiffOpSeries) and self.series == other.series

    __hash__ = None


def _todd_product(r: int, D: int, coeffs) -> TruncSeries:
    out = TruncSeries.const(r, D, 1)
    for j in range(r):
        e = [0] * r
        e[j] = 1
        out = out * compose_linear(coeffs, e, D)
    return out


def _hirzebruch_coeffs(D: int):
    """``c_e(y) = [x^e] td(x)(1 + y e^{-x}) = td_e (1 + (-1)^e y)``."""
    td = bernoulli_todd_coeffs(D)
    return [YPoly((c, c if e % 2 == 0 else -c)) for e, c in enumerate(td)]


def _folded_product(r, D, supports, coeff_of, prefactor_exp):
    """``sum_S sum_{supp alpha = S} (1+y)^{prefactor_exp - |S|} prod_{rho} coeff_of(alpha_rho)``."""
    acc = {}
    for S in supports:
        S = tuple(sorted(S))
        k = len(S)
        if k > D:
            continue
        base = YPoly.one_plus_y_pow(prefactor_exp - k)
        for total in range(k, D + 1):
            for parts in monomials_of_degree(k, total - k) if k else [()]:
                alpha = [0] * r
                w = base
                for rho, extra in zip(S, parts):
                    alpha[rho] = extra + 1
                    w = w * coeff_of(extra + 1)
                if w:
                    key = tuple(alpha)
                    acc[key] = acc.get(key, 0) + w
            if not k:
                break
    return TruncSeries(r, D, acc)


def kp_operator(P: LatticePolytope, variant: str, D: int, d=None, face: Face | None = None, sub: str = "todd") -> DiffOpSeries:
    """Truncated Todd-type operator in the facet derivatives (Delzant ``P`` only)."""
    if not is_delzant(P):
        raise NotDelzant(f"{P.name or 'polytope'} is not Delzant; use the vertex or face-sum routes")
    r, n = len(P.facets), P.dim
    td = bernoulli_todd_coeffs(D)
    if variant == "todd":
        return DiffOpSeries(_todd_product(r, D, td))
    if variant == "dual_todd":
        return DiffOpSeries(_todd_product(r, D, [c * (-1) ** k for k, c in enumerate(td)]))
    cy = _hirzebruch_coeffs(D)
    if variant == "hirzebruch_y":
        supports = [E.tight for E in P.faces]
        return DiffOpSeries(_folded_product(r, D, supports, lambda e: cy[e], n))
    if variant == "twisted":
        if d is None:
            raise ValueError("twisted operator needs the exponents d_rho")
        base = _folded_product(r, D, [E.tight for E in P.faces], lambda e: cy[e], n)
        return DiffOpSeries(series_exp(list(d), D) * base)
    if variant == "face":
        if face is None:
            raise ValueError("face operator needs a face")
        sigma = sorted(face.tight)
        codim = len(sigma)
        if codim > D:
            return DiffOpSeries(TruncSeries(r, D))
        supports = [F.tight - face.tight for F in P.faces if set(F.vertices) <= set(face.vertices)]
        if sub == "todd":
            coeff_of = lambda e: td[e]  # noqa: E731
        elif sub == "dual_todd":
            coeff_of = lambda e: td[e] * (-1) ** e  # noqa: E731
        elif sub == "hirzebruch_y":
            coeff_of = lambda e: cy[e]  # noqa: E731
        else:
            raise ValueError(f"unknown face sub-variant {sub!r}")
        if sub == "hirzebruch_y":
            star = _folded_product(r, D - codim, supports, coeff_of, face.dim)
        else:
            star = _folded_product_plain(r, D - codim, supports, coeff_of)
        lead = [1 if j in face.tight else 0 for j in range(r)]
        shifted = {tuple(a + b for a, b in zip(e, lead)): c for e, c in star.terms.items()}
        return DiffOpSeries(TruncSeries(r, D, shifted))
    raise ValueError(f"unknown variant {variant!r}")


def _folded_product_plain(r, D, supports, coeff_of):
    acc = {}
    for S in supports:
        S = tuple(sorted(S))
        k = len(S)
        if k > D:
            continue
        for total in range(k, D + 1):
            for parts in (monomials_of_degree(k, total - k) if k else [()]):
                alpha = [0] * r
                w = Fraction(1)
                for rho, extra in zip(S, parts):
                    alpha[rho] = extra + 1
                    w = w * coeff_of(extra + 1)
                if w:
                    acc[tuple(alpha)] = acc.get(tuple(alpha), 0) + w
            if not k:
                break
    return TruncSeries(r, D, acc)


# -- em_check ---------------------------------------------------------------

@dataclass
class EMReport:
    polytope: str
    variant: str
    f: str
    left: object
    right: object
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.left == self.right

    def line(self) -> str:
        verdict = "OK" if self.ok else "MISMATCH"
        return f"{self.polytope} {self.variant} f={self.f} LEFT={self.left} RIGHT={self.right} {verdict}"


def twisted_right_side(P: LatticePolytope, Q: Summand, f: LaurentPoly) -> YPoly:
    """``sum_{E'} (sum_l (-1)^l d_l (1+y)^{l + dim E'}) sum_{Relint E'} f``."""
    table = fibration_multiplicities(P, Q)
    total = YPoly()
    for face, row in table.items():
        weight = YPoly()
        for ell, cnt in row.items():
            weight = weight + YPoly.one_plus_y_pow(ell + face.dim) * ((-1) ** ell * cnt)
        s = sum((f.evaluate(m) for m in summand_relint_points(Q, face)), Fraction(0))
        total = total + weight * s
    return total


def right_side(P: LatticePolytope, f: LaurentPoly, variant: str, face: Face | None = None, sub: str = "todd", summand=None):
    if variant == "todd":
        return lattice_sum(P, f)
    if variant == "dual_todd":
        return lattice_sum(P, f, P.full_face, "relative_interior")
    if variant == "hirzebruch_y":
        return weighted_sum_oracle(P, f)
    if variant == "twisted":
        return twisted_right_side(P, summand, f)
    if variant == "face":
        if sub == "todd":
            return lattice_sum(P, f, face, "all")
        if sub == "dual_todd":
            return lattice_sum(P, f, face, "relative_interior")
        total = YPoly()
        for G in P.faces:
            if set(G.vertices) <= set(face.vertices):
                s = lattice_sum(P, f, G, "relative_interior")
                if s:
                    total = total + YPoly.one_plus_y_pow(G.dim) * s
        return total
    raise ValueError(f"unknown variant {variant!r}")


def required_order(P: LatticePolytope, f: LaurentPoly) -> int:
    return P.dim + max(f.degree(), 0)


def em_check(P: LatticePolytope, f: LaurentPoly, variant: str = "todd", D: int | None = None, face: Face | None = None,
             sub: str = "todd", summand: Summand | None = None, vol=None) -> EMReport:
    """Operator applied to ``h -> int_{P(h)} f`` at ``h = 0`` against the oracle sum."""
    need = required_order(P, f)
    D = need if D is None else D
    if D < need:
        raise TruncationTooLow(f"order {D} < n + deg f = {need}")
    d = None
    if variant == "twisted":
        if summand is None:
            raise ValueError("twisted variant needs a summand")
        d = [a - b for a, b in zip(summand_offsets(P, summand), (fc.offset for fc in P.facets))]
    op = kp_operator(P, variant, D, d=d, face=face, sub=sub)
    vol = vol if vol is not None else volume_polynomial(P, f)
    left = op.apply(vol)
    right = right_side(P, f, variant, face, sub, summand)
    name = variant if variant != "face" else f"face[{face.id}]:{sub}"
    return EMReport(P.name, name, str(f), _normal(left), _normal(right), {"order": D})


def _normal(v):
    if isinstance(v, YPoly) and v.is_constant():
        return v.constant()
    return v


# -- vertex forms of the exponential integrals -----------------------------

@dataclass(frozen=True)
class VertexTerm:
    """``coef(z) e^{<v,z>} e^{sum_rho h_rho rate_rho(z)} / (scale * prod den(z))``."""

    vertex: tuple
    coef: LaurentPoly
    rates: tuple  # one linear form per facet (zero off sigma(1))
    denominators: tuple
    scale: Fraction

    def diff_h(self, rho: int) -> "VertexTerm":
        return VertexTerm(self.vertex, self.coef * linear_form(self.rates[rho]), self.rates, self.denominators, self.scale)

    def __eq__(self, other):
        if not isinstance(other, VertexTerm):
            return NotImplemented
        same_shape = (self.vertex, self.rates) == (other.vertex, other.rates)
        lhs = self.coef * other.scale
        rhs = other.coef * self.scale
        for m in other.denominators:
            lhs = lhs * linear_form(m)
        for m in self.denominators:
            rhs = rhs * linear_form(m)
        return same_shape and lhs == rhs

    __hash__ = None

    def along(self, xi, order: int) -> UniLaurentSeries:
        """Value at ``h = 0`` along ``z = s xi`` through ``s^order``."""
        k = len(self.denominators)
        c = Fraction(1) / self.scale
        for m in self.denominators:
            c /= dot(m, xi)
        work = order + k
        poly = UniLaurentSeries(0, [0], work)
        for e, a in self.coef.terms.items():
            v = a
            for x, p in zip(xi, e):
                v = v * Fraction(x) ** p
            poly = poly + UniLaurentSeries(0, [0] * sum(e) + [v], work)
        return (uni_exp(dot(self.vertex, xi), work) * poly * c).shift(-k).truncate(order)


def _vertex_rates(P, i, data):
    r = len(P.facets)
    rates = [tuple([Fraction(0)] * P.dim)] * r
    for k, j in enumerate(P.vertex_facets[i]):
        rates[j] = tuple(-a for a in data.dual_basis[k])  # <i*F_rho, z> = -<m'_rho, z>
    return tuple(rates)


def exponential_integral_vertex_form(P: LatticePolytope):
    """The per-vertex terms of ``int_{P(h)} e^{<m,z>} dm``."""
    require_simple(P)
    out = []
    for i, data in enumerate(polytope_cone_data(P)):
        rates = _vertex_rates(P, i, data)
        dens = tuple(rates[j] for j in P.vertex_facets[i])
        out.append(VertexTerm(P.vertices[i], LaurentPoly.const(P.dim, 1), rates, dens, Fraction(data.mult)))
    return out


def face_integral_vertex_form(P: LatticePolytope, E: Face):
    """The per-vertex terms of ``int_{E(h)} e^{<m,z>} dm`` (zero terms included)."""
    require_simple(P)
    mult_e = face_cone(P, E).mult
    out = []
    for i, data in enumerate(polytope_cone_data(P)):
        rates = _vertex_rates(P, i, data)
        dens = tuple(rates[j] for j in P.vertex_facets[i])
        coef = LaurentPoly.const(P.dim, mult_e)
        for j in sorted(E.tight):
            coef = coef * linear_form(rates[j])
        out.append(VertexTerm(P.vertices[i], coef, rates, dens, Fraction(data.mult)))
    return out


def vertex_direction(P: LatticePolytope):
    return generic_direction([m for d in polytope_cone_data(P) for m in d.dual_basis], P.dim)


def moment_series(P: LatticePolytope, E: Face, xi, order: int) -> UniLaurentSeries:
    """``int_E e^{s<m, xi>} dm = sum_k s^k/k! int_E <m, xi>^k dm`` by direct integration."""
    lin = LaurentPoly.linear([Fraction(a) for a in xi])
    coeffs = [integrate_over_face(P, E, lin**k) / factorial(k) for k in range(order + 1)]
    return UniLaurentSeries(0, coeffs, order)


def vertex_sum_series(terms, xi, order: int) -> UniLaurentSeries:
    total = None
    for t in terms:
        if t.coef.is_zero():
            continue
        s = t.along(xi, order)
        total = s if total is None else total + s
    return total if total is not None else UniLaurentSeries(0, [0], order)


@dataclass
class Rel1Report:
    face: int
    symbolic: bool
    series: bool
    polynomial: bool

    @property
    def ok(self) -> bool:
        return self.symbolic and self.series and self.polynomial


def rel1_check(P: LatticePolytope, E: Face, f: LaurentPoly | None = None, order: int = 2, vol=None) -> Rel1Report:
    """The facet-derivative relation between the two families of vertex terms.

    * symbolic: ``mult(sigma_E) prod d/dh_rho`` of each polytope vertex term
      equals the face vertex term, per vertex;
    * series: the face terms at ``h = 0`` sum to the exponential moments of ``E``;
    * polynomial: ``mult(sigma_E) prod d/dh_rho int_{P(h)} f`` at ``h=0`` is ``int_E f``.
    """
    mult_e = face_cone(P, E).mult
    body_terms = exponential_integral_vertex_form(P)
    face_terms = face_integral_vertex_form(P, E)
    symbolic = True
    for a, b in zip(body_terms, face_terms):
        d = a
        for j in sorted(E.tight):
            d = d.diff_h(j)
        d = VertexTerm(d.vertex, d.coef * mult_e, d.rates, d.denominators, d.scale)
        symbolic = symbolic and d == b
    xi = vertex_direction(P)
    series = vertex_sum_series(face_terms, xi, order) == moment_series(P, E, xi, order)
    f = f if f is not None else LaurentPoly.const(P.dim, 1)
    vol = vol if vol is not None else volume_polynomial(P, f)
    g = vol
    for j in sorted(E.tight):
        g = g.diff(j)
    poly_ok = g.constant_term() * mult_e == integrate_over_face(P, E, f)
    return Rel1Report(E.id, symbolic, series, poly_ok)


# -- local face operators ---------------------------------------------------

@dataclass
class FaceOperatorSet:
    polytope: LatticePolytope
    order: int
    operators: dict  # face id -> LaurentPoly in t
    kernel: dict | None = None  # one kernel direction, same shape
    kernel_degree: int | None = None

    def perturbed(self, scale=1) -> "FaceOperatorSet":
        if not self.kernel:
            return self
        ops = dict(self.operators)
        for fid, poly in self.kernel.items():
            ops[fid] = ops.get(fid, LaurentPoly.zero(self.polytope.dim)) + poly * Fraction(scale)
        return FaceOperatorSet(self.polytope, self.order, ops, None, None)


def cs_solve_face_operators(P: LatticePolytope, D: int) -> FaceOperatorSet:
    """Solve ``sum_E p_E [V_E]|_v = i_v^* td`` degree by degree.

    Unknown columns: faces by increasing dimension, then face id, then
    graded-lex monomials; pivots leftmost, free variables zero.
    """
    require_simple(P)
    n = P.dim
    datas = polytope_cone_data(P)
    rhs = [todd_times_euler(d, D) for d in datas]
    restr = {(E.id, i): orbit_closure_restriction(P, E, i, datas[i]) for E in P.faces for i in range(len(P.vertices))}
    ops = {E.id: LaurentPoly.zero(n) for E in P.faces}
    kernel = None
    kernel_degree = None
    for deg in range(D + 1):
        cols = []
        for E in P.faces:  # already sorted by dimension, then vertex set
            k = deg - len(E.tight)
            if k >= 0:
                cols.extend((E, a) for a in monomials_of_degree(n, k))
        if not cols:
            continue
        rows, targets = [], []
        monos = monomials_of_degree(n, deg)
        for i in range(len(P.vertices)):
            products = [restr[(E.id, i)] * LaurentPoly.monomial(a) if i in E.vertices else None for E, a in cols]
            for mono in monos:
                rows.append([p.coefficient(mono) if p is not None else Fraction(0) for p in products])
                targets.append(rhs[i].coefficient(mono))
        aug = [row + [t] for row, t in zip(rows, targets)]
        red, piv = rref(aug)
        if len(cols) in piv:
            raise InconsistentSystem(f"localization equations inconsistent in degree {deg}")
        sol = [Fraction(0)] * len(cols)
        for rr, c in enumerate(piv):
            sol[c] = red[rr][len(cols)]
        for (E, a), val in zip(cols, sol):
            if val:
                ops[E.id] = ops[E.id] + LaurentPoly.monomial(a, val)
        if kernel is None:
            ker = nullspace(rows, len(cols))
            if ker:
                vec = ker[0]
                kernel = {}
                for (E, a), val in zip(cols, vec):
                    if val:
                        kernel[E.id] = kernel.get(E.id, LaurentPoly.zero(n)) + LaurentPoly.monomial(a, val)
                kernel_degree = deg
    return FaceOperatorSet(P, D, ops, kernel, kernel_degree)


def cs_residual_zero(ops: FaceOperatorSet) -> bool:
    """Every localization equation holds through the working order."""
    P = ops.polytope
    datas = polytope_cone_data(P)
    for i, data in enumerate(datas):
        lhs = TruncSeries(P.dim, ops.order)
        for E in P.faces:
            if i in E.vertices:
                lhs = lhs + TruncSeries.from_poly(ops.operators[E.id] * orbit_closure_restriction(P, E, i, data), ops.order)
        if lhs != todd_times_euler(data, ops.order):
            return False
    return True


def apply_constant_operator(p: LaurentPoly, f: LaurentPoly) -> LaurentPoly:
    """``p(-d/dm) f`` (the face operators act through ``t -> -d/dm``)."""
    out = LaurentPoly.zero(f.nvars)
    for alpha, c in p.terms.items():
        g = f
        for i, k in enumerate(alpha):
            for _ in range(k):
                g = g.diff(i)
        if not g.is_zero():
            out = out + g * (c * (-1) ** sum(alpha))
    return out


def cs_left(ops: FaceOperatorSet, f: LaurentPoly) -> Fraction:
    P = ops.polytope
    return sum((integrate_over_face(P, E, apply_constant_operator(ops.operators[E.id], f)) for E in P.faces), Fraction(0))


@dataclass
class CSReport:
    polytope: str
    f: str
    left: Fraction
    right: Fraction
    perturbed_left: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.left == self.right and (self.perturbed_left is None or self.perturbed_left == self.left)

    def line(self) -> str:
        return f"{self.polytope} cs f={self.f} LEFT={self.left} RIGHT={self.right} {'OK' if self.ok else 'MISMATCH'}"


def cs_face_sum_check(P: LatticePolytope, f: LaurentPoly, D: int | None = None, ops: FaceOperatorSet | None = None,
                      perturb: bool = False) -> CSReport:
    need = required_order(P, f)
    D = need if D is None else D
    if D < need:
        raise TruncationTooLow(f"order {D} < n + deg f = {need}")
    ops = ops if ops is not None and ops.order >= D else cs_solve_face_operators(P, D)
    left = cs_left(ops, f)
    right = lattice_sum(P, f)
    pl = cs_left(ops.perturbed(), f) if perturb and ops.kernel else None
    return CSReport(P.name, str(f), left, right, pl)


def boundary_sum(P: LatticePolytope, f: LaurentPoly) -> Fraction:
    inner = set(enumerate_lattice_points(P, P.full_face, "relative_interior"))
    return sum((f.evaluate(m) for m in enumerate_lattice_points(P) if m not in inner), Fraction(0))
