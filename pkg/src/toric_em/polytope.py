"""Lattice polytopes: hull and facets, face lattice, the enumeration oracle,
dilations ``P(h)`` and exact polynomial integration over faces.

Facets are stored as ``<m, u> + c >= 0`` with ``u`` primitive and inward.
Everything here is exact; the lattice-point scans are the ground truth that
every closed formula elsewhere in the package is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import factorial

from .errors import (
    InadmissibleDilation,
    NotFullDimensional,
    NotLatticePolytope,
    NotSimple,
    SingularVertex,
)
from .kernel.linalg import (
    det,
    dot,
    hyperplane_normal,
    inverse,
    primitive,
    rank,
    saturation_basis,
    solve_in_span,
)
from .kernel.poly import LaurentPoly
from .kernel.ypoly import YPoly


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: int

    def value(self, m):
        return dot(m, self.normal) + self.offset


@dataclass(frozen=True)
class Face:
    id: int
    tight: frozenset  # facet indices containing the face
    dim: int
    vertices: tuple  # vertex indices


def _as_int_point(p):
    out = []
    for x in p:
        fx = Fraction(x)
        if fx.denominator != 1:
            raise NotLatticePolytope(f"non-integer coordinate {x} in {tuple(p)}")
        out.append(int(fx))
    return tuple(out)


def affine_rank(points) -> int:
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    return rank([[a - b for a, b in zip(p, base)] for p in pts[1:]]) if len(pts) > 1 else 0


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    vertices: tuple
    facets: tuple
    name: str = field(default="", compare=False)

    # -- incidence -------------------------------------------------------
    @cached_property
    def vertex_facets(self):
        """For each vertex, the sorted tuple of facets tight at it."""
        return tuple(
            tuple(j for j, f in enumerate(self.facets) if f.value(v) == 0) for v in self.vertices
        )

    @cached_property
    def faces(self):
        return face_lattice(self)

    def vertex_index(self, v) -> int:
        return self.vertices.index(tuple(v))

    def contains(self, m) -> bool:
        return all(f.value(m) >= 0 for f in self.facets)

    def face_of_vertex(self, i: int) -> Face:
        return next(F for F in self.faces if F.dim == 0 and F.vertices == (i,))

    def face_by_tight(self, tight) -> Face:
        tight = frozenset(tight)
        return next(F for F in self.faces if F.tight == tight)

    @property
    def full_face(self) -> Face:
        return self.faces[-1]

    def dilate(self, k: int) -> "LatticePolytope":
        return build_polytope([[k * x for x in v] for v in self.vertices], name=f"{self.name}*{k}")

    def translate(self, shift) -> "LatticePolytope":
        return build_polytope([[x + s for x, s in zip(v, shift)] for v in self.vertices], name=self.name)

    def __repr__(self):
        return f"LatticePolytope({self.name or '?'}, dim={self.dim}, vertices={list(self.vertices)})"


def build_polytope(vertices, facets=None, name: str = "") -> LatticePolytope:
    """Convex hull of integer points with primitive inward facet normals.

    Brute force over ``n``-subsets of the input; fine at desk scale.  If
    ``facets`` (pairs ``(normal, offset)``) are supplied they are validated
    against the computed ones.
    """
    pts = sorted({_as_int_point(p) for p in vertices})
    if not pts:
        raise NotFullDimensional("empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise NotFullDimensional("points of mixed dimension")
    if affine_rank(pts) != n:
        raise NotFullDimensional(f"points span affine dimension {affine_rank(pts)} < {n}")

    found = set()
    for subset in combinations(pts, n):
        diffs = [[a - b for a, b in zip(p, subset[0])] for p in subset[1:]]
        if n > 1 and rank(diffs) != n - 1:
            continue
        u = hyperplane_normal(diffs, n)
        if not any(u):
            continue
        u = primitive(u)
        vals = [dot(p, u) for p in pts]
        base = dot(subset[0], u)
        if all(v >= base for v in vals):
            found.add(Facet(u, int(-base)))
        elif all(v <= base for v in vals):
            neg = tuple(-x for x in u)
            found.add(Facet(neg, int(base)))
    facet_list = tuple(sorted(found, key=lambda f: (f.normal, f.offset), reverse=True))

    verts = []
    for p in pts:
        tight = [f.normal for f in facet_list if f.value(p) == 0]
        if tight and rank(tight) == n:
            verts.append(p)
    P = LatticePolytope(n, tuple(verts), facet_list, name=name)

    if facets is not None:
        given = {Facet(tuple(int(x) for x in u), int(c)) for u, c in facets}
        if given != set(facet_list):
            raise NotLatticePolytope("supplied facets do not match the hull of the vertices")
    return P


def face_lattice(P: LatticePolytope):
    """All faces (vertices first, ``P`` last), ordered by ``(dim, vertex set)``."""
    nv = len(P.vertices)
    vf = [frozenset(t) for t in P.vertex_facets]
    full = frozenset(range(nv))
    seen = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for vs in frontier:
            for j in range(len(P.facets)):
                sub = frozenset(i for i in vs if j in vf[i])
                if sub and sub not in seen:
                    seen.add(sub)
                    nxt.append(sub)
        frontier = nxt
    records = []
    for vs in seen:
        tight = frozenset.intersection(*(vf[i] for i in vs)) if vs != full else frozenset()
        d = affine_rank([P.vertices[i] for i in vs])
        records.append((d, tuple(sorted(vs)), tight))
    records.sort(key=lambda r: (r[0], r[1]))
    return [Face(k, tight, d, vs) for k, (d, vs, tight) in enumerate(records)]


def is_simple(P: LatticePolytope) -> bool:
    return all(len(t) == P.dim for t in P.vertex_facets)


def is_delzant(P: LatticePolytope) -> bool:
    if not is_simple(P):
        return False
    return all(abs(det([P.facets[j].normal for j in t])) == 1 for t in P.vertex_facets)


def require_simple(P: LatticePolytope) -> None:
    if not is_simple(P):
        raise NotSimple(f"{P.name or 'polytope'} is not simple")


# -- the oracle -------------------------------------------------------------

def enumerate_lattice_points(P: LatticePolytope, face: Face | None = None, mode: str = "all"):
    """Lattice points of ``face`` (default ``P``) by scanning its bounding box."""
    if mode not in ("all", "relative_interior"):
        raise ValueError(f"unknown mode {mode!r}")
    face = face or P.full_face
    corners = [P.vertices[i] for i in face.vertices]
    ranges = [range(min(c[k] for c in corners), max(c[k] for c in corners) + 1) for k in range(P.dim)]
    out = []
    for m in product(*ranges):
        ok = True
        for j, f in enumerate(P.facets):
            val = f.value(m)
            if j in face.tight:
                if val != 0:
                    ok = False
                    break
            elif val < 0 or (mode == "relative_interior" and val == 0):
                ok = False
                break
        if ok:
            out.append(m)
    return out


def interior_points(P: LatticePolytope):
    return enumerate_lattice_points(P, P.full_face, "relative_interior")


def weighted_sum_oracle(P: LatticePolytope, f: LaurentPoly | None = None) -> YPoly:
    """``sum_E (1+y)^{dim E} sum_{m in Relint E} f(m)`` by enumeration."""
    total = YPoly()
    for E in P.faces:
        pts = enumerate_lattice_points(P, E, "relative_interior")
        s = Fraction(len(pts)) if f is None else sum((f.evaluate(m) for m in pts), Fraction(0))
        if s:
            total = total + YPoly.one_plus_y_pow(E.dim) * s
    return total


def weighted_count_oracle(P: LatticePolytope) -> YPoly:
    return weighted_sum_oracle(P, None)


def lattice_sum(P: LatticePolytope, f: LaurentPoly, face: Face | None = None, mode: str = "all") -> Fraction:
    return sum((f.evaluate(m) for m in enumerate_lattice_points(P, face, mode)), Fraction(0))


# -- dilations --------------------------------------------------------------

def vertex_dual_basis(P: LatticePolytope, i: int):
    """Dual basis ``m'_k`` (``<m'_k, u_j> = delta``) of the tight normals at vertex ``i``."""
    tight = P.vertex_facets[i]
    if len(tight) != P.dim:
        raise NotSimple(f"vertex {P.vertices[i]} lies on {len(tight)} facets")
    rows = [P.facets[j].normal for j in tight]
    try:
        inv = inverse(rows)
    except ZeroDivisionError as exc:
        raise SingularVertex(f"dependent normals at {P.vertices[i]}") from exc
    return [tuple(inv[r][k] for r in range(P.dim)) for k in range(P.dim)]


def vertex_coordinates_dilated(P: LatticePolytope, i: int):
    """``v(h) = v - sum_k h_{rho_k} m'_k`` as ``n`` affine polynomials in ``h`` (one var per facet)."""
    r = len(P.facets)
    tight = P.vertex_facets[i]
    basis = vertex_dual_basis(P, i)
    coords = []
    for a in range(P.dim):
        lin = [Fraction(0)] * r
        for k, j in enumerate(tight):
            lin[j] -= basis[k][a]
        coords.append(LaurentPoly.linear(lin, P.vertices[i][a]))
    return coords


def check_dilation(P: LatticePolytope, h) -> None:
    """Raise unless ``P(h)`` keeps the combinatorial type of ``P``."""
    r = len(P.facets)
    hv = [Fraction(h.get(j, 0)) if isinstance(h, dict) else Fraction(h[j]) for j in range(r)]
    for i in range(len(P.vertices)):
        vh = [c.evaluate(hv) for c in vertex_coordinates_dilated(P, i)]
        tight = P.vertex_facets[i]
        for j, f in enumerate(P.facets):
            if j not in tight and f.value(vh) + hv[j] <= 0:
                raise InadmissibleDilation(f"vertex {P.vertices[i]} leaves facet {j} at h={hv}")


# -- triangulation and integration -----------------------------------------

def triangulate_face(P: LatticePolytope, face: Face):
    """Pulling triangulation driven by the face lattice: cone the lowest vertex
    over the facets of ``face`` that miss it.  Returns tuples of vertex indices."""
    cache: dict = {}

    def rec(F: Face):
        if F.id in cache:
            return cache[F.id]
        if F.dim == 0:
            out = [(F.vertices[0],)]
        else:
            base = F.vertices[0]
            vs = set(F.vertices)
            out = []
            for G in P.faces:
                if G.dim == F.dim - 1 and set(G.vertices) <= vs and base not in G.vertices:
                    out.extend((base,) + s for s in rec(G))
        cache[F.id] = out
        return out

    return rec(face)


def _simplex_integral(verts, f: LaurentPoly, scale):
    """``scale * int_{std simplex} f(sum_j lam_j verts[j]) dlam``.

    ``verts`` are coordinate lists with entries in a polynomial ring ``R``
    (LaurentPoly in ``R.nvars`` variables); the result lies in ``R``.
    """
    k = len(verts) - 1
    nr = scale.nvars
    nl = k + 1
    tot = nr + nl
    lam = [LaurentPoly.variable(tot, nr + j) for j in range(nl)]
    images = []
    for a in range(f.nvars):
        acc = LaurentPoly.zero(tot)
        for j in range(nl):
            acc = acc + verts[j][a].embed(tot, 0) * lam[j]
        images.append(acc)
    g = f.substitute(images) if f.nvars else LaurentPoly.const(tot, f.constant_term())
    out: dict = {}
    for e, c in g.terms.items():
        beta = e[nr:]
        w = Fraction(1, factorial(k + sum(beta)))
        for b in beta:
            w *= factorial(b)
        key = e[:nr]
        out[key] = out.get(key, 0) + c * w
    return LaurentPoly(nr, out) * scale


def volume_polynomial(P: LatticePolytope, f: LaurentPoly | None = None) -> LaurentPoly:
    """``h -> int_{P(h)} f dm`` as an exact polynomial in the facet parameters."""
    require_simple(P)
    n, r = P.dim, len(P.facets)
    f = f if f is not None else LaurentPoly.const(n, 1)
    vh = [vertex_coordinates_dilated(P, i) for i in range(len(P.vertices))]
    total = LaurentPoly.zero(r)
    for simplex in triangulate_face(P, P.full_face):
        pts = [vh[i] for i in simplex]
        mat = [[pts[j][a] - pts[0][a] for a in range(n)] for j in range(1, n + 1)]
        d = _poly_det(mat, r)
        if d.constant_term() < 0:
            d = -d
        total = total + _simplex_integral(pts, f, d)
    return total


def _poly_det(mat, nvars):
    """Determinant of a matrix of LaurentPoly entries (Laplace expansion; tiny sizes)."""
    k = len(mat)
    if k == 0:
        return LaurentPoly.const(nvars, 1)
    if k == 1:
        return mat[0][0]
    out = LaurentPoly.zero(nvars)
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _poly_det(minor, nvars)
        out = out + term if j % 2 == 0 else out - term
    return out


def face_lattice_basis(P: LatticePolytope, face: Face):
    """A basis of ``Span(E - v0) ∩ M``; its unit cube gets volume 1 on ``E``."""
    v0 = P.vertices[face.vertices[0]]
    diffs = [tuple(a - b for a, b in zip(P.vertices[i], v0)) for i in face.vertices[1:]]
    return saturation_basis([d for d in diffs if any(d)], P.dim)


def integrate_over_face(P: LatticePolytope, face: Face, g: LaurentPoly | None = None) -> Fraction:
    """``int_E g dm`` for the lattice-normalised measure on the affine span of ``E``."""
    g = g if g is not None else LaurentPoly.const(P.dim, 1)
    if face.dim == 0:
        return g.evaluate(P.vertices[face.vertices[0]])
    basis = face_lattice_basis(P, face)
    total = Fraction(0)
    one = LaurentPoly.const(0, 1)
    for simplex in triangulate_face(P, face):
        pts = [P.vertices[i] for i in simplex]
        coords = [solve_in_span(basis, [a - b for a, b in zip(p, pts[0])]) for p in pts[1:]]
        vol = abs(det(coords))
        cpts = [[LaurentPoly.const(0, x) for x in p] for p in pts]
        total += _simplex_integral(cpts, g, one * vol).constant_term()
    return total


def euclidean_volume(P: LatticePolytope) -> Fraction:
    return integrate_over_face(P, P.full_face)


def boundary_points(P: LatticePolytope):
    inner = set(interior_points(P))
    return [m for m in enumerate_lattice_points(P) if m not in inner]


def ehrhart_fit(P: LatticePolytope, ks=(1, 2, 3)):
    """Interpolate ``k -> |kP ∩ M|`` through ``L(0) = 1`` and the given dilates.

    Returns ``(coefficients low degree first, counts)``.
    """
    samples = [(0, Fraction(1))] + [(k, Fraction(len(enumerate_lattice_points(P.dilate(k))))) for k in ks]
    # Lagrange interpolation in exact arithmetic
    deg = len(samples) - 1
    coeffs = [Fraction(0)] * (deg + 1)
    for i, (xi, yi) in enumerate(samples):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(samples):
            if j == i:
                continue
            basis = [Fraction(0)] + basis  # multiply by k
            for a in range(len(basis) - 1):
                basis[a] -= xj * basis[a + 1]
            denom *= xi - xj
        for a, b in enumerate(basis):
            coeffs[a] += yi * b / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs, [c for _, c in samples]


def face_polytope(P: LatticePolytope, face: Face) -> LatticePolytope:
    """The face ``E`` (``dim E >= 1``) as a full-dimensional polytope in its own saturated lattice."""
    if face.dim == 0:
        raise NotFullDimensional("a vertex has no full-dimensional model")
    basis = face_lattice_basis(P, face)
    v0 = P.vertices[face.vertices[0]]
    local = [tuple(int(c) for c in solve_in_span(basis, [a - b for a, b in zip(P.vertices[i], v0)])) for i in face.vertices]
    return build_polytope(local, name=f"{P.name}[face {face.id}]")
