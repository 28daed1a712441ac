"""Inner normal fan and the arithmetic of its cones.

Ray ``rho`` of the fan is identified with facet index ``rho`` of the polytope,
so facet-indexed data (offsets, dilation parameters, derivatives) line up
with ray-indexed data without any bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from .errors import NotASummand, NotSimplicial
from .kernel.linalg import (
    det,
    dot,
    index_of_sublattice,
    integer_inverse,
    inverse,
    matvec,
    primitive,
    quotient_map,
    rank,
    saturation_basis,
    smith_normal_form,
    solve_in_span,
    transpose,
)
from .kernel.roots import RootOfUnity
from .polytope import Face, LatticePolytope, affine_rank, build_polytope, interior_points, require_simple


@dataclass(frozen=True)
class Cone:
    rays: tuple  # primitive generators in N
    ray_ids: tuple  # facet indices
    face: Face | None = None

    @property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    @property
    def mult(self) -> int:
        """Index of the ray lattice inside its saturation."""
        return index_of_sublattice(list(self.rays), len(self.rays[0])) if self.rays else 1


def normal_fan(P: LatticePolytope):
    """``sigma_E`` for every face, listed in face-id order."""
    return [
        Cone(tuple(P.facets[j].normal for j in sorted(E.tight)), tuple(sorted(E.tight)), E)
        for E in P.faces
    ]


def vertex_cone(P: LatticePolytope, i: int) -> Cone:
    E = P.face_of_vertex(i)
    return Cone(tuple(P.facets[j].normal for j in P.vertex_facets[i]), P.vertex_facets[i], E)


def face_cone(P: LatticePolytope, E: Face) -> Cone:
    ids = tuple(sorted(E.tight))
    return Cone(tuple(P.facets[j].normal for j in ids), ids, E)


@dataclass(frozen=True)
class SimplicialConeData:
    cone: Cone
    dual_basis: tuple  # m'_i, rational
    mult: int
    dual_rays: tuple  # w_i = k_i m'_i, primitive in M
    dual_scale: tuple  # k_i
    parallelepiped: tuple
    group: tuple  # character tuples (a_1(g), ..., a_n(g)) of RootOfUnity
    group_reps: tuple  # representatives n_g in N

    @property
    def n(self) -> int:
        return len(self.dual_basis)

    @property
    def rays(self):
        return self.cone.rays

    @cached_property
    def is_smooth(self) -> bool:
        return self.mult == 1

    def parallelepiped_face(self, support, half_open_top: bool = False):
        """Points of the parallelepiped with ``s_i = 0`` off ``support``.

        With ``half_open_top`` the coordinates on ``support`` range over
        ``(0, 1]`` instead of ``[0, 1)``.
        """
        support = frozenset(support)
        out = []
        for p in self.parallelepiped:
            s = self.coordinates(p)
            if any(s[i] != 0 for i in range(self.n) if i not in support):
                continue
            if half_open_top:
                p = tuple(p[a] + sum(self.dual_rays[i][a] for i in support if s[i] == 0) for a in range(len(p)))
            out.append(p)
        return out

    def coordinates(self, m):
        """``s`` with ``m = sum s_i w_i``; ``s_i = <m, u_i> / k_i``."""
        return [Fraction(dot(m, u)) / k for u, k in zip(self.rays, self.dual_scale)]


def cone_data(cone) -> SimplicialConeData:
    if not isinstance(cone, Cone):
        cone = Cone(tuple(tuple(r) for r in cone), tuple(range(len(cone))))
    rays = [list(r) for r in cone.rays]
    n = len(rays[0]) if rays else 0
    if len(rays) != n or rank(rays) != n:
        raise NotSimplicial(f"rays {cone.rays} do not span a simplicial full-dimensional cone")
    inv = inverse(rays)  # columns are the dual basis
    dual = tuple(tuple(inv[r][i] for r in range(n)) for i in range(n))
    mult = int(abs(det(rays)))
    wr = tuple(primitive(m) for m in dual)
    ks = tuple(int(next(Fraction(a) / b for a, b in zip(w, m) if b)) for w, m in zip(wr, dual))

    # lattice points of the half-open parallelepiped spanned by w_i
    lo = [sum(min(0, w[a]) for w in wr) for a in range(n)]
    hi = [sum(max(0, w[a]) for w in wr) for a in range(n)]
    par = []
    for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(0 <= dot(p, u) < k for u, k in zip(rays, ks)):
            par.append(tuple(p))

    # G_sigma = N / N' through the Smith form of the ray matrix (columns u_i)
    d, pm, _ = smith_normal_form(transpose(rays))
    pinv = integer_inverse(pm)
    gens = [(tuple(pinv[a][i] for a in range(n)), d[i][i]) for i in range(n) if d[i][i] > 1]
    reps, chars = [], []
    for coeffs in product(*(range(o) for _, o in gens)):
        rep = tuple(sum(c * g[a] for c, (g, _) in zip(coeffs, gens)) for a in range(n))
        reps.append(rep)
        chars.append(tuple(RootOfUnity(dot(m, rep)) for m in dual))
    return SimplicialConeData(cone, dual, mult, wr, ks, tuple(par), tuple(chars), tuple(reps))


def polytope_cone_data(P: LatticePolytope):
    """``cone_data`` of every vertex cone, indexed by vertex."""
    require_simple(P)
    return [cone_data(vertex_cone(P, i)) for i in range(len(P.vertices))]


# -- star fans --------------------------------------------------------------

@dataclass(frozen=True)
class StarCone:
    face: Face  # face F of E whose cone contains sigma_E
    ray_ids: tuple  # facet indices of sigma_F not in sigma_E
    rays: tuple  # primitive images in N / N_sigma


@dataclass(frozen=True)
class StarFan:
    base: Face
    lattice_dim: int
    projection: tuple  # rows of N -> N / N_sigma
    cones: tuple

    @property
    def ray_ids(self):
        return tuple(sorted({j for c in self.cones for j in c.ray_ids}))

    def maximal_cones(self):
        return [c for c in self.cones if len(c.ray_ids) == self.lattice_dim]


def star_fan(P: LatticePolytope, E: Face) -> StarFan:
    """Images of the cones ``nu ⊇ sigma_E`` (faces ``F ⊆ E``) in ``N / N_sigma``."""
    n = P.dim
    base_rays = [P.facets[j].normal for j in sorted(E.tight)]
    proj = quotient_map(base_rays, n)
    cones = []
    for F in P.faces:
        if not set(F.vertices) <= set(E.vertices):
            continue
        extra = tuple(sorted(F.tight - E.tight))
        imgs = tuple(primitive(matvec(proj, P.facets[j].normal)) for j in extra)
        cones.append(StarCone(F, extra, imgs))
    return StarFan(E, E.dim, tuple(tuple(r) for r in proj), tuple(cones))


# -- Minkowski summands -----------------------------------------------------

@dataclass(frozen=True)
class Summand:
    """A possibly lower-dimensional lattice polytope ``Q`` in ``M``."""

    points: tuple
    vertices: tuple
    dim: int

    def support(self, u) -> Fraction:
        """``min_{q in Q} <q, u>``."""
        return min(dot(q, u) for q in self.vertices)

    def argmin(self, u):
        best = self.support(u)
        return tuple(i for i, q in enumerate(self.vertices) if dot(q, u) == best)


def make_summand(points) -> Summand:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    base = pts[0]
    k = affine_rank(pts)
    if k == 0:
        return Summand(tuple(pts), (base,), 0)
    n = len(base)
    basis = saturation_basis([tuple(a - b for a, b in zip(p, base)) for p in pts[1:]], n)
    local = [[int(c) for c in solve_in_span(basis, [a - b for a, b in zip(p, base)])] for p in pts]
    Q = build_polytope(local)
    verts = tuple(sorted(tuple(base[a] + sum(v[i] * basis[i][a] for i in range(k)) for a in range(n)) for v in Q.vertices))
    return Summand(tuple(pts), verts, k)


def summand_offsets(P: LatticePolytope, Q: Summand):
    """Support numbers ``c'_rho = -min_Q <q, u_rho>`` of the divisor of ``Q``."""
    return tuple(int(-Q.support(f.normal)) for f in P.facets)


def check_refines(P: LatticePolytope, Q: Summand) -> None:
    """Each maximal cone must sit inside one cone of the normal fan of ``Q``."""
    for i, tight in enumerate(P.vertex_facets):
        common = set(range(len(Q.vertices)))
        for j in tight:
            common &= set(Q.argmin(P.facets[j].normal))
        if not common:
            raise NotASummand(f"normal cone of vertex {P.vertices[i]} meets several cones of the summand fan")


def summand_vertex_at(P: LatticePolytope, Q: Summand, i: int):
    """Vertex of ``Q`` selected by the maximal cone of vertex ``i``."""
    common = set(range(len(Q.vertices)))
    for j in P.vertex_facets[i]:
        common &= set(Q.argmin(P.facets[j].normal))
    if not common:
        raise NotASummand(f"no common minimising vertex at {P.vertices[i]}")
    return Q.vertices[min(common)]


@dataclass(frozen=True)
class SummandFace:
    vertices: tuple  # vertex coordinates of the face of Q
    dim: int


def fibration_multiplicities(P: LatticePolytope, Q: Summand):
    """``{face E' of Q: {l: d_l(X/E')}}``, faces keyed by their vertex tuples."""
    check_refines(P, Q)
    table: dict = {}
    for cone in normal_fan(P):
        n = P.dim
        u = [sum(r[a] for r in cone.rays) for a in range(n)]
        idx = Q.argmin(u)
        verts = tuple(Q.vertices[i] for i in idx)
        dimq = affine_rank(verts)
        face = SummandFace(verts, dimq)
        ell = cone.face.dim - dimq
        row = table.setdefault(face, {})
        row[ell] = row.get(ell, 0) + 1
    return table


def summand_relint_points(Q: Summand, face: SummandFace):
    """Lattice points of ``M`` in the relative interior of a face of ``Q``."""
    verts = list(face.vertices)
    if face.dim == 0:
        return [verts[0]]
    n = len(verts[0])
    base = verts[0]
    basis = saturation_basis([tuple(a - b for a, b in zip(v, base)) for v in verts[1:]], n)
    local = [[int(c) for c in solve_in_span(basis, [a - b for a, b in zip(v, base)])] for v in verts]
    F = build_polytope(local)
    return [tuple(base[a] + sum(p[i] * basis[i][a] for i in range(face.dim)) for a in range(n)) for p in interior_points(F)]
