from fractions import Fraction as F
from math import prod

import pytest

from toric_em.errors import NotASummand, NotSimplicial
from toric_em.fan import (
    SummandFace,
    check_refines,
    cone_data,
    fibration_multiplicities,
    make_summand,
    normal_fan,
    polytope_cone_data,
    star_fan,
    summand_offsets,
)
from toric_em.kernel.roots import RootOfUnity


def test_mult2_cone_data():
    d = cone_data([(0, 1), (-2, -1)])
    assert d.dual_basis == ((F(-1, 2), 1), (F(-1, 2), 0))
    assert d.mult == 2 and len(d.group) == 2
    assert set(d.dual_rays) == {(-1, 2), (-1, 0)}
    assert d.dual_scale == (2, 2)
    assert set(d.parallelepiped) == {(0, 0), (-1, 1)}
    assert set(d.group) == {(RootOfUnity(0), RootOfUnity(0)), (RootOfUnity(F(1, 2)), RootOfUnity(F(1, 2)))}


def test_smooth_cone_is_trivial():
    d = cone_data([(1, 0), (0, 1)])
    assert d.is_smooth and d.parallelepiped == ((0, 0),) and len(d.group) == 1


def test_rejects_degenerate_cone():
    with pytest.raises(NotSimplicial):
        cone_data([(1, 0), (2, 0)])


def test_group_order_and_parallelepiped(corpus):
    for P in corpus.values():
        for d in polytope_cone_data(P):
            assert d.mult == len(d.group)
            # |Par(sigma^vee)| = det(w_1..w_n) = prod k_i / mult; equals mult only for n <= 2
            assert len(d.parallelepiped) * d.mult == prod(d.dual_scale)
            assert len(set(d.group)) == len(d.group)


def test_reeve_parallelepiped_differs_from_mult(reeve):
    datas = polytope_cone_data(reeve)
    assert all(d.mult == 4 for d in datas[:1])
    assert {len(d.parallelepiped) for d in datas} == {2}
    assert {d.mult for d in datas} == {4}


def test_normal_fan_cones(tri2):
    fan = normal_fan(tri2)
    assert len(fan) == len(tri2.faces)
    assert fan[-1].rays == () and fan[-1].dim == 0
    assert sorted(c.mult for c in fan if c.dim == 2) == [1, 1, 2]


def test_star_fan_of_edge_and_vertex(square):
    edge = next(E for E in square.faces if E.dim == 1)
    sf = star_fan(square, edge)
    assert sf.lattice_dim == 1
    assert len(sf.maximal_cones()) == 2
    assert sorted(c.rays for c in sf.maximal_cones()) == [((-1,),), ((1,),)]
    vertex = square.faces[0]
    assert [c.ray_ids for c in star_fan(square, vertex).cones] == [()]


def test_summand_offsets_and_refinement(square):
    Q = make_summand([(0, 0), (1, 0)])
    assert Q.dim == 1
    assert summand_offsets(square, Q) == (0, 0, 0, 1)
    check_refines(square, Q)
    with pytest.raises(NotASummand):
        check_refines(square, make_summand([(0, 0), (1, 1)]))


def test_fibration_tables(square):
    seg = fibration_multiplicities(square, make_summand([(0, 0), (1, 0)]))
    assert seg == {SummandFace(((0, 0),), 0): {0: 2, 1: 1}, SummandFace(((1, 0),), 0): {0: 2, 1: 1},
                   SummandFace(((0, 0), (1, 0)), 1): {0: 2, 1: 1}}
    point = fibration_multiplicities(square, make_summand([(0, 0)]))
    assert point == {SummandFace(((0, 0),), 0): {0: 4, 1: 4, 2: 1}}
    same = fibration_multiplicities(square, make_summand(square.vertices))
    assert all(row == {0: 1} for row in same.values()) and len(same) == 9
