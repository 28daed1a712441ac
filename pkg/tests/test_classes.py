from fractions import Fraction as F

import pytest

from toric_em.classes import (
    chi_equivariant,
    chi_y_face_formula,
    euler_class,
    hrr_check,
    localized_hirzebruch,
    localized_hirzebruch_direct,
    orbit_closure_class,
    sample_points,
    smooth_hirzebruch_product,
    todd_times_euler,
    verify_global_hirzebruch,
)
from toric_em.fan import cone_data, make_summand, polytope_cone_data
from toric_em.kernel import LaurentPoly, YPoly
from toric_em.polytope import interior_points, weighted_count_oracle


def test_one_dimensional_class():
    d = cone_data([(1,)])
    cls = localized_hirzebruch(d, 2)
    # (1 + y e^{-t}) td(t) / t
    assert cls.denominators == ((1,),)
    assert cls.numerator.coefficient((0,)) == YPoly((1, 1))
    assert cls.numerator.coefficient((1,)) == YPoly((F(1, 2), F(-1, 2)))
    assert cls.numerator.coefficient((2,)) == YPoly((F(1, 12), F(1, 12)))


def test_euler_class_of_singular_cone():
    d = cone_data([(0, 1), (-2, -1)])
    e = euler_class(d)
    assert e.degree() == 2
    assert e.evaluate((1, 0)) == 2 * F(-1, 2) * F(-1, 2)


def test_two_class_routes_agree(corpus):
    for name in ("segment2", "mult2_triangle", "mult3_triangle", "kite"):
        assert all(c.ok for c in hrr_check(corpus[name]))


def test_smooth_product_route(square2):
    for d in polytope_cone_data(square2):
        assert localized_hirzebruch(d, 5) == smooth_hirzebruch_product(d, 5)
        assert localized_hirzebruch_direct(d, 5) == smooth_hirzebruch_product(d, 5)


def test_todd_times_euler_smooth_is_product():
    d = cone_data([(1,)])
    s = todd_times_euler(d, 3)
    # t / (1 - e^{-t})
    assert [s.coefficient((k,)) for k in range(4)] == [1, F(1, 2), F(1, 12), 0]


@pytest.mark.parametrize("name", ["segment2", "mult2_triangle", "square2", "kite", "reeve2"])
def test_localization_matches_oracle(corpus, name):
    P = corpus[name]
    assert chi_equivariant(P).value == weighted_count_oracle(P)
    assert chi_equivariant(P, choice="canonical").value == len(interior_points(P))
    oracle, loc, ok = chi_y_face_formula(P)
    assert ok and oracle == loc


def test_structure_choice_counts_points(corpus):
    assert [chi_equivariant(corpus[n], choice="structure").value for n in ("std_triangle", "mult2_triangle", "square2", "reeve2")] == [3, 4, 9, 4]


def test_localization_series_has_no_poles(corpus):
    res = chi_equivariant(corpus["kite"], order=2)
    assert not res.series.negative_part()


def test_twisted_square(square):
    Q = make_summand([(0, 0), (1, 0)])
    assert chi_equivariant(square, twist=Q).value == YPoly((2, -2))


def test_orbit_closure_of_full_face_is_one(tri2):
    cls = orbit_closure_class(tri2, tri2.full_face)
    assert all(v == LaurentPoly.const(2, 1) for v in cls.values())


def test_global_class_check(square, tri2):
    rep = verify_global_hirzebruch(square)
    assert rep.ok and rep.group_size == 1 and (rep.n, rep.r) == (2, 4)
    rep = verify_global_hirzebruch(tri2)
    assert rep.ok and rep.max_deviation < 1e-20
    assert {r.surviving_elements for r in rep.records} <= {1, 2}


def test_sample_points_are_fixed():
    assert sample_points(2, 3) == [(F(3, 7), F(-5, 11)), (F(-1, 3), F(4, 9)), (F(5, 8), F(1, 6))]
    pts = sample_points(2, 24, avoid=[(1, 1)])
    assert all(a + b != 0 for a, b in pts)


def test_euler_class_at_singular_vertex(tri2):
    i = tri2.vertex_index((1, 0))
    t1, t2 = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
    assert euler_class(polytope_cone_data(tri2)[i]) == t1 * t1 * F(1, 2) - t1 * t2
