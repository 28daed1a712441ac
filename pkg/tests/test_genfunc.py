from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from toric_em.classes import molien_check
from toric_em.errors import EvaluationPole
from toric_em.fan import cone_data
from toric_em.genfunc import (
    ConeRationalFunction,
    brion_assembly,
    brion_matches_polynomial,
    cone_genfun,
    evaluate_brion,
    molien_average,
    smooth_product_class,
    weighted_cone_class,
)
from toric_em.kernel import LaurentPoly, YPoly
from toric_em.kernel.linalg import det
from toric_em.polytope import build_polytope, enumerate_lattice_points, weighted_count_oracle


def test_rational_function_algebra():
    a = ConeRationalFunction(LaurentPoly.const(1, 1), [(1,)])
    b = ConeRationalFunction(LaurentPoly.monomial((1,)), [(1,)])
    # 1/(1-x) - x/(1-x) = 1
    diff = a + b * -1
    assert diff == ConeRationalFunction.polynomial(LaurentPoly.const(1, 1))


def test_closed_cone_genfun_numerator():
    d = cone_data([(0, 1), (-2, -1)])
    g = cone_genfun(d)
    assert set(g.numerator.terms) == {(0, 0), (-1, 1)}
    assert set(g.denominators) == {(-1, 2), (-1, 0)}


def test_smooth_weighted_class_is_product():
    d = cone_data([(1, 0), (0, 1)])
    assert weighted_cone_class(d) == smooth_product_class(d)


def test_smooth_product_fails_for_singular_cone():
    d = cone_data([(0, 1), (-2, -1)])
    assert not weighted_cone_class(d) == smooth_product_class(d)


@pytest.mark.parametrize("weighted", [False, True])
def test_brion_identity_on_corpus(corpus, weighted):
    for P in corpus.values():
        assert brion_matches_polynomial(P, weighted)


def test_brion_values(corpus):
    assert evaluate_brion(corpus["square2"]).value == 9
    assert evaluate_brion(corpus["mult2_triangle"], weighted=True).value == YPoly((4, 1))
    assert evaluate_brion(corpus["square2"], weighted=True).value == YPoly((9, 6, 1))


def test_higher_brion_coefficients_are_moments(seg2):
    # sum_{m=0}^{2} e^{s m xi}: coefficient of s^k is sum m^k xi^k / k!
    ev = evaluate_brion(seg2, order=2, xi=(1,))
    assert [ev.series.coeff(k) for k in range(3)] == [3, 3, F(5, 2)]


def test_no_surviving_poles(corpus):
    for P in corpus.values():
        for weighted in (False, True):
            ev = evaluate_brion(P, weighted, order=2)
            assert not ev.series.negative_part()


def test_brion_terms_are_shifted(tri2):
    terms = brion_assembly(tri2)
    assert [t.vertex for t in terms] == list(tri2.vertices)


def test_molien_matches_exact(tri2, reeve):
    for P in (tri2, reeve):
        assert all(c.ok for c in molien_check(P))


def test_molien_pole_is_reported():
    d = cone_data([(1, 0), (0, 1)])
    with pytest.raises((EvaluationPole, ZeroDivisionError)):
        molien_average(d, (0, F(1, 3)), 0)


coords = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=3))
def test_brion_counts_random_triangles(pts):
    a, b, c = pts
    assume(det([[b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]]]) != 0)
    P = build_polytope(pts)
    assert evaluate_brion(P).value == len(enumerate_lattice_points(P))
    assert evaluate_brion(P, weighted=True).value == weighted_count_oracle(P)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5))
def test_cone_data_group_order(a, b):
    assume(gcd(a, b) == 1)  # rays of a fan are primitive
    rays = [(1, 0), (-a, b)]
    d = cone_data(rays)
    assert d.mult == abs(det(rays)) == len(d.group)
    assert len(d.parallelepiped) == d.mult
