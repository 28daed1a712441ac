from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_em.errors import NonGenericDirection
from toric_em.genfunc import ConeRationalFunction
from toric_em.kernel import (
    LaurentPoly,
    TruncSeries,
    UniLaurentSeries,
    YPoly,
    bernoulli_todd_coeffs,
    compose_linear,
    generic_direction,
    laurent_substitute,
    monomials_of_degree,
    series_exp,
    smith_normal_form,
)
from toric_em.kernel.linalg import det, integer_inverse, inverse, matmul, nullspace, primitive
from toric_em.kernel.roots import RootOfUnity, numeric_context


def test_todd_coefficients():
    assert bernoulli_todd_coeffs(6) == [1, F(1, 2), F(1, 12), 0, F(-1, 720), 0, F(1, 30240)]


def test_exp_two_variables():
    s = series_exp([1, -1], 2)
    assert s.coefficient((1, 0)) == 1 and s.coefficient((0, 1)) == -1
    assert s.coefficient((1, 1)) == -1
    assert s.coefficient((2, 0)) == F(1, 2) == s.coefficient((0, 2))


def test_todd_series_times_its_inverse():
    td = compose_linear(bernoulli_todd_coeffs(5), [1, 2], 5)
    assert td * td.inverse() == TruncSeries.const(2, 5, 1)


def test_ypoly_arithmetic():
    assert YPoly.one_plus_y_pow(2) == YPoly((1, 2, 1))
    assert str(YPoly((4, 1))) == "4 + y"
    assert (YPoly((1, 1)) * YPoly((1, -1)))(3) == -8


def test_unilaurent_product_tracks_order():
    a = UniLaurentSeries(-1, [1, 2, 3], 1)
    b = UniLaurentSeries(0, [1, 1], 1)
    c = a * b
    assert c.low == -1 and c.order == 0
    assert [c.coeff(k) for k in (-1, 0)] == [1, 3]


def test_geometric_series_substitution():
    one = ConeRationalFunction(LaurentPoly.const(1, 1), [(1,)])
    # x -> e^{-s}: 1/(1 - e^{-s}) = 1/s + 1/2 + s/12 + ...
    neg = laurent_substitute(one, (-1,), 1)
    assert [neg.coeff(k) for k in (-1, 0, 1)] == [1, F(1, 2), F(1, 12)]
    pos = laurent_substitute(one, (1,), 1)
    assert [pos.coeff(k) for k in (-1, 0, 1)] == [-1, F(1, 2), F(-1, 12)]


def test_substitution_rejects_orthogonal_direction():
    g = ConeRationalFunction(LaurentPoly.const(2, 1), [(1, -1)])
    with pytest.raises(NonGenericDirection):
        laurent_substitute(g, (1, 1), 0)


def test_generic_direction_avoids_all_hyperplanes():
    ws = [(1, -2), (2, -1), (1, 0), (0, 1)]
    xi = generic_direction(ws, 2)
    assert all(sum(a * b for a, b in zip(w, xi)) != 0 for w in ws)


def test_graded_lex_order():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]


def test_root_of_unity_values():
    ctx = numeric_context()
    z = RootOfUnity(F(1, 4))
    assert abs(z.value(ctx) - 1j) < 1e-30
    assert z.inverse() == RootOfUnity(F(3, 4))


def test_primitive_and_inverse():
    assert primitive((F(-1, 2), 1)) == (-1, 2)
    m = [[2, 1], [1, 1]]
    assert matmul(m, inverse(m)) == [[1, 0], [0, 1]]
    assert nullspace([[1, 1, 0]]) and len(nullspace([[1, 1, 0]])) == 2


small = st.integers(-6, 6)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_form_properties(rows):
    d, p, q = smith_normal_form(rows)
    assert matmul(matmul(p, rows), q) == d
    assert abs(det(p)) == 1 and abs(det(q)) == 1
    diag = [d[i][i] for i in range(3)]
    assert all(d[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    assert integer_inverse(p) == [[int(x) for x in row] for row in inverse(p)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_exp_is_multiplicative(a, b):
    lhs = series_exp([x + y for x, y in zip(a, b)], 4)
    assert lhs == series_exp(a, 4) * series_exp(b, 4)


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-4, 4), max_size=5))
def test_poly_diff_is_linear_derivation(terms):
    f = LaurentPoly(2, terms)
    g = LaurentPoly(2, {(1, 0): 1, (0, 1): 2})
    assert (f * g).diff(0) == f.diff(0) * g + f * g.diff(0)
