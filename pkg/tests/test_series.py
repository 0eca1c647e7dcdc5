from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from schurzeta.series import (MultiSeries, SeriesError, divide_by_corner_product, exp_minus_one, exp_series,
                              one_minus_exp_neg, series_add, series_mul, substitute, unit_inverse)


def coeffs(s):
    return list(s.coeffs)


def test_product_and_identity():
    a = MultiSeries.univariate([1, 1, 0])
    b = MultiSeries.univariate([1, -1, 0])
    assert coeffs(series_mul(a, b)) == [1, 0, -1]
    zero = MultiSeries.univariate([0, 0, 0])
    assert coeffs(series_add(a, zero)) == coeffs(a)


def test_exp_square():
    e = exp_series(3)
    assert coeffs(series_mul(e, e)) == [1, 2, 2, F(4, 3)]
    assert coeffs(exp_series(3, scale=2)) == [1, 2, 2, F(4, 3)]


def test_one_minus_exp_neg():
    assert coeffs(one_minus_exp_neg(1)) == [0, 1]
    assert coeffs(one_minus_exp_neg(3)) == [0, 1, F(-1, 2), F(1, 6)]
    assert coeffs(exp_minus_one(3)) == [0, 1, F(1, 2), F(1, 6)]


def test_substitute_examples():
    z = MultiSeries.univariate([0, 1, 0, 0])
    z2 = MultiSeries.univariate([0, 0, 1, 0])
    assert coeffs(substitute(z2, [z])) == [0, 0, 1, 0]
    assert coeffs(substitute(z, [one_minus_exp_neg(3)])) == [0, 1, F(-1, 2), F(1, 6)]
    assert coeffs(substitute(z2, [one_minus_exp_neg(3)])) == [0, 0, 1, -1]


def test_substitute_rejects_constant_term():
    with pytest.raises(SeriesError):
        substitute(MultiSeries.univariate([0, 1]), [MultiSeries.univariate([1, 1])])


def test_substitute_exp_of_log():
    # 1 - e^{-z} composed into -log(1 - w) gives z
    minus_log = MultiSeries.univariate([0] + [F(1, n) for n in range(1, 8)])
    assert coeffs(substitute(minus_log, [one_minus_exp_neg(7)])) == [0, 1, 0, 0, 0, 0, 0, 0]


def test_divide_trivial_bivariate():
    num = MultiSeries.from_dict(("x", "y"), (2, 2), {(1, 1): 1})
    q = divide_by_corner_product(num, [MultiSeries.univariate([0, 1, 0], "x"), MultiSeries.univariate([0, 1, 0], "y")])
    assert q.to_dict() == {(0, 0): 1}


def test_divide_univariate_example():
    # (z - z^2) / (z - z^2/2 + z^3/6): the z^2 coefficient is -5/12 by unit inversion
    q = divide_by_corner_product(MultiSeries.univariate([0, 1, -1, 0]), [one_minus_exp_neg(3)])
    assert coeffs(q) == [1, F(-1, 2), F(-5, 12)]
    back = series_mul(q, MultiSeries.univariate([1, F(-1, 2), F(1, 6)]))
    assert coeffs(back) == [1, -1, 0]


def test_divide_requires_divisibility():
    num = MultiSeries.from_dict(("x", "y"), (2, 2), {(1, 1): 1, (0, 2): 1})
    dens = [one_minus_exp_neg(2, "x"), one_minus_exp_neg(2, "y")]
    with pytest.raises(SeriesError, match="y|x"):
        divide_by_corner_product(num, dens)


def test_variable_mismatch():
    with pytest.raises(SeriesError):
        series_add(MultiSeries.univariate([1], "x"), MultiSeries.univariate([1], "y"))


@given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=8).filter(lambda u: u[0] != 0))
def test_unit_inverse_property(u):
    order = len(u) + 2
    inv = unit_inverse(u, order)
    prod = series_mul(MultiSeries.univariate(u + [0] * (order + 1 - len(u))), MultiSeries.univariate(inv))
    assert coeffs(prod) == [1] + [0] * order


def test_unit_inverse_needs_unit():
    with pytest.raises(SeriesError):
        unit_inverse([0, 1], 3)


def test_euler_derivative():
    s = MultiSeries.univariate([5, 1, 3, 2])
    assert coeffs(s.euler_derivative(0)) == [0, 1, 6, 6]
