from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heatjet import kernels
from heatjet.combinatorics import multi_indices
from heatjet.jet import Jet, coordinate, dot, monomial, radius_squared_power
from oracles import naive_mul, naive_partial

D, N = 2, 5


def jets(d=D, order=N, max_terms=6, nonzero_constant=False):
    exps = st.sampled_from([a for t in range(order + 1) for a in multi_indices(d, t)])
    coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=5)
    table = st.dictionaries(exps, coeffs, max_size=max_terms)
    if nonzero_constant:
        table = st.tuples(table, coeffs.filter(bool)).map(lambda t: {**t[0], (0,) * d: t[1]})
    return table.map(lambda t: Jet(d, order, t))


def x(i, d=D, order=N):
    return coordinate(d, order, i)


class TestConstruction:
    def test_monomial(self):
        assert monomial(2, 4, (2, 0)) == x(0, 2, 4) * x(0, 2, 4)
        assert monomial(1, 2, (0,), 5) == Jet.constant(1, 2, 5)
        j = monomial(3, 6, (1, 1, 1), F(-1, 2))
        assert j.coefficients() == {(1, 1, 1): F(-1, 2)}

    def test_monomial_too_high(self):
        with pytest.raises(ValueError):
            monomial(2, 3, (2, 2))

    def test_no_stored_zeros(self):
        j = Jet(2, 3, {(1, 0): 0, (0, 1): F(1, 2)})
        assert j.coefficients() == {(0, 1): F(1, 2)}
        assert len(x(0) * 0) == 0

    def test_value_at_origin(self):
        assert (3 + x(0)).value_at_origin() == 3
        assert (x(0) * x(0)).value_at_origin() == 0
        assert Jet.zero(2, 3).value_at_origin() == 0

    def test_str(self):
        assert str(1 - x(0) * x(0)) == "1 - x1^2"
        assert str(Jet.zero(1, 1)) == "0"


class TestRing:
    def test_examples(self, backend):
        a = Jet(1, 2, {(0,): 1, (1,): 1})
        b = Jet(1, 2, {(0,): 1, (1,): -1})
        assert a * b == Jet(1, 2, {(0,): 1, (2,): -1})
        xn = monomial(1, 4, (4,))
        assert xn * monomial(1, 4, (1,)) == Jet.zero(1, 4)
        s = monomial(2, 3, (2, 0)) + monomial(2, 3, (2, 0), -1)
        assert s == Jet.zero(2, 3) and len(s) == 0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            Jet.zero(2, 3) + Jet.zero(2, 4)
        with pytest.raises(ValueError):
            Jet.zero(2, 3) * Jet.zero(3, 3)

    @given(jets(), jets())
    def test_mul_matches_naive(self, a, b):
        assert (a * b).coefficients() == naive_mul(a.coefficients(), b.coefficients(), N)

    @given(jets(d=3, order=6, max_terms=10), jets(d=3, order=6, max_terms=10))
    def test_backends_agree(self, a, b):
        results = []
        previous = kernels.backend_name()
        try:
            for name in kernels.available_backends():
                kernels.use_backend(name)
                results.append(a * b)
        finally:
            kernels.use_backend(previous)
        assert all(r == results[0] for r in results)

    @given(jets(), jets(), jets())
    def test_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + b == b + a
        assert a - a == Jet.zero(D, N)

    @given(jets(), jets(), jets(), jets())
    def test_dot(self, a, b, c, e):
        assert dot([(a, b), (c, e)]) == a * b + c * e

    @given(jets(), jets(), st.integers(0, N))
    def test_truncation_consistency(self, a, b, m):
        lhs = (a * b + a * a * b).truncate(m)
        at, bt = a.truncate(m), b.truncate(m)
        assert lhs == at * bt + at * at * bt

    def test_pow(self):
        y = 1 + x(0)
        assert y**3 == y * y * y
        assert y**0 == Jet.constant(D, N, 1)


class TestCalculus:
    def test_examples(self):
        d3 = lambda *e: monomial(2, 4, e)
        assert d3(2, 1).partial(0) == monomial(2, 4, (1, 1), 2)
        assert d3(2, 0).partial(1) == Jet.zero(2, 4)
        assert monomial(1, 4, (4,)).partial(0) == monomial(1, 4, (3,), 4)

    def test_axis_range(self):
        with pytest.raises(IndexError):
            x(0).partial(2)

    @given(jets())
    def test_partial_matches_naive(self, a):
        for i in range(D):
            assert a.partial(i).coefficients() == naive_partial(a.coefficients(), i)

    @given(jets(d=3, order=5))
    def test_partials_commute(self, a):
        for i in range(3):
            for j in range(3):
                assert a.partial(i).partial(j) == a.partial(j).partial(i)


class TestInversion:
    def test_geometric_series(self, backend):
        t = coordinate(1, 2, 0)
        assert (1 - t).reciprocal() == 1 + t + t * t
        assert Jet.constant(1, 3, 2).reciprocal() == F(1, 2)
        u = coordinate(1, 4, 0)
        assert (1 + u * u).reciprocal() == 1 - u**2 + u**4

    def test_inv_sqrt_examples(self, backend):
        assert Jet.constant(2, 5, 1).inv_sqrt() == 1
        t = coordinate(1, 2, 0)
        assert (1 + t).inv_sqrt() == 1 - t.scale(F(1, 2)) + (t * t).scale(F(3, 8))

    def test_errors(self):
        with pytest.raises(ZeroDivisionError):
            x(0).reciprocal()
        with pytest.raises(ValueError):
            (2 + x(0)).inv_sqrt()

    @given(jets(nonzero_constant=True))
    def test_reciprocal(self, a):
        assert a * a.reciprocal() == 1

    @given(jets(d=3, order=6, max_terms=8))
    def test_inv_sqrt(self, a):
        a = a - a.value_at_origin() + 1
        b = a.inv_sqrt()
        assert b * b * a == 1

    def test_inv_sqrt_any_order(self):
        for order in range(0, 9):
            a = 1 + coordinate(2, order, 0) if order else Jet.constant(2, 0, 1)
            b = a.inv_sqrt()
            assert b * b * a == 1


@pytest.mark.parametrize(
    "d, j, expected",
    [
        (3, 0, {(0, 0, 0): 1}),
        (2, 1, {(2, 0): 1, (0, 2): 1}),
        (2, 2, {(4, 0): 1, (2, 2): 2, (0, 4): 1}),
    ],
)
def test_radius_squared_power(d, j, expected):
    assert radius_squared_power(d, 6, j).coefficients() == expected


def test_radius_squared_power_too_high():
    with pytest.raises(ValueError):
        radius_squared_power(2, 3, 2)


def test_functional_forms():
    from heatjet.jet import add, mul, partial_derivative, scale

    a = Jet(1, 2, {(0,): 1, (1,): 1})
    b = Jet(1, 2, {(0,): 1, (1,): -1})
    assert mul(a, b) == 1 - coordinate(1, 2, 0) ** 2
    assert add(a, b) == 2
    assert scale(a, F(1, 2)) == Jet(1, 2, {(0,): F(1, 2), (1,): F(1, 2)})
    with pytest.raises(ValueError):
        add(a, Jet.zero(1, 3))
    # printed variables are x1..xd, so the axis is 1-based here
    assert partial_derivative(monomial(2, 4, (2, 1)), 1) == monomial(2, 4, (1, 1), 2)
    assert partial_derivative(monomial(2, 4, (2, 0)), 2) == 0
    with pytest.raises(IndexError):
        partial_derivative(a, 0)
