from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fpmap.mzv import AElement, load_relation_table
from fpmap.series import INF, ASeries, NotAUnit, filtration_degree, ser_inv

WORDS = [(), (2,), (3,), (2, 1), (4,)]

coeff = st.builds(lambda parts: sum((c * AElement.zeta(*w) if w else AElement.const(c)
                                     for w, c in parts), AElement()),
                  st.lists(st.tuples(st.sampled_from(WORDS),
                                     st.fractions(min_value=-3, max_value=3, max_denominator=4)),
                           max_size=2))
series = st.builds(lambda cs, lo, order: ASeries({lo + i: c for i, c in enumerate(cs)}, order),
                   st.lists(coeff, max_size=4), st.integers(-2, 1), st.integers(2, 5))


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    # distributivity holds up to the truncation order of both sides
    lhs, rhs = x * (y + z), x * y + x * z
    n = min(lhs.order, rhs.order)
    assert lhs.truncate(n) == rhs.truncate(n)
    assert x - x == ASeries({}, x.order)
    assert x * 1 == x


@settings(max_examples=60, deadline=None)
@given(series, st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool),
       st.integers(-2, 2))
def test_inverse_property(x, c, k):
    lo = x.min_degree if x.coeffs else 0
    u = ASeries.monomial(c, k, INF) + x.shift(k + 1 - lo)
    inv = ser_inv(u)
    prod = u * inv
    assert prod == ASeries.const(1, prod.order)
    assert prod.order == u.order - k


def test_inverse_examples():
    one_minus_t = ASeries({0: 1, 1: -1}, 5)
    assert ser_inv(one_minus_t) == ASeries({d: 1 for d in range(5)}, 5)
    assert ser_inv(ASeries.monomial(Fraction(2), -3)) == ASeries.monomial(Fraction(1, 2), 3)
    with pytest.raises(NotAUnit):
        ser_inv(ASeries({}, 4))
    with pytest.raises(NotAUnit):
        ser_inv(ASeries({0: AElement.zeta(3)}, 4))
    with pytest.raises(ValueError):
        ser_inv(ASeries({0: 1, 1: 1}))
    assert ASeries({0: 2}, 3) ** -2 == ASeries.const(Fraction(1, 4), 3)


def test_truncation_sentinel():
    x = ASeries({0: 1, 3: 5}, 3)
    assert x.coeffs == {0: AElement.const(1)}
    assert x.coeff(2) == 0
    with pytest.raises(ValueError):
        x.coeff(3)
    y = ASeries({1: 1}, INF)
    assert (x * y).order == 4
    assert (x + y).order == 3
    assert x.shift(-2).order == 1


def test_filtration_degree(table):
    assert filtration_degree(ASeries({0: AElement.zeta(2), 2: AElement.zeta(3)}, 4), table) == 2
    assert filtration_degree(ASeries({1: AElement.zeta(2, 1) - AElement.zeta(3)}, 4), table) == INF
    assert filtration_degree(ASeries({-1: 1}, 4), table) == -1


def test_reduce_and_equals(table):
    x = ASeries({0: AElement.zeta(2, 1), 1: AElement.zeta(4)}, 3)
    y = ASeries({0: AElement.zeta(3)}, 5)
    assert x.equals(y, table)
    assert not x.equals(y + ASeries.monomial(AElement.zeta(5), 2), table)
    assert x.equals(y + ASeries.monomial(AElement.zeta(5), 2), table, order=2)
    assert x.reduce(load_relation_table()) == y.reduce(table)
