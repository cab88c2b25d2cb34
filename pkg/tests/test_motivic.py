from fractions import Fraction
from math import comb

import pytest

from fpmap.core import mhs_eval_mod, stuffle, valuation
from fpmap.mhs import MHSSeries
from fpmap.motivic import (UnbalancedSpec, binomial_mhs, diagonal_embed, factorial_product_mhs,
                           mhs_series_lift, motivic_binomial, motivic_c, motivic_factorial_product,
                           motivic_mhs, zeta_to_mhs)
from fpmap.mzv import AElement, BasisForm, WeightCapExceeded
from fpmap.series import ASeries

from cases import CENTRAL_BINOMIAL, H132_LIFT, FOURTH_POWER_LIFT

SMALL = [(1,), (2,), (3,), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 1, 1), (1, 3), (4,),
         (1, 1, 2), (2, 1, 1), (5,), (1, 4)]


def test_depth1_coefficients(table):
    for n in range(1, 6):
        red = motivic_mhs((n,), 9 - n).reduce(table)
        for k in range(0, 9 - n):
            want = BasisForm() if k == 0 else table.to_basis(
                AElement.zeta(n + k) * ((-1) ** n * comb(n + k - 1, n - 1)))
            assert red.get(k, BasisForm()) == want, (n, k)


def test_h132_golden(table):
    assert motivic_mhs((1, 3, 2), 3).reduce(table) == H132_LIFT


def test_empty_composition():
    assert motivic_mhs((), 5) == ASeries.const(1, 5)
    with pytest.raises(ValueError):
        motivic_mhs((0, 1), 3)


def test_lift_is_stuffle_homomorphism(table):
    for a in SMALL:
        for b in SMALL:
            w = sum(a) + sum(b)
            if w > 6:
                continue
            order = 9 - w
            lhs = motivic_mhs(a, order) * motivic_mhs(b, order)
            rhs = ASeries({}, order)
            for s, c in stuffle(a, b).items():
                rhs = rhs + motivic_mhs(s, order) * c
            assert lhs.equals(rhs, table), (a, b)


def test_mhs_series_lift_examples(table):
    fourth = MHSSeries.from_list([(2, 0, ()), (1, 4, (4,)), (-4, 5, (4, 1))], 6)
    assert fourth and mhs_series_lift(fourth).reduce(table) == {
        d: c for d, c in FOURTH_POWER_LIFT.items() if d < 6}
    assert mhs_series_lift(MHSSeries({}, 5)) == ASeries({}, 5)
    binomial_series = MHSSeries.from_list([(2, 0, ())] + [(2, n, (1,) * n) for n in range(1, 8)], 8)
    assert mhs_series_lift(binomial_series).reduce(table) == CENTRAL_BINOMIAL
    with pytest.raises(ValueError):
        mhs_series_lift(MHSSeries.H(3))


def test_binomial(table):
    assert motivic_binomial(2, 1, 8).reduce(table) == CENTRAL_BINOMIAL
    assert motivic_binomial(5, 0, 6) == ASeries.const(1, 6)
    assert motivic_binomial(1, 1, 6).reduce(table) == {0: BasisForm({(): 1})}
    for k, r in [(3, 1), (3, 2), (4, 2)]:
        lifted = mhs_series_lift(binomial_mhs(k, r, 6))
        assert lifted.equals(motivic_binomial(k, r, 6), table)
    with pytest.raises(ValueError):
        motivic_binomial(1, 2, 4)


def test_motivic_c(table):
    assert motivic_c(1, 6).reduce(table) == {0: BasisForm({(): 1})}
    assert motivic_c(2, 8).equals(motivic_binomial(2, 1, 8), table)
    assert motivic_c(3, 5).coeff(0) == 3
    with pytest.raises(ValueError):
        motivic_c(0, 3)


def test_factorial_product(table):
    assert motivic_factorial_product(((2, 1), (1, -2)), 8).equals(motivic_binomial(2, 1, 8), table)
    assert motivic_factorial_product(((1, 1), (1, -1)), 6) == ASeries.const(1, 6)
    granville = motivic_factorial_product(((1, 5), (2, -4), (3, 1)), 6)
    assert granville.coeff(0) == Fraction(3, 8)
    assert mhs_series_lift(factorial_product_mhs(((1, 5), (2, -4), (3, 1)), 6)).equals(
        granville, table)
    with pytest.raises(UnbalancedSpec):
        motivic_factorial_product(((2, 1), (1, -1)), 4)
    with pytest.raises(ValueError):
        motivic_factorial_product(((0, 1),), 4)


def test_zeta_to_mhs_round_trip(table):
    for s, order in [((3,), 4), ((5,), 4), ((3,), 6), ((5, 3), 1), ((7,), 2)]:
        m = zeta_to_mhs(s, order, table)
        want = {0: table.to_basis(AElement.zeta(*s))}
        assert mhs_series_lift(m).reduce(table) == want, s
    assert zeta_to_mhs((2,), 4, table) == MHSSeries({}, 4)
    with pytest.raises(WeightCapExceeded):
        zeta_to_mhs((5,), 5, table)
    with pytest.raises(ValueError):
        zeta_to_mhs((1, 2), 2, table)


def test_zeta3_representative(table):
    m = zeta_to_mhs((3,), 4, table)
    assert m == MHSSeries({(0, (1, 2)): Fraction(-1, 3), (2, (1, 4)): Fraction(-1, 30),
                           (3, (1, 1, 4)): Fraction(1, 5)}, 4)


def _value_mod(m, p, prec):
    return sum(c * Fraction(p) ** b * mhs_eval_mod(p - 1, s, p, prec) for c, b, s in m)


def test_zeta_to_mhs_representatives_agree_numerically(table):
    """Different free-variable choices give p-adically congruent sums."""
    order = 4
    a = zeta_to_mhs((3,), order, table)
    b = zeta_to_mhs((3,), order, table, column_key=lambda t: (-len(t), tuple(-x for x in t)))
    assert a != b
    for p in (11, 13, 17, 19, 23):
        assert valuation(_value_mod(a, p, order + 2) - _value_mod(b, p, order + 2), p) >= order


def test_diagonal_embed(table):
    z3, z5 = AElement.zeta(3), AElement.zeta(5)
    assert diagonal_embed(z3, 6) == ASeries.monomial(z3, 3, 6)
    assert diagonal_embed(AElement.const(1), 6) == ASeries.const(1, 6)
    assert diagonal_embed(z3 + z5, 8) == ASeries({3: z3, 5: z5}, 8)
    bf = BasisForm({((3,), (5,)): 2})
    assert diagonal_embed(bf, 9, table).reduce(table) == {8: bf}
    with pytest.raises(ValueError):
        diagonal_embed(bf, 9)
