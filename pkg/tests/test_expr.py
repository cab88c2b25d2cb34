from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fpmap.core import valuation
from fpmap.expr import (Add, Apery, BinomPP, FactProd, Hp, Hpoly, Mul, Neg, Num, P, ParseError,
                        Pow, SumExpr, evaluate, expand, lift, parse, to_text)
from fpmap.mhs import MHSSeries
from fpmap.mzv import BasisForm

from cases import SHIFTED_INVERSE, FOURTH_POWER, NESTED, series_value_mod

SUITE = [
    "Hp(1,3,2)",
    "apery()",
    "HpolyPr([1,-2,2],(1,2))",
    "Hpoly([0,2],(1))",
    "sum(n,1,-3,BINp(0)^2*inv(n+1)*inv(n+2))",
    "sum(n,1,-1,BINp(0)^4) + 2",
    "sum(n,1,p-1,BINp(0)^2*sum(m,1,n,BINpn(0)))",
    "sum(n,1,-1,BINp(-1)^2*BINpn(-1)^2)",
    "sum(n,2,-2,3/2*pow(n,2)*pow(p,1)*BINp(0)^2)",
    "sum(n,1,-2,inv(n)*sum(m,1,n-1,BINp(0)^2*inv(m+1)))",
    "binom_pp(2,1) - 2",
    "fact_prod((1,5),(2,-4),(3,1))",
    "2 + p^4*Hp(4) - 4*p^5*Hp(4,1)",
    "(Hp(1) + p)^2 / (1 - p)",
    "-(1 + p*Hp(2))^-1 * p^3",
    "1 - -2",
    "-(p - 1) * (2 - p)",
    "Hp(1)/(p*(2 + p*Hp(2)))",
]


@pytest.mark.parametrize("text", SUITE)
def test_round_trip(text):
    e = parse(text)
    assert parse(to_text(e)) == e
    assert to_text(parse(to_text(e))) == to_text(e)


def test_parse_structure():
    assert parse("p^2") == Pow(P(), 2)
    # literals fold, so a negated or fractional constant is a single Num
    assert parse("-3") == Num(Fraction(-3))
    assert parse("-(1/2)") == Num(Fraction(-1, 2))
    assert parse("-p") == Neg(P())
    assert parse("1/2*Hp(3)") == Mul(parse("1/2"), Hp((3,)))
    assert parse("HpolyPr([1,-2,2],(1,2))") == Hpoly((1, -2, 2), (1, 2), True)
    assert parse("Hpoly([0,1],(1))") == Hpoly((0, 1), (1,), False)
    assert parse("binom_pp(3, 1)") == BinomPP(3, 1)
    assert parse("fact_prod((2,1),(1,-2))") == FactProd(((2, 1), (1, -2)))
    assert parse("apery()") == Apery()
    assert parse("1 + p\n  + p^2") == Add(Add(Num(Fraction(1)), P()), Pow(P(), 2))
    assert parse("sum(n,1,-1,BINp(0)^4)") == SumExpr(FOURTH_POWER)
    assert parse("sum(n,1,-3,BINp(0)^2*inv(n+1)*inv(n+2))") == SumExpr(SHIFTED_INVERSE)
    assert parse("sum(n,1,-1,BINp(0)^2*sum(m,1,n,BINpn(0)))") == SumExpr(NESTED)


@pytest.mark.parametrize("text,line,col", [
    ("Hp(1,", 1, 6),
    ("Hp(1) +", 1, 8),
    ("1 +\n  $", 2, 3),
    ("foo(1)", 1, 1),
    ("sum(n,1,-1,BINp(0)^4", 1, 21),
    ("sum(n,1,-1,inv(m+1))", 1, 16),
    ("p^x", 1, 3),
    ("(1 + 2", 1, 7),
])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.col) == (line, col), str(info.value)


def test_expand_and_evaluate_agree():
    for text in SUITE:
        if "Hpoly(" in text:
            continue  # unrestricted sums carry p in denominators; covered in test_poly
        e = parse(text)
        m = expand(e, 5)
        for p in (11, 13):
            approx = series_value_mod(m, p, 5)
            assert valuation(evaluate(e, p) - approx, p) >= 5, (text, p)


def test_expand_examples(table):
    assert expand(parse("p^2 * (1 + p)^-1"), 5) == MHSSeries({(2, ()): 1, (3, ()): -1, (4, ()): 1}, 5)
    assert expand(parse("binom_pp(1,1)"), 4) == MHSSeries.const(1, 4)
    # the shifted-inverse sum leads with -11/8 p^2
    e = parse("sum(n,1,-3,BINp(0)^2*inv(n+1)*inv(n+2))")
    assert lift(e, 3).reduce(table) == {2: BasisForm({(): Fraction(-11, 8)})}
    with pytest.raises(ZeroDivisionError):
        expand(parse("1/(p - p)"), 3)
    # H_{p-1}(2) is divisible by p, so it is not a unit
    with pytest.raises(ValueError):
        expand(parse("1/Hp(2)"), 3)


def test_evaluate_examples():
    assert evaluate(parse("binom_pp(2,1)"), 5) == 252
    assert evaluate(parse("fact_prod((2,1),(1,-2))"), 3) == 20
    assert evaluate(parse("Hp(1)"), 5) == Fraction(25, 12)
    assert evaluate(parse("apery()"), 2) == 1 + 1 * 4


@settings(max_examples=50, deadline=None)
@given(st.recursive(
    st.one_of(st.fractions(min_value=-9, max_value=9, max_denominator=9).map(Num),
              st.just(P()), st.sampled_from([Hp((1,)), Hp((2, 1)), BinomPP(2, 1)])),
    lambda inner: st.one_of(
        st.builds(Add, inner, inner), st.builds(Mul, inner, inner), st.builds(Neg, inner),
        st.builds(Pow, inner, st.integers(0, 3))),
    max_leaves=6))
def test_round_trip_property(e):
    x = parse(to_text(e))
    assert parse(to_text(x)) == x
