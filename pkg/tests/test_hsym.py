from fractions import Fraction

from hypothesis import given, strategies as st

from fpmap.core import mhs_eval
from fpmap.hsym import normalize, partial_fractions, peel, peel_threshold, poly_shift, rat_mul

rats = st.lists(st.tuples(st.integers(-3, 3), st.integers(-2, 3).filter(bool)), max_size=3).map(
    lambda pairs: rat_mul((), tuple(sorted(dict(pairs).items()))))
comps = st.lists(st.integers(1, 3), max_size=3).map(tuple)


def rat_value(rat, x):
    v = Fraction(1)
    for j, a in rat:
        v *= Fraction(x + j) ** (-a)
    return v


def test_rat_mul_cancels():
    assert rat_mul(((1, 2),), ((1, -2), (3, 1))) == ((3, 1),)


def test_partial_fractions_example():
    # 1/(X(X+1)) = 1/X - 1/(X+1)
    assert partial_fractions(((0, 1), (1, 1))) == ((0, 1, 1), (1, 1, -1))
    # (X+2)/X = 1 + 2/X
    assert sorted(partial_fractions(((0, 1), (2, -1)))) == [(0, 0, 1), (0, 1, 2)]


@given(rats, st.integers(10, 40))
def test_partial_fractions_evaluate(rat, x):
    pf = partial_fractions(rat)
    total = sum((c * (Fraction(x) ** (-a) if j == 0 and a <= 0 else Fraction(x + j) ** (-a))
                 for j, a, c in pf), Fraction(0))
    assert total == rat_value(rat, x)


@given(comps, st.integers(-4, 3), st.integers(0, 12))
def test_peel_identity(s, delta, extra):
    X = peel_threshold(delta) + extra
    rhs = sum(c * rat_value(rat, X) * mhs_eval(X - 1, t) for c, rat, t in peel(s, delta))
    assert rhs == mhs_eval(X + delta, s)


@given(st.lists(st.integers(-2, 3), min_size=1, max_size=3).map(tuple), st.integers(0, 15))
def test_normalize_identity(s, N):
    rhs = sum(c * Fraction(N) ** d * mhs_eval(N, t) for c, d, t in normalize(s))
    assert rhs == mhs_eval(N, s)
    assert all(min(t, default=1) >= 1 for _, _, t in normalize(s))


def test_poly_shift():
    # (X+1)^2 at X+2 is X^2 + 6X + 9
    assert poly_shift([1, 2, 1], 2) == [9, 6, 1]
