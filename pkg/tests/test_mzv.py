from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fpmap.core import compositions, stuffle
from fpmap.mzv import (AElement, BasisForm, HomogeneityViolation, IncompleteTable, ParseError,
                       WeightCapExceeded, a_mul, load_relation_table, parse_relation_table,
                       regularize, weight_components)

import mzv_numeric

Z3, Z5, Z7, Z53 = (3,), (5,), (7,), (5, 3)
ADMISSIBLE = [s for w in range(2, 9) for s in compositions(w) if s[0] >= 2]


def z(*s):
    return AElement.zeta(*s)


def test_regularize_examples():
    assert regularize((3, 1)) == {(3, 1): 1}
    assert regularize((1,)) == {}
    assert regularize((1, 2)) == {(2, 1): -1, (3,): -1}
    assert regularize(()) == {(): 1}
    with pytest.raises(ValueError):
        regularize((2, 0))


def test_regularization_is_stuffle_compatible():
    # zeta*(1) = 0 and zeta*(1) zeta(s) = sum over stuffle((1,), s)
    for s in [(2,), (3,), (2, 1), (3, 2)]:
        prod = AElement()
        for w, c in stuffle((1,), s).items():
            prod = prod + c * AElement(regularize(w))
        assert prod == 0


def test_a_mul_example():
    assert a_mul(z(2), z(3)) == z(2, 3) + z(3, 2) + z(5)
    assert z(2) * 3 == AElement({(2,): 3})
    assert (z(2) * 1) + 0 == z(2)
    with pytest.raises(ValueError):
        AElement({(1, 2): 1})


def test_weight_components():
    x = z(3) + z(2, 1) * Fraction(1, 2) + 5 + z(5, 3)
    comps = weight_components(x)
    assert sorted(comps) == [0, 3, 8]
    assert comps[3] == z(3) + z(2, 1) * Fraction(1, 2)
    assert sum(comps.values(), AElement()) == x


def test_table_shape(table):
    assert table.weight_cap == 8
    assert sorted(table.generators) == sorted([Z3, Z5, Z7, Z53])
    assert table.dims == {2: 0, 3: 1, 4: 0, 5: 1, 6: 1, 7: 1, 8: 2}
    assert table.monomials(8) == [((5, 3),), ((3,), (5,))]
    assert table.monomials(6) == [((3,), (3,))]


def test_to_basis_examples(table):
    assert table.to_basis(z(2, 1)) == BasisForm({(Z3,): 1})
    assert table.to_basis(z(2)) == BasisForm()
    assert table.to_basis(z(4, 1)) == BasisForm({(Z5,): 2})
    assert table.to_basis(z(3) * z(3)) == BasisForm({(Z3, Z3): 1})
    assert table.to_basis(z(5, 3)) == BasisForm({(Z53,): 1})
    with pytest.raises(WeightCapExceeded):
        table.to_basis(z(9))


def test_ring_map_exhaustive(table):
    words = [s for s in ADMISSIBLE if sum(s) <= 6]
    for a in words:
        for b in words:
            if sum(a) + sum(b) <= 8:
                lhs = table.to_basis(a_mul(z(*a), z(*b)))
                assert lhs == table.to_basis(z(*a)) * table.to_basis(z(*b)), (a, b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([s for s in ADMISSIBLE if sum(s) <= 4]),
                          st.fractions(max_denominator=7)), max_size=3),
       st.lists(st.tuples(st.sampled_from([s for s in ADMISSIBLE if sum(s) <= 4]),
                          st.fractions(max_denominator=7)), max_size=3))
def test_ring_map_linear_combinations(xs, ys):
    t = load_relation_table()
    x = sum((c * z(*s) for s, c in xs), AElement())
    y = sum((c * z(*s) for s, c in ys), AElement())
    assert t.to_basis(x * y) == t.to_basis(x) * t.to_basis(y)
    assert t.to_basis(x + y) == t.to_basis(x) + t.to_basis(y)


def test_from_basis_round_trip(table):
    b = BasisForm({(Z3, Z5): Fraction(2, 3), (Z53,): -1, (): 4})
    assert table.to_basis(table.from_basis(b)) == b


def test_serialize_round_trip(table):
    text = table.serialize()
    again = parse_relation_table(text)
    assert again.reductions == table.reductions
    assert again.serialize() == text


def _bad(text, entry, replacement):
    assert entry in text
    return text.replace(entry, replacement)


def test_table_errors(table):
    text = table.serialize()
    with pytest.raises(IncompleteTable):
        parse_relation_table(_bad(text, "(2,1) = 1 * z(3)\n", ""))
    with pytest.raises(HomogeneityViolation):
        parse_relation_table(_bad(text, "(2,1) = 1 * z(3)", "(2,1) = 1 * z(5)"))
    with pytest.raises(HomogeneityViolation):
        parse_relation_table(_bad(text, "(2) = 0", "(2) = 1"))
    with pytest.raises(HomogeneityViolation):
        parse_relation_table(_bad(text, "g 3 (3)", "g 4 (3)"))
    with pytest.raises(ParseError):
        parse_relation_table(_bad(text, "(2,1) = 1 * z(3)", "(2,1) = 1 * w(3)"))
    with pytest.raises(ParseError):
        parse_relation_table(text.replace("basis W=8\n", ""))
    with pytest.raises(IncompleteTable):
        parse_relation_table(_bad(text, "dim 8 2", "dim 8 3"))


def test_small_cap_table(table):
    lines = [ln for ln in table.serialize().splitlines()
             if not ln.startswith("(") or sum(int(x) for x in ln[1:ln.index(")")].split(",")) <= 5]
    text = "\n".join(ln for ln in lines if not ln.startswith(("dim 6", "dim 7", "dim 8")))
    small = parse_relation_table(text.replace("W=8", "W=5"))
    assert small.weight_cap == 5
    with pytest.raises(WeightCapExceeded):
        small.reduce_word((3, 3))


@pytest.mark.parametrize("s", [s for s in ADMISSIBLE if sum(s) <= 5])
def test_numeric_low_weight(table, s):
    assert mzv_numeric.certify_word(table, s)


def test_numeric_detects_corruption(table):
    text = table.serialize().replace("(4,1) = 2 * z(5)", "(4,1) = 3 * z(5)")
    assert not mzv_numeric.certify_word(parse_relation_table(text), (4, 1))


@pytest.mark.certify
@pytest.mark.parametrize("s", [s for s in ADMISSIBLE if sum(s) >= 6])
def test_numeric_full_table(table, s):
    assert mzv_numeric.certify_word(table, s)
