"""Expansion cases shared by the unit, oracle and acceptance tests."""
from fractions import Fraction

from fpmap.core import primes_between
from fpmap.summand import Binom, Const, InvShift, PPow, Sum, VarPow

PRIMES = primes_between(7, 97)

FOURTH_POWER = Sum("n", 1, None, -1, (Binom("p", 0, 4),))
SHIFTED_INVERSE = Sum("n", 1, None, -3, (Binom("p", 0, 2), InvShift(1), InvShift(2)))
APERY = Sum("n", 1, None, -1, (Binom("p", -1, 2), Binom("pn", -1, 2)))
NESTED = Sum("n", 1, None, -1, (Binom("p", 0, 2), Sum("m", 1, "n", 0, (Binom("pn", 0, 1),))))

# (name, summand, order)
SUMMAND_CASES = [
    ("fourth_power", FOURTH_POWER, 6),
    ("fourth_power_long", FOURTH_POWER, 9),
    ("shifted_inverse", SHIFTED_INVERSE, 6),
    ("apery", APERY, 8),
    ("nested", NESTED, 7),
    ("inverse_square", Sum("n", 1, None, -1, (Binom("p", -1, 2), InvShift(0, 2))), 5),
    ("rising_over_n", Sum("n", 1, None, -1, (Binom("pn", 0, 1), InvShift(0, 1))), 5),
    ("powers", Sum("n", 2, None, -2, (Binom("p", 0, 2), VarPow(2), PPow(1),
                                      Const(Fraction(3, 2)))), 5),
    ("mixed_shift", Sum("n", 1, None, -1, (Binom("pn", -1, 1), Binom("p", -1, 2),
                                           InvShift(3, 1))), 5),
    ("nested_inverse", Sum("n", 1, None, -2, (InvShift(0, 1), Sum("m", 1, "n", -1, (
        Binom("p", 0, 2), InvShift(1, 1))))), 5),
]

# (coefficients lowest first, composition, p_restricted, order)
POLY_CASES = [
    ((1, -2, 2), (1, 2), True, 4),
    ((0, 2), (1,), True, 5),
    ((0, 3), (2,), True, 5),
    ((0, 2), (1, 1), True, 5),
    ((0, 2), (1, 1, 1), True, 4),
    ((-1, 2), (1, 2), True, 4),
    ((3, 0, 1), (1, 2), True, 3),
    ((0, 1), (3,), True, 4),
    ((0, 2), (1,), False, 5),
    ((1, 1), (2, 1), False, 4),
    ((0, 0, 1), (1,), False, 4),
    ((0, 3), (1, 1), False, 4),
]


def poly_value(f, p):
    return sum(c * p ** k for k, c in enumerate(f))


MONO = {"1": (), "z3": ((3,),), "z5": ((5,),), "z7": ((7,),), "z33": ((3,), (3,)),
        "z35": ((3,), (5,)), "z53": ((5, 3),)}


def golden(spec):
    """``{degree: {"z3": c, ...}}`` to the reduced form ``{degree: BasisForm}``."""
    from fpmap.mzv import BasisForm
    return {d: BasisForm({MONO[k]: Fraction(c) for k, c in terms.items()})
            for d, terms in spec.items()}


# lifts of binom(2p, p) and of the fourth-power sum, through T^7 and T^8
CENTRAL_BINOMIAL = golden({0: {"1": 2}, 3: {"z3": -4}, 5: {"z5": -12}, 6: {"z33": 4}, 7: {"z7": -36}})
FOURTH_POWER_LIFT = golden({0: {"1": 2}, 5: {"z5": -16}, 6: {"z33": -20}, 7: {"z7": -143},
                 8: {"z35": -456, "z53": Fraction(-696, 5)}})
APERY_LIFT = golden({0: {"1": 1}, 3: {"z3": 2}, 5: {"z5": -16}, 6: {"z33": 4},
                     7: {"z7": -100}})
NESTED_LIFT = golden({3: {"z3": 3}, 4: {"z3": 2}, 5: {"z3": -2, "z5": Fraction(53, 2)},
                      6: {"z3": 2, "z5": 17, "z33": Fraction(-1, 2)}})
H132_LIFT = golden({0: {"z33": Fraction(-9, 2)}, 1: {"z7": Fraction(67, 16)},
                    2: {"z53": 1, "z35": Fraction(23, 2)}})
HPOLY_LIFT = golden({0: {"z3": 6}, 1: {"z3": -10}, 2: {"z3": -4, "z5": 27},
                     3: {"z5": Fraction(-293, 3), "z33": 8}})


def series_value_mod(m, p, prec):
    """``sum c p^b H_{p-1}(s)`` modulo ``p^prec``, or None if some ``c`` has p in its denominator."""
    from fpmap.core import mhs_eval_mod
    total = Fraction(0)
    for c, b, s in m:
        if c.denominator % p == 0:
            return None
        if b < prec:
            total += c * Fraction(p) ** b * mhs_eval_mod(p - 1, s, p, prec - min(b, 0))
    return total
