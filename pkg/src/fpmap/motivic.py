"""Motivic lifts: harmonic sums, binomials of p-multiples, factorial products."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence, Tuple

from .core import Composition, pochhammer
from .mhs import MHSSeries
from .mzv import AElement, BasisForm, a_mul, regularize
from .series import ASeries, ser_inv


class UnbalancedSpec(ValueError):
    """A factorial product whose sum of n_i * b_i is not zero."""


def _compositions_bounded(k: int, total_max: int):
    """All k-tuples of nonnegative ints with sum <= total_max."""
    if k == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _compositions_bounded(k - 1, total_max - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _motivic_mhs(s: Composition, order: int) -> ASeries:
    k = len(s)
    coeffs: dict = {}
    for i in range(k + 1):
        sign = -1 if sum(s[:i]) % 2 else 1
        tail = AElement(regularize(s[i:]))
        if not tail:
            continue
        for ells in _compositions_bounded(i, order - 1):
            c = Fraction(sign)
            for sj, lj in zip(s, ells):
                c *= Fraction(pochhammer(sj, lj), factorial(lj))
            prefix = tuple(s[j] + ells[j] for j in range(i - 1, -1, -1))
            head = AElement(regularize(prefix))
            if not head:
                continue
            term = a_mul(head, tail) * c
            d = sum(ells)
            coeffs[d] = coeffs[d] + term if d in coeffs else term
    return ASeries(coeffs, order)


def motivic_mhs(s: Sequence[int], order: int) -> ASeries:
    """Motivic lift of ``H_{p-1}(s)`` modulo ``T^order``.

    Uses the sign ``(-1)^{s_1+...+s_i}`` on the reversed-prefix terms and
    stuffle regularization (zeta*(1) = 0) for words starting with 1.
    """
    s = tuple(s)
    if any(x < 1 for x in s):
        raise ValueError("parts must be >= 1")
    if order <= 0:
        return ASeries({}, order)
    return _motivic_mhs(s, order)


def mhs_series_lift(m: MHSSeries, order: int | None = None) -> ASeries:
    """``sum c T^b H^a(s)`` truncated at ``order`` (default: the series' own order)."""
    if order is None:
        order = m.order
    order = min(order, m.order)
    if order == float("inf"):
        raise ValueError("lifting needs a finite truncation order")
    acc = ASeries({}, order)
    for c, b, s in m:
        if b >= order:
            continue
        acc = acc + motivic_mhs(s, order - b).shift(b) * c
    return acc


@lru_cache(maxsize=None)
def _ones_series(n: int, order: int) -> ASeries:
    """``sum_i n^i H^a(1^i) T^i`` mod ``T^order``."""
    acc = ASeries({}, order)
    for i in range(order):
        acc = acc + motivic_mhs((1,) * i, order - i).shift(i) * (n ** i)
    return acc


def motivic_binomial(k: int, r: int, order: int) -> ASeries:
    """Lift of ``binom(kp, rp)`` as a ratio of products of ``H^a(1^i)`` series."""
    if not k >= r >= 0:
        raise ValueError("need k >= r >= 0")
    num = ASeries.const(comb(k, r))
    for n in range(k - r, k):
        num = num * _ones_series(n, order)
    den = ASeries.const(1)
    for n in range(0, r):
        den = den * _ones_series(n, order)
    return (num * ser_inv(den)).truncate(order)


def motivic_c(n: int, order: int) -> ASeries:
    """Lift of ``c_n = binom(np, p)``: ``n * sum_j (n-1)^j T^j H^a(1^j)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _ones_series(n - 1, order) * n


def check_balanced(spec: Sequence[Tuple[int, int]]) -> None:
    if any(b < 1 for b, _ in spec):
        raise ValueError("factorial arguments b_i must be positive")
    if sum(b * n for b, n in spec) != 0:
        raise UnbalancedSpec(f"sum n_i*b_i = {sum(b * n for b, n in spec)} != 0")


def motivic_factorial_product(spec: Sequence[Tuple[int, int]], order: int) -> ASeries:
    """Lift of ``prod (b_i p)!^{n_i}`` via ``prod (c_1 ... c_{b_i})^{n_i}``."""
    check_balanced(spec)
    exps: dict = {}
    for b, n in spec:
        for j in range(1, b + 1):
            exps[j] = exps.get(j, 0) + n
    acc = ASeries.const(1)
    for j, e in sorted(exps.items()):
        if e == 0:
            continue
        cj = motivic_c(j, order)
        acc = acc * (cj ** e if e > 0 else ser_inv(cj) ** (-e))
    return acc.truncate(order)


def diagonal_embed(x, order, table=None) -> ASeries:
    """Send each weight-w component ``z`` to ``z T^w``.

    ``x`` is an :class:`AElement`, or a :class:`BasisForm` together with the
    table that turns it back into word form.
    """
    from .mzv import BasisForm, weight_components

    if isinstance(x, BasisForm):
        if table is None:
            raise ValueError("a BasisForm needs its relation table")
        x = table.from_basis(x)
    coeffs = {w: comp for w, comp in weight_components(x).items()}
    return ASeries(coeffs, order)


# -- finite-sum identities used to build MHSSeries for the same quantities --

def ones_mhs(n: int, order: int) -> MHSSeries:
    """``sum_i n^i p^i H_{p-1}(1^i)``, the expansion of ``prod_j (1 + n p / j)``."""
    return MHSSeries.from_list([(n ** i, i, (1,) * i) for i in range(order)], order)


def binomial_mhs(k: int, r: int, order: int) -> MHSSeries:
    """``binom(kp, rp)`` as an MHSSeries."""
    if not k >= r >= 0:
        raise ValueError("need k >= r >= 0")
    num = MHSSeries.const(comb(k, r))
    for n in range(k - r, k):
        num = num * ones_mhs(n, order)
    den = MHSSeries.const(1)
    for n in range(r):
        den = den * ones_mhs(n, order)
    return (num * den.inverse()).truncate(order)


def factorial_product_mhs(spec: Sequence[Tuple[int, int]], order: int) -> MHSSeries:
    check_balanced(spec)
    exps: dict = {}
    for b, n in spec:
        for j in range(1, b + 1):
            exps[j] = exps.get(j, 0) + n
    acc = MHSSeries.const(1)
    for j, e in sorted(exps.items()):
        if e:
            acc = acc * (ones_mhs(j - 1, order) * j) ** e
    return acc.truncate(order)


# -- inverse direction: zeta values as weighted MHS series --

class SolveFailed(ArithmeticError):
    """The constant terms of the H^a(t) do not span a weight of the table."""


def zeta_to_mhs(s: Sequence[int], order: int, table, column_key=None) -> MHSSeries:
    """Weighted MHSSeries ``sum c p^{|t|-|s|} H(t)`` lifting to ``zeta(s) + O(T^order)``.

    Solved degree by degree: the ``T^D`` coefficient only sees the constant
    terms of the new ``H^a(t)`` with ``|t| = |s| + D``, so each step is one
    linear system over the table's monomials of that weight.  Columns are
    tried in ``column_key`` order (default: depth, then lexicographic); free
    variables are set to zero, so different orders give different, equally
    valid, representatives.
    """
    from .core import compositions
    from .linalg import solve
    from .mzv import WeightCapExceeded

    s = tuple(s)
    if s and s[0] < 2:
        raise ValueError(f"zeta{s} is not admissible")
    w = sum(s)
    if w + order - 1 > table.weight_cap:
        raise WeightCapExceeded(
            f"zeta{s} to order {order} needs weight {w + order - 1} > {table.weight_cap}")
    target = table.to_basis(AElement.zeta(*s))
    result: dict = {}
    lifted = ASeries({}, order)
    for D in range(order):
        have = table.to_basis(lifted.coeff(D))
        resid = (target if D == 0 else BasisForm()) - have
        if not resid:
            continue
        monos = table.monomials(w + D)
        cols = sorted(compositions(w + D), key=column_key or (lambda t: (len(t), t)))
        consts = [table.to_basis(motivic_mhs(t, 1).coeff(0)) for t in cols]
        a = [[c.terms.get(m, 0) for c in consts] for m in monos]
        b = [resid.terms.get(m, 0) for m in monos]
        x = solve(a, b)
        if x is None:
            raise SolveFailed(f"weight {w + D}: constant terms of H^a do not span the table")
        for t, c in zip(cols, x):
            if c:
                result[(D, t)] = c
                lifted = lifted + motivic_mhs(t, order - D).shift(D) * c
    return MHSSeries(result, order)
