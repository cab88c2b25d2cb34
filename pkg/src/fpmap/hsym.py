"""Symbolic identities for harmonic sums with a symbolic upper limit.

Rational functions in a symbol ``X`` are kept as sorted tuples of
``(j, a)`` pairs meaning ``prod (X + j)^(-a)``; ``a < 0`` gives polynomial
factors.  Every identity here is exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Tuple

from .core import Composition, faulhaber, gen_binomial, lc_add

Rat = Tuple[Tuple[int, int], ...]


def rat_mul(x: Rat, y: Rat) -> Rat:
    out: Dict[int, int] = dict(x)
    for j, a in y:
        out[j] = out.get(j, 0) + a
        if not out[j]:
            del out[j]
    return tuple(sorted(out.items()))


# ---------------------------------------------------------------------------
# dense polynomials: lists of Fractions, lowest degree first

def poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_pow_linear(j: int, e: int) -> list:
    """Coefficients of ``(X + j)^e`` for ``e >= 0``."""
    return [Fraction(comb(e, k) * j ** (e - k)) for k in range(e + 1)]


def poly_shift(a: list, h) -> list:
    """Coefficients of ``a(X + h)``."""
    out = [Fraction(0)] * len(a)
    for i, c in enumerate(a):
        if c:
            for k, d in enumerate(poly_pow_linear(h, i)):
                out[k] += c * d
    return out


def _poly_divmod(num: list, den: list):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for k, d in enumerate(den):
                num[i + k] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def partial_fractions(rat: Rat) -> Tuple[Tuple[int, int, Fraction], ...]:
    """Write ``prod (X+j)^(-a)`` as ``sum c * (X+j)^(-a)``.

    Pole terms have ``a > 0``; the polynomial part appears as ``(0, -k, c)``
    meaning ``c * X^k``.
    """
    num = [Fraction(1)]
    poles: Dict[int, int] = {}
    for j, a in rat:
        if a < 0:
            num = poly_mul(num, poly_pow_linear(j, -a))
        else:
            poles[j] = a
    out: List[Tuple[int, int, Fraction]] = []
    if not poles:
        return tuple((0, -k, c) for k, c in enumerate(num) if c)
    den = [Fraction(1)]
    for j, a in poles.items():
        den = poly_mul(den, poly_pow_linear(j, a))
    q, r = _poly_divmod(num, den)
    out.extend((0, -k, c) for k, c in enumerate(q) if c)
    for j, mult in sorted(poles.items()):
        # expand r(x - j) / prod_{j' != j} (x - j + j')^{a'} around x = 0
        series = (poly_shift(r, -j) + [Fraction(0)] * mult)[:mult]
        for j2, a2 in poles.items():
            if j2 == j:
                continue
            d = j2 - j
            inv = [gen_binomial(-a2, m) * Fraction(d) ** (-a2 - m) for m in range(mult)]
            series = poly_mul(series, inv)[:mult]
        for m, c in enumerate(series):
            if c:
                out.append((j, mult - m, c))
    return tuple(out)


# ---------------------------------------------------------------------------
# harmonic sum identities; results are lists of (coef, rat, composition)

HTerm = Tuple[Fraction, Rat, Composition]


@lru_cache(maxsize=None)
def forward_peel(s: Composition, d: int) -> Tuple[HTerm, ...]:
    """``H_{X-1+d}(s)`` in terms of ``H_{X-1}``; valid for ``X >= 1``, ``d >= 0``."""
    out: Dict[Tuple[Rat, Composition], Fraction] = {}
    lc_add(out, ((), s), Fraction(1))
    if s:
        for t in range(d):
            for c, rat, u in forward_peel(s[1:], t):
                lc_add(out, (rat_mul(rat, ((t, s[0]),)), u), c)
    return tuple((c, rat, u) for (rat, u), c in sorted(out.items()))


@lru_cache(maxsize=None)
def backward_peel(s: Composition, d: int) -> Tuple[HTerm, ...]:
    """``H_{X-1-d}(s)`` in terms of ``H_{X-1}``; valid for ``X >= d + 1``.

    Uses ``H_{N-1}(s) = sum_i (-1)^i N^-(s_1+...+s_i) H_N(s_{i+1},...)``
    with ``N = X - 1 - e`` for ``e = d-1, ..., 0``.
    """
    if d == 0:
        return ((Fraction(1), (), s),)
    out: Dict[Tuple[Rat, Composition], Fraction] = {}
    # one step down from X-1-(d-1) to X-1-d, then recurse on each piece
    for i in range(len(s) + 1):
        c = Fraction((-1) ** i)
        shift = -d  # N = X - d
        rat: Rat = ((shift, sum(s[:i])),) if i else ()
        for c2, rat2, u in backward_peel(s[i:], d - 1):
            lc_add(out, (rat_mul(rat, rat2), u), c * c2)
    return tuple((c, rat, u) for (rat, u), c in sorted(out.items()))


def peel(s: Composition, delta: int) -> Tuple[HTerm, ...]:
    """``H_{X+delta}(s)`` in terms of ``H_{X-1}``."""
    d = delta + 1
    return forward_peel(s, d) if d >= 0 else backward_peel(s, -d)


def peel_threshold(delta: int) -> int:
    """Least ``X`` for which :func:`peel` is valid."""
    return 1 if delta >= -1 else -delta


@lru_cache(maxsize=None)
def _shifted_faulhaber(e: int) -> Tuple[Fraction, ...]:
    """Coefficients of ``P_e(n - 1)`` as a polynomial in ``n``."""
    return tuple(poly_shift(list(faulhaber(e)), -1))


@lru_cache(maxsize=None)
def normalize(s: Composition) -> Tuple[Tuple[Fraction, int, Composition], ...]:
    """Remove nonpositive parts: ``H_N(s) = sum c * N^d * H_N(t)``, all ``t`` positive.

    Valid for every ``N >= 0``.  The rightmost nonpositive part ``-e`` is
    summed out with ``sum_{b < n < a} n^e = P_e(a-1) - P_e(b)``; the result
    merges into the neighbouring parts and depth drops by one.
    """
    bad = [i for i, x in enumerate(s) if x <= 0]
    if not bad:
        return ((Fraction(1), 0, s),)
    i = bad[-1]
    e = -s[i]
    acc: Dict[Tuple[int, Composition], Fraction] = {}

    def push(c, d, t):
        for c2, d2, u in normalize(t):
            lc_add(acc, (d + d2, u), c * c2)

    if i == 0:
        for r, c in enumerate(faulhaber(e)):
            if c:
                push(c, r, s[1:])
    else:
        for r, c in enumerate(_shifted_faulhaber(e)):
            if c:
                push(c, 0, s[: i - 1] + (s[i - 1] - r,) + s[i + 1:])
    if i < len(s) - 1:
        for r, c in enumerate(faulhaber(e)):
            if c:
                push(-c, 0, s[:i] + (s[i + 1] - r,) + s[i + 2:])
    return tuple((c, d, t) for (d, t), c in sorted(acc.items()))
