"""Real multiple zeta values to high precision, independent of the relation table.

The iterated integral over [0, 1] is split at 1/2 (path composition); the
piece over [1/2, 1] becomes, under t -> 1 - t, an integral over [0, 1/2]
of the reversed word with letters swapped.  Both pieces are multiple
polylogarithms at 1/2, which converge geometrically.
"""
from functools import lru_cache

import mpmath as mp

DPS = 40


def to_word(s):
    out = []
    for x in s:
        out += [0] * (x - 1) + [1]
    return tuple(out)


def from_word(w):
    s, run = [], 0
    for a in w:
        run += 1
        if a == 1:
            s.append(run)
            run = 0
    assert run == 0, "word must end in 1"
    return tuple(s)


@lru_cache(maxsize=None)
def li_half(s):
    """``sum_{n_1 > ... > n_k} 2^-n_1 / prod n_i^s_i``."""
    if not s:
        return mp.mpf(1)
    M = int(DPS * 3.4) + 40
    k = len(s)
    prev = None
    for j in range(k - 1, -1, -1):
        cur = [mp.mpf(0)] * (M + 1)
        acc = mp.mpf(0)
        for n in range(1, M + 1):
            term = mp.mpf(1) / mp.mpf(n) ** s[j]
            if j < k - 1:
                term *= prev[n - 1]
            if j == 0:
                term *= mp.mpf(2) ** (-n)
            acc += term
            cur[n] = acc
        prev = cur
    return prev[M]


@lru_cache(maxsize=None)
def zeta(*s):
    with mp.workdps(DPS + 10):
        w = to_word(s)
        total = mp.mpf(0)
        for j in range(len(w) + 1):
            head = tuple(1 - a for a in reversed(w[:j]))
            tail = w[j:]
            total += li_half(from_word(head)) * li_half(from_word(tail))
        return total


def monomial_value(m):
    v = mp.mpf(1)
    for g in m:
        v *= zeta(*g)
    return v


def certify_word(table, s) -> bool:
    """Check ``zeta(s) - reduction`` lies in zeta(2) times weight ``|s|-2`` values."""
    with mp.workdps(DPS):
        w = sum(s)
        red = table.reduce_word(tuple(s))
        resid = zeta(*s) - sum(c.numerator * monomial_value(m) / c.denominator
                               for m, c in red.terms.items())
        z2 = zeta(2)
        span = []
        for k in range(1, w // 2 + 1):
            monos = table.monomials(w - 2 * k) if w - 2 * k > 0 else [()]
            span += [z2 ** k * monomial_value(m) for m in monos]
        if abs(resid) < mp.mpf(10) ** (-(DPS - 8)):
            return True
        rel = mp.pslq([resid] + span, maxcoeff=10 ** 8, maxsteps=10 ** 5)
        return rel is not None and rel[0] != 0
