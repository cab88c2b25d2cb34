"""Exact arithmetic layer: compositions, the stuffle product, harmonic sums.

Compositions are plain tuples of ints.  Linear combinations are dicts
mapping a hashable key to a nonzero :class:`~fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Hashable, Iterable, Tuple

Composition = Tuple[int, ...]
LinComb = Dict[Hashable, Fraction]


class DenominatorDivisibleByP(ArithmeticError):
    """A rational with p in its denominator cannot be reduced mod p^n."""


def weight(s: Composition) -> int:
    return sum(s)


def depth(s: Composition) -> int:
    return len(s)


def compositions(w: int):
    """All compositions of ``w`` with positive parts, lexicographic."""
    if w == 0:
        yield ()
        return
    for first in range(1, w + 1):
        for rest in compositions(w - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# linear combinations

def lc_add(target: dict, key, coeff) -> None:
    """In-place ``target[key] += coeff`` dropping zeros."""
    if not coeff:
        return
    v = target.get(key, 0) + coeff
    if v:
        target[key] = v
    else:
        target.pop(key, None)


def lc_sorted(lc: dict) -> dict:
    return {k: lc[k] for k in sorted(lc)}


def lc_scale(lc: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in lc.items()}


def lc_sum(*lcs: dict) -> dict:
    out: dict = {}
    for lc in lcs:
        for k, v in lc.items():
            lc_add(out, k, v)
    return out


# ---------------------------------------------------------------------------
# quasi-shuffle

@lru_cache(maxsize=None)
def _stuffle(a: Composition, b: Composition) -> Tuple[Tuple[Composition, int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: Dict[Composition, int] = {}
    for w, c in _stuffle(a[1:], b):
        key = (a[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _stuffle(a, b[1:]):
        key = (b[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _stuffle(a[1:], b[1:]):
        key = (a[0] + b[0],) + w
        out[key] = out.get(key, 0) + c
    return tuple(sorted(out.items()))


def stuffle(a: Composition, b: Composition) -> Dict[Composition, int]:
    """Quasi-shuffle product of two compositions.

    Parts may be arbitrary integers; merging adds exponents, which is what
    makes ``H_N(a) H_N(b) = sum c_w H_N(w)`` hold for any limit ``N``.

    >>> stuffle((1,), (2,))
    {(1, 2): 1, (2, 1): 1, (3,): 1}
    """
    return dict(_stuffle(tuple(a), tuple(b)))


@lru_cache(maxsize=None)
def _shuffle_words(a: tuple, b: tuple) -> Tuple[Tuple[tuple, int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: Dict[tuple, int] = {}
    for w, c in _shuffle_words(a[1:], b):
        k = (a[0],) + w
        out[k] = out.get(k, 0) + c
    for w, c in _shuffle_words(a, b[1:]):
        k = (b[0],) + w
        out[k] = out.get(k, 0) + c
    return tuple(sorted(out.items()))


def to_word(s: Composition) -> tuple:
    """Composition to the 0/1 word x0^{s1-1} x1 ... x0^{sk-1} x1."""
    w: list = []
    for part in s:
        w.extend([0] * (part - 1))
        w.append(1)
    return tuple(w)


def from_word(w: tuple) -> Composition:
    if w and w[-1] != 1:
        raise ValueError("word must end in x1")
    out, run = [], 0
    for letter in w:
        run += 1
        if letter == 1:
            out.append(run)
            run = 0
    return tuple(out)


def shuffle(a: Composition, b: Composition) -> Dict[Composition, int]:
    """Shuffle product of the iterated-integral words of two compositions."""
    return {from_word(w): c for w, c in _shuffle_words(to_word(a), to_word(b))}


# ---------------------------------------------------------------------------
# harmonic sums

def _inv_pow(n: int, e: int) -> Fraction:
    return Fraction(1, n ** e) if e >= 0 else Fraction(n ** (-e))


_TABLES: Dict[Composition, list] = {}


def _mhs_table(s: Composition, N: int) -> list:
    """Prefix values ``[H_0(s), ..., H_N(s)]`` (cached, grown on demand)."""
    tab = _TABLES.get(s)
    if tab is not None and len(tab) > N:
        return tab
    if not s:
        tab = [Fraction(1)] * (N + 1)
    else:
        inner = _mhs_table(s[1:], N)
        head = s[0]
        tab = [Fraction(0)]
        acc = Fraction(0)
        for n in range(1, N + 1):
            acc += _inv_pow(n, head) * inner[n - 1]
            tab.append(acc)
    _TABLES[s] = tab
    return tab


def mhs_eval(N: int, s: Composition) -> Fraction:
    """``H_N(s)`` exactly; parts <= 0 mean positive powers of the index.

    >>> mhs_eval(4, (1,))
    Fraction(25, 12)
    """
    s = tuple(s)
    if N < len(s):
        return Fraction(1) if not s else Fraction(0)
    return _mhs_table(s, N)[N]


def mhs_eval_mod(N: int, s: Composition, p: int, prec: int, restricted: bool = False) -> Fraction:
    """A rational ``x`` with ``x == H_N(s) mod p^prec``, by modular summation.

    Each index ``n = p^v u`` contributes ``p^(s_j (vmax - v)) u^-s_j``, so the
    scaled sum ``p^(vmax |s|) H_N(s)`` is computed with integers modulo
    ``p^(prec + vmax |s|)``.  Much faster than :func:`mhs_eval` for large N.
    """
    s = tuple(s)
    if any(x < 1 for x in s):
        raise ValueError("parts must be >= 1")
    if not s:
        return Fraction(1)
    vmax = 0
    if not restricted:
        while p ** (vmax + 1) <= N:
            vmax += 1
    E = vmax * sum(s)
    mod = p ** (prec + E)
    prev = [1] * (N + 1)
    for j in range(len(s) - 1, -1, -1):
        e = s[j]
        cur = [0] * (N + 1)
        acc = 0
        for n in range(1, N + 1):
            u, v = n, 0
            while u % p == 0:
                u //= p
                v += 1
            if not (restricted and v):
                w = pow(u, -e, mod) * p ** (e * (vmax - v))
                acc = (acc + w * (prev[n - 1] if j < len(s) - 1 else 1)) % mod
            cur[n] = acc
        prev = cur
    return Fraction(prev[N], p ** E)


def mhs_eval_p_restricted(N: int, s: Composition, p: int) -> Fraction:
    """``H_N(s)`` with every index divisible by ``p`` omitted."""
    s = tuple(s)
    # table[j][n] = sum over n >= n_j > ... > n_k, all coprime to p
    k = len(s)
    if not s:
        return Fraction(1)
    prev = [Fraction(1)] * (N + 1)  # empty tail
    for j in range(k - 1, -1, -1):
        cur = [Fraction(0)] * (N + 1)
        acc = Fraction(0)
        for n in range(1, N + 1):
            if n % p:
                acc += _inv_pow(n, s[j]) * (prev[n - 1] if j < k - 1 else 1)
            cur[n] = acc
        prev = cur
    return prev[N]


# ---------------------------------------------------------------------------
# polynomial sums

@lru_cache(maxsize=None)
def faulhaber(e: int) -> Tuple[Fraction, ...]:
    """Coefficients ``c[0..e+1]`` with ``sum(c[i] N**i) == sum_{n=1}^N n**e``.

    Solved from the recursion ``(N+1)^{e+1} - 1 = sum_j C(e+1,j) P_j(N)``,
    so no Bernoulli convention is involved.
    """
    if e < 0:
        raise ValueError("faulhaber needs e >= 0")
    # (N+1)^{e+1} - 1 expanded
    rhs = [Fraction(comb(e + 1, i)) for i in range(e + 2)]
    rhs[0] -= 1
    for j in range(e):
        pj = faulhaber(j)
        cj = comb(e + 1, j)
        for i, c in enumerate(pj):
            rhs[i] -= cj * c
    return tuple(c / (e + 1) for c in rhs)


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def gen_binomial(a: int, k: int) -> Fraction:
    """``a(a-1)...(a-k+1)/k!`` for any integer ``a``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    num = 1
    for i in range(k):
        num *= a - i
    return Fraction(num, factorial(k))


def pochhammer(s: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= s + i
    return out


# ---------------------------------------------------------------------------
# p-adic helpers

def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Fraction, p: int) -> float:
    """p-adic valuation of a rational; ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return float("inf")
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def congruent_mod_p_power(x, y, p: int, n: int) -> bool:
    x, y = Fraction(x), Fraction(y)
    if x.denominator % p == 0 or y.denominator % p == 0:
        raise DenominatorDivisibleByP(f"denominator divisible by {p}")
    return valuation(x - y, p) >= n


def primes_between(lo: int, hi: int) -> list:
    return [q for q in range(max(lo, 2), hi + 1)
            if all(q % d for d in range(2, int(q ** 0.5) + 1))]


def apery_number(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def fmt_comp(s: Iterable[int]) -> str:
    return ",".join(str(x) for x in s)
