"""Harmonic sums whose upper limit is a polynomial in p.

Every index is written ``n = A*p + i`` with ``0 <= i < p``.  Runs of
consecutive indices sharing a block ``A`` form groups; inside a group the
expansion ``(A p + i)^-s = sum_m binom(-s, m) A^m p^m i^(-s-m)`` turns the
``i``-sums into ``H_{p-1}``, and the sum over strictly decreasing block
indices becomes a harmonic sum with nonpositive parts, which Faulhaber
summation reduces to polynomials in the block count.  Indices divisible by
p (``i = 0``, unrestricted sums only) are the last member of their group and
contribute ``(A p)^-s``; the block sums then keep positive parts and recurse
on a limit of lower degree.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .core import Composition, gen_binomial, mhs_eval
from .hsym import normalize, peel
from .mhs import MHSSeries


class UnsupportedPolynomial(ValueError):
    pass


def _poly_series(coeffs: Sequence[int]) -> MHSSeries:
    return MHSSeries.from_list([(c, k, ()) for k, c in enumerate(coeffs) if c])


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _group_splits(k: int):
    """Ways to cut ``range(k)`` into consecutive nonempty runs."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in _group_splits(k - first):
            yield ((first,) + rest)


def _m_vectors(n: int, total: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    for m in range(total + 1):
        for rest in _m_vectors(n - 1, total - m):
            yield (m,) + rest


def _group_coeffs(parts: Composition, M: int) -> Dict[Composition, Fraction]:
    """``sum_{|m| = M} prod binom(-s_j, m_j)`` grouped by the shifted composition."""
    out: Dict[Composition, Fraction] = {}
    for m in _m_vectors(len(parts), M):
        c = Fraction(1)
        for sj, mj in zip(parts, m):
            c *= gen_binomial(-sj, mj)
        u = tuple(sj + mj for sj, mj in zip(parts, m))
        out[u] = out.get(u, 0) + c
    return out


class _Expander:
    def __init__(self, coeffs: Tuple[int, ...], s: Composition, restricted: bool, W: int):
        self.s = s
        self.restricted = restricted
        self.W = W
        self.deg = len(coeffs) - 1
        c0 = coeffs[0] if coeffs else 0
        q = list(coeffs[1:])
        if c0 < 0:
            q[0] = q[0] - 1 if q else -1
        self.c0 = c0
        self.q_coeffs = _trim(q)
        self.Q = _poly_series(self.q_coeffs)
        self.vQ = self.Q.min_exponent if self.Q.terms else 0
        wt = sum(s)
        self.cap = W - 1 + (0 if restricted else wt * (self.deg + self.vQ))
        self._memo: dict = {}
        # precision kept on factors that may later meet negative p-powers
        self.room = self.cap + 1 + wt * (1 + self.vQ)

    def _cached(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    # top partial block ----------------------------------------------------
    def top_H(self, u: Composition) -> MHSSeries:
        """``H_R(u)`` for the top block's range ``1..R``."""
        return self._cached(("top", u), lambda: self._top_H(u))

    def _top_H(self, u: Composition) -> MHSSeries:
        if self.c0 >= 0:
            return MHSSeries.const(mhs_eval(self.c0, u))
        from .summand import _to_mhs

        x = {}
        for c, rat, v in peel(u, self.c0):
            x[(0, rat, v)] = x.get((0, rat, v), 0) + c
        return _to_mhs(x, self.cap + 1)

    def Q_power(self, e: int) -> MHSSeries:
        return self._cached(("Q", e), lambda: self._Q_power(e))

    def _Q_power(self, e: int) -> MHSSeries:
        if e >= 0:
            return self.Q ** e
        return self.Q.truncate(self.cap + 1 - self.vQ).inverse() ** (-e)

    # block sums -----------------------------------------------------------
    def block_sum(self, exps: Tuple[int, ...], last_from_zero: bool) -> MHSSeries:
        """``sum_{Q-1 >= A_1 > ... > A_r >= lo} prod A_g^{exps_g}``, lo = 0 or 1."""
        total = self._block_sum_pos(exps)
        if last_from_zero and exps and exps[-1] == 0:
            total = total + self._block_sum_pos(exps[:-1])
        return total

    def _block_sum_pos(self, exps: Tuple[int, ...]) -> MHSSeries:
        return self._cached(("S", exps), lambda: self._block_sum_raw(exps))

    def _block_sum_raw(self, exps: Tuple[int, ...]) -> MHSSeries:
        if not exps:
            return MHSSeries.const(1)
        N = self.Q - 1  # H_{Q-1}(-E_1, ..., -E_r)
        n_coeffs = _trim(_dense(N))
        acc = MHSSeries.const(0)
        for c, d, u in normalize(tuple(-e for e in exps)):
            term = self._cached(("N", d), lambda: (N ** d).truncate(self.room)) * c
            if u:
                inner_order = self.W + sum(self.s) * (1 + self.vQ)
                term = term * expand_poly_mhs(n_coeffs, u, False, inner_order)
            acc = acc + term
        return acc.truncate(self.room)

    # main -----------------------------------------------------------------
    def run(self) -> MHSSeries:
        s, k = self.s, len(self.s)
        if not self.Q.terms:
            # single partial block 1..R with A = 0
            return self.top_H(s).truncate(self.W)
        zero_ok = not self.restricted
        result = MHSSeries({}, INF_ORDER)
        for t in range(k + 1):
            top = s[:t]
            for top_zero in ((False, True) if zero_ok and t else (False,)):
                for split in _group_splits(k - t):
                    groups = []
                    pos = t
                    for size in split:
                        groups.append(s[pos:pos + size])
                        pos += size
                    flags_list = _flag_choices(len(groups), zero_ok)
                    for flags in flags_list:
                        result = result + self._structure(top, top_zero, groups, flags)
        return result

    def _structure(self, top, top_zero, groups, flags) -> MHSSeries:
        sz_top = top[-1] if top_zero else 0
        top_parts = top[:-1] if top_zero else top
        g_parts = [g[:-1] if z else g for g, z in zip(groups, flags)]
        g_zero = [g[-1] if z else 0 for g, z in zip(groups, flags)]
        sz_total = sz_top + sum(g_zero)
        budget = self.cap + sz_total  # keep p-powers sum(M) - sz_total <= cap
        acc = MHSSeries({}, INF_ORDER)
        nslots = 1 + len(groups)
        for total in range(budget + 1):
            for Ms in _m_vectors(nslots, total):
                term = self._term(top_parts, sz_top, Ms[0], g_parts, g_zero, flags, Ms[1:])
                if term is not None:
                    acc = acc + term
        omitted = budget + 1 - sz_total
        return acc.truncate(omitted - self._neg_slack())

    def _neg_slack(self) -> int:
        if self.restricted:
            return 0
        return sum(self.s) * (self.deg - 1 + self.vQ) if self.deg >= 1 else 0

    def _term(self, top_parts, sz_top, M_top, g_parts, g_zero, flags, Ms):
        if not top_parts and M_top:
            return None
        for parts, M in zip(g_parts, Ms):
            if not parts and M:
                return None
        # top block factor: sum_m prod binom * H_R(top + m) * (Q p)^(M_top - sz_top)
        if top_parts or sz_top:
            tc = _group_coeffs(top_parts, M_top)
            top_val = MHSSeries.const(0)
            for u, c in tc.items():
                top_val = top_val + self.top_H(u) * c
            if not top_val.terms:
                return None
            top_val = top_val * self.Q_power(M_top - sz_top)
        else:
            top_val = MHSSeries.const(1)
        # full blocks
        H = MHSSeries.const(1)
        for parts, M in zip(g_parts, Ms):
            gc = _group_coeffs(parts, M)
            gs = MHSSeries({(0, u): c for u, c in gc.items()})
            H = H * gs
        if not H.terms:
            return None
        exps = tuple(M - z for M, z in zip(Ms, g_zero))
        last_from_zero = not (flags and flags[-1])
        S = self.block_sum(exps, last_from_zero) if exps else MHSSeries.const(1)
        if not S.terms:
            return None
        p_pow = M_top - sz_top + sum(exps)
        lim = self.room - p_pow
        return (top_val.truncate(lim) * S.truncate(lim) * H).truncate(lim).shift(p_pow)


INF_ORDER = float("inf")


def _dense(x: MHSSeries) -> List[int]:
    n = max((b for _, b, _ in x), default=-1) + 1
    out = [0] * n
    for c, b, s in x:
        assert not s and c.denominator == 1
        out[b] = int(c)
    return out


def _flag_choices(r: int, zero_ok: bool):
    if not zero_ok:
        return [(False,) * r]
    out = [()]
    for _ in range(r):
        out = [f + (z,) for f in out for z in (False, True)]
    return out


@lru_cache(maxsize=None)
def _expand_cached(coeffs: Tuple[int, ...], s: Composition, restricted: bool, order: int) -> MHSSeries:
    if len(coeffs) <= 1:
        n = coeffs[0] if coeffs else 0
        if n < 0:
            raise UnsupportedPolynomial("constant limit must be nonnegative")
        return MHSSeries.const(mhs_eval(n, s))
    W = order
    for _ in range(8):
        res = _Expander(coeffs, s, restricted, W).run()
        if res.order >= order:
            return res.truncate(order)
        W += order - res.order
    raise RuntimeError("precision bookkeeping did not converge")


def expand_poly_mhs(f: Sequence[int], s: Sequence[int], p_restricted: bool, order: int) -> MHSSeries:
    """MHSSeries of ``H_{f(p)}(s)`` (or the p-restricted sum) modulo ``p^order``.

    ``f`` lists integer coefficients lowest degree first, so ``[1, -2, 2]``
    is ``2p^2 - 2p + 1``.
    """
    coeffs = _trim(int(c) for c in f)
    s = tuple(s)
    if any(x < 1 for x in s):
        raise ValueError("parts must be >= 1")
    if coeffs and coeffs[-1] <= 0:
        raise UnsupportedPolynomial("leading coefficient must be positive")
    if not s:
        return MHSSeries.const(1)
    return _expand_cached(coeffs, s, bool(p_restricted), order)


def evaluate_poly_mhs(f: Sequence[int], s: Sequence[int], p_restricted: bool, p: int) -> Fraction:
    from .core import mhs_eval_p_restricted

    N = sum(c * p ** k for k, c in enumerate(f))
    return mhs_eval_p_restricted(N, tuple(s), p) if p_restricted else mhs_eval(N, tuple(s))
