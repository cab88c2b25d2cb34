"""Nested sums of binomial coefficients in p, expanded into MHSSeries.

A summand is a nest of strict sums ``Sum(var, lo, hi, body)``.  The upper
limit is ``p + shift`` for the outermost sum and ``outer_var + shift`` for a
nested one; the body is a product of catalog factors in the sum's own
variable.

Expansion works with expressions in a symbol ``X`` (a summation variable,
or ``p`` at the top) made of terms ``c * p^b * prod (X+j)^(-a) * H_{X-1}(s)``.
Each sum is evaluated by partial fractions in its variable followed by
:func:`_sum_shifted`, which always terminates: every recursive call either
hits the unshifted base case or strictly lowers the depth of ``s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Optional, Tuple, Union

from .core import Composition, gen_binomial, lc_add, mhs_eval, stuffle
from .hsym import Rat, normalize, partial_fractions, peel, peel_threshold, rat_mul
from .mhs import MHSSeries


class UnsupportedFactor(ValueError):
    """A factor or bound outside the supported catalog."""


class ResidualAlternatingSign(ValueError):
    """A leftover ``(-1)^n`` that does not cancel in pairs."""


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Binom:
    """``binom(p+shift, n)`` (kind 'p') or ``binom(p+n+shift, n)`` (kind 'pn')."""
    kind: str
    shift: int
    power: int = 1


@dataclass(frozen=True)
class InvShift:
    """``(n + c)^(-power)``."""
    c: int
    power: int = 1


@dataclass(frozen=True)
class VarPow:
    """``n^j``."""
    j: int


@dataclass(frozen=True)
class PPow:
    """``p^j``."""
    j: int


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    """``sum_{var=lo}^{hi} body`` with ``hi = (hi_var or p) + hi_shift``."""
    var: str
    lo: int
    hi_var: Optional[str]
    hi_shift: int
    body: Tuple["Factor", ...]


Factor = Union[Binom, InvShift, VarPow, PPow, Const, Sum]

Key = Tuple[int, Rat, Composition]
XSum = Dict[Key, Fraction]


def _validate(e: Sum, outer: Optional[str], off: Optional[int]) -> int:
    """Check bounds; return the working-precision slack ``D``.

    ``off`` is the maximum of the enclosing variable relative to p.  The
    slack of one level is the largest inverse power of a factor that can
    hit ``p`` inside the range; levels add up.
    """
    if e.lo < 1:
        raise UnsupportedFactor(f"lower limit of {e.var} must be >= 1")
    if e.hi_var != outer:
        where = outer or "p"
        raise UnsupportedFactor(f"upper limit of {e.var} must be {where} + shift")
    top = e.hi_shift if outer is None else off + e.hi_shift
    if top > -1:
        raise UnsupportedFactor(f"range of {e.var} reaches p; upper limit must stay below p")
    loss: Dict[int, int] = {}
    slack = 0
    for f in e.body:
        if isinstance(f, Binom):
            if f.kind not in ("p", "pn") or f.shift not in (0, -1) or f.power < 1:
                raise UnsupportedFactor(f"binomial {f} is not in the catalog")
        elif isinstance(f, InvShift):
            if f.c < 0 or f.power < 1:
                raise UnsupportedFactor(f"inverse shift {f} must have c >= 0")
            if top + f.c >= 0:
                loss[f.c] = loss.get(f.c, 0) + f.power
        elif isinstance(f, PPow):
            if f.j < 0:
                raise UnsupportedFactor("negative powers of p are not in the catalog")
        elif isinstance(f, Sum):
            slack += _validate(f, e.var, top)
        elif not isinstance(f, (VarPow, Const)):
            raise UnsupportedFactor(f"unknown factor {f!r}")
    return slack + max(loss.values(), default=0)


# ---------------------------------------------------------------------------
# expression arithmetic

def _mul(x: XSum, y: XSum, W: int) -> XSum:
    out: XSum = {}
    for (b1, r1, s1), c1 in x.items():
        for (b2, r2, s2), c2 in y.items():
            b = b1 + b2
            if b >= W:
                continue
            r = rat_mul(r1, r2)
            for s, c in stuffle(s1, s2).items():
                lc_add(out, (b, r, s), c1 * c2 * c)
    return out


def _add_into(out: XSum, x: XSum, scale=1) -> None:
    for k, c in x.items():
        lc_add(out, k, c * scale)


def _catalog(f: Binom, W: int) -> Tuple[XSum, int, int]:
    """Expansion of one binomial: (series, sign constant, parity of (-1)^n)."""
    out: XSum = {}
    ones = lambda m: (1,) * m  # noqa: E731
    if f.kind == "p" and f.shift == 0:
        # binom(p,n) = (-1)^(n-1) (p/n) sum_m (-p)^m H_{n-1}(1^m)
        for m in range(W - 1):
            lc_add(out, (m + 1, ((0, 1),), ones(m)), Fraction((-1) ** m))
        return out, -1, 1
    if f.kind == "pn" and f.shift == -1:
        # binom(p+n-1,n) = (p/n) sum_m p^m H_{n-1}(1^m)
        for m in range(W - 1):
            lc_add(out, (m + 1, ((0, 1),), ones(m)), Fraction(1))
        return out, 1, 0
    # binom(p-1,n) = (-1)^n sum (-p)^m H_n(1^m);  binom(p+n,n) = sum p^m H_n(1^m)
    alt = f.kind == "p"
    for m in range(W):
        c = Fraction((-1) ** m if alt else 1)
        lc_add(out, (m, (), ones(m)), c)
        if m:
            lc_add(out, (m, ((0, 1),), ones(m - 1)), c)
    return out, 1, 1 if alt else 0


# ---------------------------------------------------------------------------
# summation

class _Ctx:
    def __init__(self, W: int):
        self.W = W
        self.threshold = 0

    def need(self, x: int) -> None:
        self.threshold = max(self.threshold, x)


def _canon(c: Fraction, rat: Rat, delta: int, t: Composition, ctx: _Ctx, out: XSum) -> None:
    """Add ``c * rat(X) * H_{X+delta}(t)`` to ``out`` in ``H_{X-1}`` form."""
    if not t:
        lc_add(out, (0, rat, ()), c)
        return
    ctx.need(-delta)  # N = X + delta >= 0
    ctx.need(peel_threshold(delta))
    for c1, d, u in normalize(t):
        r1 = rat_mul(rat, ((delta, -d),)) if d else rat
        if not u:
            lc_add(out, (0, r1, ()), c * c1)
            continue
        for c2, r2, v in peel(u, delta):
            lc_add(out, (0, rat_mul(r1, r2), v), c * c1 * c2)


def _sum_shifted(j: int, a: int, s: Composition, lo: int, c: int, ctx: _Ctx, out: XSum,
                 scale: Fraction) -> None:
    """Add ``scale * sum_{v=lo}^{X+c} (v+j)^(-a) H_{v-1}(s)`` to ``out``.

    Requires ``lo + j >= 1``.
    """
    if j == 0:
        comp = (a,) + s
        ctx.need(lo - 1 - c)
        _canon(scale, (), c, comp, ctx, out)
        const = mhs_eval(lo - 1, comp)
        if const:
            lc_add(out, (0, (), ()), -scale * const)
        return
    if j > 0:
        # w = v + j; H_{w-1-j}(s) via backward peeling
        from .hsym import backward_peel

        for c1, r1, t in backward_peel(s, j):
            for jj, aa, c2 in partial_fractions(rat_mul(r1, ((0, a),))):
                _sum_shifted(jj, aa, t, lo + j, c + j, ctx, out, scale * c1 * c2)
        return
    d = -j
    from .hsym import forward_peel

    for c1, r1, t in forward_peel(s, d):
        for jj, aa, c2 in partial_fractions(rat_mul(r1, ((0, a),))):
            _sum_shifted(jj, aa, t, lo - d, c - d, ctx, out, scale * c1 * c2)


def _body(e: Sum, W: int) -> Tuple[XSum, int]:
    """The body as an expression in ``e.var``, with its validity threshold."""
    acc: XSum = {(0, (), ()): Fraction(1)}
    parity = 0
    sign = 1
    threshold = 0
    for f in e.body:
        if isinstance(f, Binom):
            ser, sg, par = _catalog(f, W)
            piece: XSum = {(0, (), ()): Fraction(1)}
            for _ in range(f.power):
                piece = _mul(piece, ser, W)
            sign *= sg ** f.power
            parity += par * f.power
        elif isinstance(f, InvShift):
            piece = {(0, ((f.c, f.power),), ()): Fraction(1)}
        elif isinstance(f, VarPow):
            piece = {(0, ((0, -f.j),) if f.j else (), ()): Fraction(1)}
        elif isinstance(f, PPow):
            piece = {(f.j, (), ()): Fraction(1)}
        elif isinstance(f, Const):
            piece = {(0, (), ()): Fraction(f.value)}
        else:
            piece, t = _eval_sum(f, W)
            threshold = max(threshold, t)
        acc = _mul(acc, piece, W)
    if parity % 2:
        raise ResidualAlternatingSign(f"(-1)^{e.var} does not cancel in the body of the {e.var}-sum")
    if sign < 0:
        acc = {k: -c for k, c in acc.items()}
    return acc, threshold


def _eval_sum(e: Sum, W: int) -> Tuple[XSum, int]:
    """Evaluate ``e`` as an expression in its upper-limit symbol."""
    body, t_body = _body(e, W)
    start = max(e.lo, t_body)
    for (_, rat, _) in body:
        for j, _a in rat:
            start = max(start, 1 - j)
    ctx = _Ctx(W)
    out: XSum = {}
    # concrete head: v = lo .. start-1, constant in X
    if start > e.lo:
        ctx.need(start - 1 - e.hi_shift)
        for v in range(e.lo, start):
            poly = concrete_body(e, v, W)
            for c, b, _ in poly:
                lc_add(out, (b, (), ()), c)
    for (b, rat, s), coef in body.items():
        for j, a, c2 in partial_fractions(rat):
            piece: XSum = {}
            _sum_shifted(j, a, s, start, e.hi_shift, ctx, piece, Fraction(1))
            for (_, r, u), c in piece.items():
                lc_add(out, (b, r, u), c * coef * c2)
    return out, ctx.threshold


# ---------------------------------------------------------------------------
# concrete evaluation (outer variable fixed, p symbolic)

def _poly_linear(c: int) -> MHSSeries:
    """``p + c`` as a polynomial."""
    return MHSSeries.from_list([(c, 0, ()), (1, 1, ())])


def concrete_factor(f: Factor, n: int, W: int) -> MHSSeries:
    """Value of one factor at ``var = n`` as a polynomial in p (mod p^W)."""
    if isinstance(f, Binom):
        if f.kind == "p":
            terms = [_poly_linear(f.shift - i) for i in range(n)]
        else:
            terms = [_poly_linear(f.shift + i) for i in range(1, n + 1)]
        val = MHSSeries.const(Fraction(1, factorial(n)))
        for t in terms:
            val = val * t
        return (val ** f.power).truncate(W)
    if isinstance(f, InvShift):
        if n + f.c == 0:
            raise ZeroDivisionError(f"1/(n+{f.c}) at n={n}")
        return MHSSeries.const(Fraction(1, (n + f.c) ** f.power))
    if isinstance(f, VarPow):
        return MHSSeries.const(Fraction(n) ** f.j)
    if isinstance(f, PPow):
        return MHSSeries.const(1).shift(f.j)
    if isinstance(f, Const):
        return MHSSeries.const(f.value)
    acc = MHSSeries.const(0)
    for m in range(f.lo, n + f.hi_shift + 1):
        acc = acc + concrete_body(f, m, W)
    return acc


def concrete_body(e: Sum, n: int, W: int) -> MHSSeries:
    acc = MHSSeries.const(1)
    for f in e.body:
        acc = (acc * concrete_factor(f, n, W)).truncate(W)
    return acc.truncate(W)


# ---------------------------------------------------------------------------
# top level

def _to_mhs(x: XSum, W: int) -> MHSSeries:
    """Substitute ``X = p``: expand ``(p+j)^(-a)`` for ``j != 0`` in powers of p."""
    acc = MHSSeries({}, W)
    for (b, rat, s), coef in x.items():
        beff = b - sum(a for j, a in rat if j == 0)
        room = W - beff
        if room <= 0:
            continue
        term = MHSSeries.const(coef)
        for j, a in rat:
            if j == 0:
                continue
            if a < 0:
                ser = MHSSeries.from_list(
                    [(comb(-a, m) * Fraction(j) ** (-a - m), m, ()) for m in range(-a + 1)])
            else:
                ser = MHSSeries.from_list(
                    [(gen_binomial(-a, m) * Fraction(j) ** (-a - m), m, ()) for m in range(room)],
                    room)
            term = term * ser
        term = term.truncate(room) * MHSSeries.H(*s)
        acc = acc + term.shift(beff)
    return acc


def expand_summand(e: Sum, order: int) -> MHSSeries:
    """Canonical MHSSeries of the nested sum ``e`` modulo ``p^order``."""
    slack = _validate(e, None, None)
    W = order + slack
    x, _ = _eval_sum(e, W)
    return _to_mhs(x, W).truncate(order)


# ---------------------------------------------------------------------------
# brute force

def evaluate_summand(e: Sum, p: int, env: Optional[dict] = None) -> Fraction:
    """Exact value of the nested sum at a concrete prime ``p``."""
    env = dict(env or {})
    hi = (env[e.hi_var] if e.hi_var else p) + e.hi_shift
    total = Fraction(0)
    for n in range(e.lo, hi + 1):
        env[e.var] = n
        val = Fraction(1)
        for f in e.body:
            if isinstance(f, Binom):
                top = p + f.shift + (n if f.kind == "pn" else 0)
                val *= comb(top, n) ** f.power
            elif isinstance(f, InvShift):
                val /= Fraction(n + f.c) ** f.power
            elif isinstance(f, VarPow):
                val *= Fraction(n) ** f.j
            elif isinstance(f, PPow):
                val *= Fraction(p) ** f.j
            elif isinstance(f, Const):
                val *= f.value
            else:
                val *= evaluate_summand(f, p, env)
            if not val:
                break
        total += val
    return total
