"""Expression language: AST, parser, serializer, expansion and evaluation.

Grammar (whitespace and newlines are free)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := NUMBER | 'p' | '(' expr ')' | call

Calls: ``Hp(s...)``, ``HpolyPr([c0,c1,...],(s...))``, ``Hpoly([...],(...))``,
``binom_pp(k,r)``, ``fact_prod((b,n),...)``, ``apery()`` and
``sum(v, lo, hi, body)``.  ``hi`` is an integer shift (upper limit
``p + shift``), ``p+c``, or ``w+c`` for an enclosing variable ``w``.  The
body is a product of ``BINp(shift)``, ``BINpn(shift)``, ``inv(v+c)``,
``pow(v,j)``, ``pow(p,j)``, rationals and nested sums, each optionally
raised to a positive integer power.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional, Tuple, Union

from .core import mhs_eval
from .mhs import MHSSeries
from .motivic import binomial_mhs, check_balanced, factorial_product_mhs, mhs_series_lift
from .poly import evaluate_poly_mhs, expand_poly_mhs
from .series import ASeries
from .summand import (Binom, Const, InvShift, PPow, Sum, VarPow, evaluate_summand,
                      expand_summand)


class ParseError(ValueError):
    """Malformed expression text, with a 1-based line and column."""

    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


# ---------------------------------------------------------------------------
# AST

class Expr:
    prec = 5

    def __add__(self, other):
        return Add(self, _wrap(other))

    def __sub__(self, other):
        return Sub(self, _wrap(other))

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n: int):
        return Pow(self, n)

    def __str__(self):
        return to_text(self)


def _wrap(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Num(Fraction(x))
    if isinstance(x, MHSSeries):
        return Series(x)
    if isinstance(x, Sum):
        return SumExpr(x)
    raise TypeError(f"cannot use {type(x).__name__} as an expression")


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction


@dataclass(frozen=True)
class P(Expr):
    pass


@dataclass(frozen=True)
class Hp(Expr):
    s: Tuple[int, ...]


@dataclass(frozen=True)
class Hpoly(Expr):
    coeffs: Tuple[int, ...]
    s: Tuple[int, ...]
    restricted: bool = True


@dataclass(frozen=True)
class BinomPP(Expr):
    k: int
    r: int


@dataclass(frozen=True)
class FactProd(Expr):
    spec: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Apery(Expr):
    """``sum_{n=0}^{p-1} binom(p-1,n)^2 binom(p-1+n,n)^2``."""


@dataclass(frozen=True)
class SumExpr(Expr):
    sum: Sum


@dataclass(frozen=True)
class Series(Expr):
    """A fixed MHSSeries used as a leaf (not produced by the parser)."""
    series: MHSSeries


@dataclass(frozen=True)
class Add(Expr):
    a: Expr
    b: Expr
    prec = 1


@dataclass(frozen=True)
class Sub(Expr):
    a: Expr
    b: Expr
    prec = 1


@dataclass(frozen=True)
class Mul(Expr):
    a: Expr
    b: Expr
    prec = 2


@dataclass(frozen=True)
class Div(Expr):
    a: Expr
    b: Expr
    prec = 2


@dataclass(frozen=True)
class Neg(Expr):
    a: Expr
    prec = 3


@dataclass(frozen=True)
class Pow(Expr):
    a: Expr
    n: int
    prec = 4


APERY_SUM = Sum("n", 1, None, -1, (Binom("p", -1, 2), Binom("pn", -1, 2)))


# ---------------------------------------------------------------------------
# serialization

def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _tuple(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


def _factor_text(f, var: str) -> str:
    if isinstance(f, Binom):
        base = f"BIN{f.kind}({f.shift})"
        return base if f.power == 1 else f"{base}^{f.power}"
    if isinstance(f, InvShift):
        base = f"inv({var}{_signed(f.c)})"
        return base if f.power == 1 else f"{base}^{f.power}"
    if isinstance(f, VarPow):
        return f"pow({var},{f.j})"
    if isinstance(f, PPow):
        return f"pow(p,{f.j})"
    if isinstance(f, Const):
        return _frac(f.value) if f.value >= 0 else f"({_frac(f.value)})"
    return _sum_text(f)


def _signed(c: int) -> str:
    return "" if c == 0 else (f"+{c}" if c > 0 else str(c))


def _sum_text(e: Sum) -> str:
    hi = str(e.hi_shift) if e.hi_var is None else f"{e.hi_var}{_signed(e.hi_shift)}"
    body = "*".join(_factor_text(f, e.var) for f in e.body) or "1"
    return f"sum({e.var},{e.lo},{hi},{body})"


def to_text(e: Expr) -> str:
    """Serialize so that ``parse(to_text(e)) == e``."""
    if isinstance(e, Num):
        return _frac(e.value)
    if isinstance(e, P):
        return "p"
    if isinstance(e, Hp):
        return "Hp" + _tuple(e.s)
    if isinstance(e, Hpoly):
        name = "HpolyPr" if e.restricted else "Hpoly"
        return f"{name}([{','.join(map(str, e.coeffs))}],{_tuple(e.s)})"
    if isinstance(e, BinomPP):
        return f"binom_pp({e.k},{e.r})"
    if isinstance(e, FactProd):
        return "fact_prod(" + ",".join(f"({b},{n})" for b, n in e.spec) + ")"
    if isinstance(e, Apery):
        return "apery()"
    if isinstance(e, SumExpr):
        return _sum_text(e.sum)
    if isinstance(e, Series):
        raise ValueError("a fixed MHSSeries leaf has no source text")
    if isinstance(e, (Add, Sub, Mul, Div)):
        op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
        rhs = _paren(e.b, e.prec + 1)
        if rhs.startswith("-"):
            rhs = f"({rhs})"
        return f"{_paren(e.a, e.prec)} {op} {rhs}"
    if isinstance(e, Neg):
        return "-" + _paren(e.a, e.prec + 1)
    if isinstance(e, Pow):
        return f"{_paren(e.a, 5)}^{e.n}"
    raise TypeError(f"unknown node {e!r}")


def _paren(e: Expr, need: int) -> str:
    txt = to_text(e)
    prec = e.prec
    if isinstance(e, Num) and (e.value < 0 or e.value.denominator != 1):
        prec = 2 if e.value >= 0 else 3  # "3/8" binds like a product, "-2" like negation
    return txt if prec >= need else f"({txt})"


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>.)", re.S)


@dataclass
class _Tok:
    kind: str  # 'int', 'name', 'op', 'eof'
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        if m.lastgroup == "ws":
            for i, ch in enumerate(m.group(), m.start()):
                if ch == "\n":
                    line, line_start = line + 1, i + 1
            continue
        toks.append(_Tok(m.lastgroup, m.group(), line, m.start() - line_start + 1))
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.bound: List[str] = []  # enclosing summation variables

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        where = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg} (at {where})", tok.line, tok.col)

    def take(self, text: Optional[str] = None, kind: Optional[str] = None) -> _Tok:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind) \
                or t.kind == "eof":
            self.error(f"expected {text or kind}")
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    # grammar --------------------------------------------------------------
    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.take().text
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.take().text
            rhs = self.unary()
            if op == "*":
                e = Mul(e, rhs)
            elif isinstance(e, Num) and isinstance(rhs, Num) and e.value.denominator == 1:
                if rhs.value == 0:
                    self.error("division by zero")
                e = Num(e.value / rhs.value)
            else:
                e = Div(e, rhs)
        return e

    def unary(self) -> Expr:
        if self.accept("-"):
            inner = self.unary()
            if isinstance(inner, Num) and inner.value > 0:
                return Num(-inner.value)
            return Neg(inner)
        return self.power()

    def power(self) -> Expr:
        e = self.atom()
        if self.accept("^"):
            e = Pow(e, self.signed_int())
        return e

    def signed_int(self) -> int:
        neg = self.accept("-")
        v = int(self.take(kind="int").text)
        return -v if neg else v

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(Fraction(int(t.text)))
        if t.kind == "op" and t.text == "(":
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        if t.kind == "name":
            if t.text == "p":
                self.i += 1
                return P()
            fn = _CALLS.get(t.text)
            if fn is None:
                self.error(f"unknown function {t.text!r}")
            self.i += 1
            self.take("(")
            node = fn(self, t)
            self.take(")")
            return node
        self.error("expected a number, 'p', '(' or a function call")

    # argument helpers -------------------------------------------------------
    def int_list(self, open_: str, close: str) -> Tuple[int, ...]:
        self.take(open_)
        out = []
        if not self.accept(close):
            out.append(self.signed_int())
            while self.accept(","):
                out.append(self.signed_int())
            self.take(close)
        return tuple(out)

    def composition(self) -> Tuple[int, ...]:
        t = self.tok
        s = self.int_list("(", ")")
        if any(x < 1 for x in s):
            self.error("harmonic sum parts must be positive", t)
        return s

    def comma(self):
        self.take(",")

    # calls ----------------------------------------------------------------
    def call_hp(self, t) -> Expr:
        s = []
        if self.tok.text != ")":
            s.append(self.signed_int())
            while self.accept(","):
                s.append(self.signed_int())
        if any(x < 1 for x in s):
            self.error("harmonic sum parts must be positive", t)
        return Hp(tuple(s))

    def call_hpoly(self, t, restricted: bool) -> Expr:
        coeffs = self.int_list("[", "]")
        self.comma()
        s = self.composition()
        trimmed = list(coeffs)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        if not trimmed or trimmed[-1] < 0:
            self.error("limit polynomial needs a positive leading coefficient", t)
        return Hpoly(coeffs, s, restricted)

    def call_binom(self, t) -> Expr:
        k = self.signed_int()
        self.comma()
        r = self.signed_int()
        if not k >= r >= 0:
            self.error("binom_pp(k,r) needs k >= r >= 0", t)
        return BinomPP(k, r)

    def call_fact(self, t) -> Expr:
        spec = []
        if self.tok.text != ")":
            spec.append(self.int_list("(", ")"))
            while self.accept(","):
                spec.append(self.int_list("(", ")"))
        if any(len(x) != 2 for x in spec):
            self.error("fact_prod entries are pairs (b, n)", t)
        spec = tuple(tuple(x) for x in spec)
        try:
            check_balanced(spec)
        except ValueError as exc:
            self.error(str(exc), t)
        return FactProd(spec)

    def call_apery(self, t) -> Expr:
        return Apery()

    def call_sum(self, t) -> Expr:
        return SumExpr(self.sum_args(t))

    def sum_args(self, t) -> Sum:
        var_tok = self.take(kind="name")
        var = var_tok.text
        if var == "p" or var in self.bound:
            self.error(f"summation variable {var!r} is already in use", var_tok)
        self.comma()
        lo = self.signed_int()
        self.comma()
        hi_var, hi_shift = self.upper_limit()
        self.comma()
        self.bound.append(var)
        try:
            body = self.body(var)
        finally:
            self.bound.pop()
        return Sum(var, lo, hi_var, hi_shift, body)

    def upper_limit(self) -> Tuple[Optional[str], int]:
        t = self.tok
        if t.kind == "name":
            self.i += 1
            name = t.text
            if name != "p" and name not in self.bound:
                self.error(f"upper limit uses unknown variable {name!r}", t)
            shift = 0
            if self.tok.text in ("+", "-"):
                sign = -1 if self.take().text == "-" else 1
                shift = sign * int(self.take(kind="int").text)
            if name != "p" and name != self.bound[-1]:
                self.error("a nested upper limit must use the innermost enclosing variable", t)
            return (None if name == "p" else name), shift
        if self.bound:
            self.error("a nested sum needs an upper limit of the form var+shift")
        return None, self.signed_int()

    def body(self, var: str) -> Tuple:
        factors = [self.factor(var)]
        while self.accept("*"):
            factors.append(self.factor(var))
        return tuple(f for f in factors if not (isinstance(f, Const) and f.value == 1))

    def factor(self, var: str):
        t = self.tok
        if t.kind == "int" or (t.kind == "op" and t.text in ("(", "-")):
            # rational constant, possibly parenthesized and signed
            paren = self.accept("(")
            neg = self.accept("-")
            num = int(self.take(kind="int").text)
            den = 1
            if self.accept("/"):
                den = int(self.take(kind="int").text)
                if den == 0:
                    self.error("division by zero", t)
            if paren:
                self.take(")")
            return Const(Fraction(-num if neg else num, den))
        name = self.take(kind="name")
        self.take("(")
        if name.text in ("BINp", "BINpn"):
            f = Binom("p" if name.text == "BINp" else "pn", self.signed_int())
        elif name.text == "inv":
            v = self.take(kind="name")
            if v.text != var:
                self.error(f"inv() must use the summation variable {var!r}", v)
            c = 0
            if self.tok.text in ("+", "-"):
                sign = -1 if self.take().text == "-" else 1
                c = sign * int(self.take(kind="int").text)
            f = InvShift(c)
        elif name.text == "pow":
            v = self.take(kind="name")
            self.comma()
            j = self.signed_int()
            if v.text == "p":
                f = PPow(j)
            elif v.text == var:
                f = VarPow(j)
            else:
                self.error(f"pow() takes p or {var!r}", v)
        elif name.text == "sum":
            f = self.sum_args(name)
        else:
            self.error(f"{name.text!r} is not a summand factor", name)
        self.take(")")
        if self.accept("^"):
            k_tok = self.tok
            k = int(self.take(kind="int").text)
            if isinstance(f, Binom):
                f = Binom(f.kind, f.shift, f.power * k)
            elif isinstance(f, InvShift):
                f = InvShift(f.c, f.power * k)
            elif isinstance(f, (VarPow, PPow)):
                f = type(f)(f.j * k)
            else:
                self.error("nested sums cannot be raised to a power", k_tok)
        return f


_CALLS = {
    "Hp": _Parser.call_hp,
    "HpolyPr": lambda self, t: self.call_hpoly(t, True),
    "Hpoly": lambda self, t: self.call_hpoly(t, False),
    "binom_pp": _Parser.call_binom,
    "fact_prod": _Parser.call_fact,
    "apery": _Parser.call_apery,
    "sum": _Parser.call_sum,
}


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# expansion and evaluation

def _expand_at(e: Expr, W: int) -> MHSSeries:
    if isinstance(e, Num):
        return MHSSeries.const(e.value)
    if isinstance(e, P):
        return MHSSeries.const(1).shift(1)
    if isinstance(e, Hp):
        return MHSSeries.H(*e.s)
    if isinstance(e, Hpoly):
        return expand_poly_mhs(e.coeffs, e.s, e.restricted, W)
    if isinstance(e, BinomPP):
        return binomial_mhs(e.k, e.r, W)
    if isinstance(e, FactProd):
        return factorial_product_mhs(e.spec, W)
    if isinstance(e, Apery):
        return 1 + expand_summand(APERY_SUM, W)
    if isinstance(e, SumExpr):
        return expand_summand(e.sum, W)
    if isinstance(e, Series):
        return e.series
    if isinstance(e, Add):
        return _expand_at(e.a, W) + _expand_at(e.b, W)
    if isinstance(e, Sub):
        return _expand_at(e.a, W) - _expand_at(e.b, W)
    if isinstance(e, Mul):
        return _expand_at(e.a, W) * _expand_at(e.b, W)
    if isinstance(e, Div):
        return _expand_at(e.a, W) * _inverse(_expand_at(e.b, W), W)
    if isinstance(e, Neg):
        return -_expand_at(e.a, W)
    if isinstance(e, Pow):
        base = _expand_at(e.a, W)
        return base ** e.n if e.n >= 0 else _inverse(base, W) ** (-e.n)
    raise TypeError(f"unknown node {e!r}")


def _inverse(x: MHSSeries, W: int) -> MHSSeries:
    if not x.terms:
        raise ZeroDivisionError("division by a series that vanishes to this order")
    # relative precision W is enough; the retry loop in expand() adds more
    return x.truncate(x.min_exponent + W).inverse()


def expand(e: Expr, order: int) -> MHSSeries:
    """MHSSeries of ``e`` modulo ``p^order``.

    Leaves are expanded with extra precision when products with negative
    p-powers would otherwise lose terms.
    """
    e = _wrap(e)
    W, last = order, None
    while True:
        res = _expand_at(e, W)
        if res.order >= order:
            return res.truncate(order)
        if last is not None and res.order <= last:
            raise ValueError(f"cannot expand to order {order}; a fixed series leaf is too short")
        last = res.order
        W += order - res.order


def lift(e: Expr, order: int) -> ASeries:
    return mhs_series_lift(expand(e, order), order)


def evaluate(e: Expr, p: int) -> Fraction:
    """Exact value of ``e`` at the prime ``p`` by direct summation."""
    e = _wrap(e)
    if isinstance(e, Num):
        return e.value
    if isinstance(e, P):
        return Fraction(p)
    if isinstance(e, Hp):
        return mhs_eval(p - 1, e.s)
    if isinstance(e, Hpoly):
        return evaluate_poly_mhs(e.coeffs, e.s, e.restricted, p)
    if isinstance(e, BinomPP):
        return Fraction(comb(e.k * p, e.r * p))
    if isinstance(e, FactProd):
        out = Fraction(1)
        for b, n in e.spec:
            out *= Fraction(factorial(b * p)) ** n
        return out
    if isinstance(e, Apery):
        return Fraction(sum(comb(p - 1, n) ** 2 * comb(p - 1 + n, n) ** 2 for n in range(p)))
    if isinstance(e, SumExpr):
        return evaluate_summand(e.sum, p)
    if isinstance(e, Series):
        return e.series.evaluate(p)
    if isinstance(e, Add):
        return evaluate(e.a, p) + evaluate(e.b, p)
    if isinstance(e, Sub):
        return evaluate(e.a, p) - evaluate(e.b, p)
    if isinstance(e, Mul):
        return evaluate(e.a, p) * evaluate(e.b, p)
    if isinstance(e, Div):
        return evaluate(e.a, p) / evaluate(e.b, p)
    if isinstance(e, Neg):
        return -evaluate(e.a, p)
    if isinstance(e, Pow):
        return evaluate(e.a, p) ** e.n
    raise TypeError(f"unknown node {e!r}")


ExprLike = Union[Expr, MHSSeries, Sum, int, Fraction]


def as_expr(x: ExprLike) -> Expr:
    if isinstance(x, str):
        return parse(x)
    return _wrap(x)
