"""Truncated Laurent series in T over the algebra of motivic MZVs mod zeta(2).

An :class:`ASeries` knows its coefficients exactly for every degree below
``order``; nothing at or above ``order`` is stored.  ``order`` may be
``math.inf`` for series known exactly (finite Laurent polynomials).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Mapping

from .mzv import AElement, BasisForm, RelationTable, _coerce

INF = math.inf


class NotAUnit(ArithmeticError):
    pass


class ASeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Mapping[int, object] | None = None, order=INF):
        clean: Dict[int, AElement] = {}
        for d, c in (coeffs or {}).items():
            if d >= order:
                continue
            c = _coerce(c)
            if c:
                clean[int(d)] = c
        object.__setattr__(self, "coeffs", {d: clean[d] for d in sorted(clean)})
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("ASeries is immutable")

    # constructors --------------------------------------------------------
    @classmethod
    def const(cls, c, order=INF) -> "ASeries":
        return cls({0: c}, order)

    @classmethod
    def monomial(cls, c, k: int, order=INF) -> "ASeries":
        """``c * T^k``."""
        return cls({k: c}, order)

    @property
    def min_degree(self):
        return next(iter(self.coeffs), self.order)

    def coeff(self, d: int) -> AElement:
        if d >= self.order:
            raise ValueError(f"degree {d} is beyond the truncation order {self.order}")
        return self.coeffs.get(d, AElement())

    def truncate(self, order) -> "ASeries":
        return ASeries(self.coeffs, min(order, self.order))

    def shift(self, k: int) -> "ASeries":
        """Multiply by ``T^k``."""
        return ASeries({d + k: c for d, c in self.coeffs.items()}, self.order + k)

    def map_coeffs(self, f) -> "ASeries":
        return ASeries({d: f(c) for d, c in self.coeffs.items()}, self.order)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _as_series(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out[d] + c if d in out else c
        return ASeries(out, order)

    __radd__ = __add__

    def __neg__(self):
        return ASeries({d: -c for d, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-_as_series(other))

    def __rsub__(self, other):
        return _as_series(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ASeries({d: c * other for d, c in self.coeffs.items()},
                           self.order if other else INF)
        return ser_mul(self, _as_series(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return ser_inv(self) ** (-n)
        acc = ASeries.const(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        """Raw word-form equality, including the truncation order."""
        if not isinstance(other, ASeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((tuple(self.coeffs.items()), self.order))

    def __repr__(self):
        body = " + ".join(f"({c!r})*T^{d}" for d, c in self.coeffs.items()) or "0"
        return f"ASeries({body} + O(T^{self.order}))"

    # reduction -----------------------------------------------------------
    def reduce(self, table: RelationTable) -> Dict[int, BasisForm]:
        """Basis form of every known coefficient, zeros dropped."""
        out = {}
        for d, c in self.coeffs.items():
            b = table.to_basis(c)
            if b:
                out[d] = b
        return out

    def equals(self, other: "ASeries", table: RelationTable, order=None) -> bool:
        """Equality modulo the table's relations up to the common order."""
        diff = self - other
        if order is not None:
            diff = diff.truncate(order)
        return not diff.reduce(table)


def _as_series(x) -> ASeries:
    if isinstance(x, ASeries):
        return x
    return ASeries.const(x)


def ser_add(x: ASeries, y: ASeries) -> ASeries:
    return x + y


def ser_mul(x: ASeries, y: ASeries) -> ASeries:
    order = min(x.min_degree + y.order, y.min_degree + x.order)
    out: Dict[int, AElement] = {}
    for i, a in x.coeffs.items():
        for j, b in y.coeffs.items():
            d = i + j
            if d >= order:
                break
            out[d] = out[d] + a * b if d in out else a * b
    return ASeries(out, order)


def ser_inv(x: ASeries) -> ASeries:
    """Multiplicative inverse; the lowest coefficient must be a nonzero rational."""
    if not x.coeffs:
        raise NotAUnit("zero series has no inverse")
    k = x.min_degree
    lead = x.coeffs[k]
    if not lead.is_rational():
        raise NotAUnit(f"lowest coefficient {lead!r} is not a rational constant")
    u = x.shift(-k)
    c0 = lead.rational_part()
    n = u.order  # u known to O(T^n)
    inv_c0 = 1 / c0
    v: Dict[int, AElement] = {0: AElement.const(inv_c0)}
    if n == INF:
        # exact input: an inverse is only finite for monomials
        if len(u.coeffs) == 1:
            return ASeries(v).shift(-k)
        raise ValueError("inverse of an exact non-monomial series needs a truncation order")
    for d in range(1, int(n)):
        acc = AElement()
        for i, ui in u.coeffs.items():
            if i == 0:
                continue
            if i > d:
                break
            if d - i in v:
                acc = acc + ui * v[d - i]
        v[d] = acc * (-inv_c0)
    return ASeries(v, n).shift(-k)


def filtration_degree(x: ASeries, table: RelationTable):
    """Least degree with a nonzero reduced coefficient, or ``inf``."""
    red = x.reduce(table)
    return min(red) if red else INF
