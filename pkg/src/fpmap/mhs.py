"""Canonical p-power series of multiple harmonic sums.

An :class:`MHSSeries` stands for ``sum c * p^b * H_{p-1}(s)`` with every
term of p-exponent ``b >= order`` discarded.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterator, Tuple

from .core import Composition, lc_add, mhs_eval, stuffle

INF = math.inf

Key = Tuple[int, Composition]  # (p-exponent, composition)


class MHSSeries:
    __slots__ = ("terms", "order")

    def __init__(self, terms=None, order=INF):
        clean: Dict[Key, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for key, c in items:
            b, s = key
            if b >= order:
                continue
            s = tuple(s)
            if any(x < 1 for x in s):
                raise ValueError(f"MHSSeries needs positive parts, got {s}")
            lc_add(clean, (int(b), s), Fraction(c))
        object.__setattr__(self, "terms", {k: clean[k] for k in sorted(clean)})
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("MHSSeries is immutable")

    @classmethod
    def from_list(cls, triples, order=INF) -> "MHSSeries":
        """From ``(c, b, s)`` triples."""
        out: Dict[Key, Fraction] = {}
        for c, b, s in triples:
            if b < order:
                lc_add(out, (b, tuple(s)), Fraction(c))
        return cls(out, order)

    @classmethod
    def const(cls, c, order=INF) -> "MHSSeries":
        return cls({(0, ()): c}, order)

    @classmethod
    def H(cls, *s, order=INF) -> "MHSSeries":
        return cls({(0, tuple(s)): 1}, order)

    def __iter__(self) -> Iterator[Tuple[Fraction, int, Composition]]:
        for (b, s), c in self.terms.items():
            yield c, b, s

    def __len__(self):
        return len(self.terms)

    @property
    def min_exponent(self):
        return min((b for b, _ in self.terms), default=self.order)

    def truncate(self, order) -> "MHSSeries":
        return MHSSeries(self.terms, min(order, self.order))

    def shift(self, k: int) -> "MHSSeries":
        """Multiply by ``p^k``."""
        return MHSSeries({(b + k, s): c for (b, s), c in self.terms.items()}, self.order + k)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _as_mhs(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            lc_add(out, k, c)
        return MHSSeries(out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return MHSSeries({k: -c for k, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-_as_mhs(other))

    def __rsub__(self, other):
        return _as_mhs(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MHSSeries({k: c * other for k, c in self.terms.items()},
                             self.order if other else INF)
        other = _as_mhs(other)
        # valuation bookkeeping assumes H_{p-1}(s) is p-integral
        order = min(self.min_exponent + other.order, other.min_exponent + self.order)
        out: Dict[Key, Fraction] = {}
        for (b1, s1), c1 in self.terms.items():
            for (b2, s2), c2 in other.terms.items():
                b = b1 + b2
                if b >= order:
                    continue
                for s, c in stuffle(s1, s2).items():
                    lc_add(out, (b, s), c1 * c2 * c)
        return MHSSeries(out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = MHSSeries.const(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self) -> "MHSSeries":
        """Inverse of ``c p^b (1 + x)`` where every term of ``x`` has p-exponent >= 1."""
        if not self.terms:
            raise ZeroDivisionError("zero MHSSeries")
        b0 = self.min_exponent
        lead = self.terms.get((b0, ()))
        if lead is None or any(b == b0 and s for (b, s) in self.terms):
            raise ValueError("leading p-power coefficient must be a rational constant")
        x = self.shift(-b0) * (1 / lead) - 1
        if any(b < 1 for b, _ in x.terms):
            raise ValueError("non-leading terms must carry a positive power of p")
        n = x.order
        if n == INF:
            if x.terms:
                raise ValueError("inverse of an exact series needs a truncation order")
            return MHSSeries.const(1 / lead).shift(-b0)
        acc = MHSSeries.const(1, order=n)
        power = MHSSeries.const(1)
        for _ in range(int(n)):
            power = (power * -x).truncate(n)
            if not power.terms:
                break
            acc = acc + power
        return (acc * (1 / lead)).shift(-b0)

    def __eq__(self, other):
        if not isinstance(other, MHSSeries):
            return NotImplemented
        return self.terms == other.terms and self.order == other.order

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.order))

    def __repr__(self):
        body = " + ".join(f"{c}*p^{b}*H{s}" for (b, s), c in self.terms.items()) or "0"
        return f"MHSSeries({body} + O(p^{self.order}))"

    # evaluation ----------------------------------------------------------
    def evaluate(self, p: int) -> Fraction:
        """Numeric value of the finite sum at a prime ``p``."""
        total = Fraction(0)
        for (b, s), c in self.terms.items():
            total += c * Fraction(p) ** b * mhs_eval(p - 1, s)
        return total


def _as_mhs(x) -> MHSSeries:
    if isinstance(x, MHSSeries):
        return x
    if isinstance(x, (int, Fraction)):
        return MHSSeries.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to MHSSeries")
