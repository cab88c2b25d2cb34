"""Depth-1 Galois action: weight grading, the G_m action, and derivations delta_k.

Everything acts on reduced basis forms.  The weight grading scales a
weight-d monomial by ``r^d`` (T is fixed); ``delta_k`` is the partial
derivative with respect to the generator ``zeta(k)`` and is only defined
when no depth-2 generator occurs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .motivic import (check_balanced, motivic_binomial, motivic_c, motivic_factorial_product,
                      motivic_mhs)
from .mzv import BasisForm, RelationTable, mono_weight
from .series import ASeries


class NotDepth1(ValueError):
    """A series whose reduction involves a generator of depth >= 2."""


def _check_k(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"delta_k needs odd k >= 3, got {k}")


def _from_reduced(red: Dict[int, BasisForm], order, t: RelationTable) -> ASeries:
    return ASeries({d: t.from_basis(b) for d, b in red.items()}, order)


def gm_act(r, x: ASeries, t: RelationTable) -> ASeries:
    """``r o x``: scale each weight-d part by ``r^d``; ``r = 0`` gives the degree-0 part."""
    r = Fraction(r)
    out = {}
    for d, b in x.reduce(t).items():
        out[d] = BasisForm({m: c * r ** mono_weight(m) for m, c in b.terms.items()})
    return _from_reduced(out, x.order, t)


def degree0(x: ASeries, t: RelationTable) -> ASeries:
    return gm_act(0, x, t)


def is_depth1(x: ASeries, t: RelationTable) -> bool:
    return all(len(g) == 1 for b in x.reduce(t).values() for g in b.generators())


def delta(k: int, x: ASeries, t: RelationTable) -> ASeries:
    """``delta_k x``: coefficientwise ``d/d zeta(k)``."""
    _check_k(k)
    out = {}
    gen = (k,)
    for d, b in x.reduce(t).items():
        acc: Dict[tuple, Fraction] = {}
        for m, c in b.terms.items():
            if any(len(g) > 1 for g in m):
                raise NotDepth1(f"T^{d} coefficient involves {[g for g in m if len(g) > 1]}")
            e = m.count(gen)
            if e:
                rest = list(m)
                rest.remove(gen)
                key = tuple(rest)
                acc[key] = acc.get(key, 0) + c * e
        if acc:
            out[d] = BasisForm(acc)
    return _from_reduced(out, x.order, t)


@dataclass
class CheckReport:
    ok: bool
    name: str
    lhs: Dict[int, BasisForm] = field(default_factory=dict)
    rhs: Dict[int, BasisForm] = field(default_factory=dict)
    order: int = 0

    def __bool__(self):
        return self.ok


def _compare(name: str, lhs: ASeries, rhs: ASeries, order: int, t: RelationTable) -> CheckReport:
    lhs, rhs = lhs.truncate(order), rhs.truncate(order)
    ok = (lhs - rhs).truncate(order).reduce(t) == {}
    return CheckReport(ok, name, lhs.reduce(t), rhs.reduce(t), min(order, lhs.order, rhs.order))


def _clamp(order: int, offset: int, t: RelationTable) -> int:
    """Largest usable order when the ``T^d`` coefficient has weight ``offset + d``."""
    return max(0, min(order, t.weight_cap - offset + 1))


def _ones(n: int, order: int) -> ASeries:
    return motivic_mhs((1,) * n, order)


def delta_closed_form_check(k: int, target: Tuple, order: int, t: RelationTable) -> CheckReport:
    """Compare ``delta_k`` of a lift with its closed form through ``T^order``.

    ``target`` is one of ``("H", n)``, ``("H1", n)``, ``("c", n)``,
    ``("binom", a, b)`` or ``("fact", spec)``.
    """
    _check_k(k)
    kind = target[0]
    offset = target[1] if kind in ("H", "H1") else 0
    order = _clamp(order, offset, t)
    T_k = ASeries.monomial(1, k)
    if kind == "H":
        n = target[1]
        lift = motivic_mhs((n,), order)
        rhs = ASeries({k - n: (-1) ** n * comb(k - 1, n - 1)} if k > n else {}, order)
    elif kind == "H1":
        n = target[1]
        lift = _ones(n, order)
        rhs = ASeries({}, order)
        for i in range(max(1, k - n), k):
            rhs = rhs - _ones(n - k + i, order).shift(i) * Fraction(comb(k, i), k)
    elif kind == "c":
        n = target[1]
        lift = motivic_c(n, order)
        rhs = T_k * lift * Fraction(-(n ** k - (n - 1) ** k - 1), k)
    elif kind == "binom":
        a, b = target[1], target[2]
        lift = motivic_binomial(a, b, order)
        rhs = T_k * lift * Fraction(-(a ** k - b ** k - (a - b) ** k), k)
    elif kind == "fact":
        spec = tuple(target[1])
        lift = motivic_factorial_product(spec, order)
        rhs = T_k * lift * Fraction(-sum(n * b ** k for b, n in spec), k)
    else:
        raise ValueError(f"unknown closed-form target {target!r}")
    return _compare(f"delta_{k} {target}", delta(k, lift, t), rhs, order, t)


def gm_identity_check(r: int, which: str, params: Tuple, order: int, t: RelationTable) -> CheckReport:
    """Compare ``r o (lift)`` with the finite-sum side of the G_m identities.

    ``which`` is ``"power"`` (params ``(n,)``), ``"elementary"`` (``(n,)``),
    ``"c"`` (``(n,)``), ``"binom"`` (``(a, b)``) or ``"fact"`` (``(spec,)``).
    """
    from .motivic import mhs_series_lift
    from .poly import expand_poly_mhs

    if r < 1:
        raise ValueError("r must be a positive integer")
    if which in ("power", "elementary"):
        n = params[0]
        s = (n,) if which == "power" else (1,) * n
        order = _clamp(order, sum(s), t)
        lhs = motivic_mhs(s, order)
        rhs = mhs_series_lift(expand_poly_mhs([0, r], s, True, order), order) * (r ** sum(s))
    elif which == "c":
        n = params[0]
        lhs = motivic_c(n, order)
        rhs = motivic_binomial(r * n, r, order) * Fraction(n, comb(r * n, r))
    elif which == "binom":
        a, b = params
        lhs = motivic_binomial(a, b, order)
        rhs = motivic_binomial(r * a, r * b, order) * Fraction(comb(a, b), comb(r * a, r * b))
    elif which == "fact":
        spec = tuple(params[0])
        lhs = motivic_factorial_product(spec, order)
        # prod (b! r!^b / (rb)!)^n * (rbp)!^n, the latter as a balanced product
        const = Fraction(1)
        for b, n in spec:
            const *= Fraction(factorial(b) * factorial(r) ** b, factorial(r * b)) ** n
        rhs = motivic_factorial_product(tuple((r * b, n) for b, n in spec), order) * const
    else:
        raise ValueError(f"unknown identity {which!r}")
    return _compare(f"r={r} {which} {params}", gm_act(r, lhs, t), rhs, order, t)


# ---------------------------------------------------------------------------
# factorial congruences

@dataclass
class GranvilleResult:
    spec: Tuple[Tuple[int, int], ...]
    exponent: Optional[int]  # None when every power sum vanishes
    rhs: Fraction
    power_sums: List[Tuple[int, int]]
    trace: List[str]

    @property
    def degenerate(self) -> bool:
        return self.exponent is None

    def statement(self) -> str:
        lhs = " * ".join(_fact_str(b, n) for b, n in self.spec) or "1"
        if self.degenerate:
            return f"{lhs} = {self.rhs} exactly (all odd power sums vanish)"
        return f"{lhs} == {self.rhs} mod p^{self.exponent}"


def granville_check(spec: Sequence[Tuple[int, int]]) -> GranvilleResult:
    """Largest ``n`` with ``sum n_i b_i^m = 0`` for ``m = 1, 3, ..., 2n-1`` and the congruence it gives."""
    spec = tuple((int(b), int(n)) for b, n in spec)
    check_balanced(spec)
    rhs = Fraction(1)
    for b, n in spec:
        rhs *= Fraction(factorial(b)) ** n
    combined: Dict[int, int] = {}
    for b, n in spec:
        combined[b] = combined.get(b, 0) + n
    combined = {b: n for b, n in combined.items() if n}
    trace = [f"sum n_i b_i = 0, so the product lies in the MHS algebra; degree-0 part {rhs}"]
    sums: List[Tuple[int, int]] = []
    if not combined:
        trace.append("every odd power sum vanishes; the product is identically the constant")
        return GranvilleResult(spec, None, rhs, sums, trace)
    m = 1
    while True:
        ps = sum(n * b ** m for b, n in combined.items())
        sums.append((m, ps))
        if ps:
            break
        m += 2
    n = (m - 1) // 2  # power sums vanish for 1, 3, ..., m-2
    for mm, ps in sums[:-1]:
        if mm > 1:
            trace.append(f"m={mm}: sum n_i b_i^{mm} = 0, so delta_{mm} kills the lift")
    trace.append(f"m={m}: sum n_i b_i^{m} = {sums[-1][1]} != 0, "
                 f"so delta_{m} of the lift is {Fraction(-sums[-1][1], m)} T^{m} times the lift")
    trace.append("each delta_j of a binomial lift lies in Fil^j, so every delta of the lift "
                 f"lies in Fil^{2 * n + 1}")
    trace.append(f"hence the lift is its degree-0 part {rhs} modulo Fil^{2 * n + 1}; "
                 f"applying the period map gives the congruence mod p^{2 * n + 1}")
    return GranvilleResult(spec, 2 * n + 1, rhs, sums, trace)


def _fact_str(b: int, n: int) -> str:
    f = "p!" if b == 1 else f"({b}p)!"
    return f if n == 1 else f"{f}^{n}"
