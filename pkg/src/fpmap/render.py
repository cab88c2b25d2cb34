"""Text, LaTeX and JSON renderings of reduced series and MHS series.

Plain output follows the notation ``-9/2*zp(3)^2 + 67/16*p*zp(7) +
p^2*(zp(5,3) + 23/2*zp(3)*zp(5)) + O(p^3)``: one group per power of the
variable, monomials ordered by weight, then number of factors, then
lexicographically.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import groupby
from typing import Dict, List, Tuple

from .mhs import MHSSeries
from .mzv import BasisForm, Monomial, mono_key

INF = float("inf")


def frac_text(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _gen_text(g: Tuple[int, ...], zeta: str, latex: bool) -> str:
    return f"{zeta}({','.join(map(str, g))})"


def _mono_factors(m: Monomial, zeta: str, latex: bool) -> List[str]:
    out = []
    for g, run in groupby(m):
        k = len(list(run))
        base = _gen_text(g, zeta, latex)
        if k > 1:
            base = f"{base}^{{{k}}}" if latex else f"{base}^{k}"
        out.append(base)
    return out


def _var_power(var: str, d: int, latex: bool) -> str:
    if d == 1:
        return var
    return f"{var}^{{{d}}}" if latex else f"{var}^{d}"


def _signed_terms(pieces: List[Tuple[Fraction, List[str]]], latex: bool) -> str:
    """Join ``(coeff, factors)`` pairs as ``a + b - c``; a unit coefficient is dropped."""
    mul = " " if latex else "*"
    out = []
    for i, (c, factors) in enumerate(pieces):
        mag = abs(c)
        if latex and mag.denominator != 1:
            num = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        else:
            num = frac_text(mag)
        body = mul.join(factors) if mag == 1 and factors else mul.join([num] + factors)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def render_reduced(red: Dict[int, BasisForm], order, var: str = "p", fmt: str = "plain") -> str:
    """Render ``sum_d red[d] * var^d + O(var^order)``."""
    if fmt == "json":
        return json.dumps(reduced_to_json(red, order, var), sort_keys=True, indent=2)
    latex = fmt == "latex"
    zeta = ("\\zeta_p" if var == "p" else "\\zeta") if latex else ("zp" if var == "p" else "z")
    pieces: List[Tuple[Fraction, List[str]]] = []
    for d in sorted(red):
        b = red[d]
        monos = sorted(b.terms, key=mono_key)
        vp = [_var_power(var, d, latex)] if d else []
        if len(monos) == 1 or d == 0:
            for m in monos:
                pieces.append((b.terms[m], vp + _mono_factors(m, zeta, latex)))
        else:
            inner = _signed_terms([(b.terms[m], _mono_factors(m, zeta, latex)) for m in monos], latex)
            group = f"\\left({inner}\\right)" if latex else f"({inner})"
            pieces.append((Fraction(1), vp + [group]))
    text = _signed_terms(pieces, latex) or "0"
    if order != INF:
        tail = f"O({_var_power(var, order, latex)})"
        text += f" + {tail}"
    return text


def reduced_to_json(red: Dict[int, BasisForm], order, var: str = "p") -> dict:
    return {
        "variable": var,
        "order": None if order == INF else order,
        "coefficients": [
            {"degree": d,
             "terms": [{"coeff": frac_text(red[d].terms[m]), "monomial": [list(g) for g in m]}
                       for m in sorted(red[d].terms, key=mono_key)]}
            for d in sorted(red)],
    }


def render_mhs(x: MHSSeries, fmt: str = "plain") -> str:
    """Render ``sum c * p^b * H_{p-1}(s)``; the plain form parses as an expression."""
    if fmt == "json":
        return json.dumps(mhs_to_json(x), sort_keys=True, indent=2)
    latex = fmt == "latex"
    pieces = []
    for (b, s), c in sorted(x.terms.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), kv[0][1])):
        factors = []
        if b:
            factors.append(_var_power("p", b, latex))
        if s:
            args = ",".join(map(str, s))
            factors.append(f"H_{{p-1}}({args})" if latex else f"Hp({args})")
        pieces.append((c, factors))
    text = _signed_terms(pieces, latex) or "0"
    if x.order != INF:
        text += f" + O({_var_power('p', x.order, latex)})"
    return text


def mhs_to_json(x: MHSSeries) -> dict:
    return {
        "order": None if x.order == INF else x.order,
        "terms": [{"p_power": b, "composition": list(s), "coeff": frac_text(c)}
                  for (b, s), c in x.terms.items()],
    }
