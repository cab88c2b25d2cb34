"""Deciding supercongruences by comparing motivic lifts.

Both sides of ``lhs == rhs mod p^n`` are expanded as MHS series, lifted,
and reduced to the relation table's basis degree by degree.  Equality of
all coefficients below ``T^n`` proves the congruence for all but finitely
many primes.  A nonzero difference refutes it only conditionally on the
period conjecture, and certificates say so.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

from .core import DenominatorDivisibleByP, valuation
from .expr import Expr, ExprLike, as_expr, evaluate, expand, to_text
from .mhs import MHSSeries
from .motivic import mhs_series_lift
from .mzv import BasisForm, RelationTable, WeightCapExceeded
from .render import mhs_to_json, reduced_to_json, render_mhs, render_reduced

CONDITIONAL_NOTE = ("conditional on the period conjecture: a nonzero reduced difference "
                    "means the congruence fails for infinitely many primes only if the "
                    "completed finite period map is injective")


@dataclass(frozen=True)
class Claim:
    lhs: Expr
    rhs: Expr
    modulus_exponent: int

    def __init__(self, lhs: ExprLike, rhs: ExprLike, modulus_exponent: int):
        if modulus_exponent < 1:
            raise ValueError("modulus exponent must be >= 1")
        object.__setattr__(self, "lhs", as_expr(lhs))
        object.__setattr__(self, "rhs", as_expr(rhs))
        object.__setattr__(self, "modulus_exponent", int(modulus_exponent))

    def text(self) -> str:
        return f"{_side_text(self.lhs)} == {_side_text(self.rhs)} mod p^{self.modulus_exponent}"

    def swapped(self) -> "Claim":
        return Claim(self.rhs, self.lhs, self.modulus_exponent)


def _side_text(e: Expr) -> str:
    try:
        return to_text(e)
    except ValueError:
        return render_mhs(e.series)


@dataclass
class Expansion:
    """One side of a claim at each stage of the pipeline."""
    mhs: MHSSeries
    reduced: Dict[int, BasisForm]


@dataclass
class Proven:
    claim: Claim
    lhs: Expansion
    rhs: Expansion


@dataclass
class NotProven:
    claim: Claim
    lhs: Expansion
    rhs: Expansion
    difference: Dict[int, BasisForm]

    @property
    def degree(self) -> int:
        return min(self.difference)

    @property
    def leading(self) -> BasisForm:
        return self.difference[self.degree]


@dataclass
class TableInsufficient:
    claim: Claim
    weight_needed: int
    detail: str


Verdict = Union[Proven, NotProven, TableInsufficient]


def _weight_needed(claim: Claim) -> int:
    """Largest weight among lift coefficients below ``T^n``."""
    n = claim.modulus_exponent
    w = 0
    for side in (claim.lhs, claim.rhs):
        for c, b, s in expand(side, n):
            if b < n:
                w = max(w, sum(s) + n - 1 - b)
    return w


def prove(claim: Claim, table: RelationTable) -> Verdict:
    n = claim.modulus_exponent
    sides = []
    try:
        for side in (claim.lhs, claim.rhs):
            m = expand(side, n)
            sides.append((m, mhs_series_lift(m, n)))
        reduced = [lift.reduce(table) for _, lift in sides]
        diff = (sides[0][1] - sides[1][1]).truncate(n).reduce(table)
    except WeightCapExceeded as exc:
        return TableInsufficient(claim, _weight_needed(claim), str(exc))
    lhs = Expansion(sides[0][0], reduced[0])
    rhs = Expansion(sides[1][0], reduced[1])
    if not diff:
        return Proven(claim, lhs, rhs)
    return NotProven(claim, lhs, rhs, diff)


# ---------------------------------------------------------------------------
# numeric evidence

@dataclass
class PrimeResult:
    p: int
    status: str  # "pass", "fail" or "skipped"
    valuation: Optional[float] = None
    reason: str = ""


@dataclass
class NumericReport:
    claim: Claim
    results: List[PrimeResult] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.results)

    @property
    def passed(self) -> int:
        return self.count("pass")

    @property
    def failed(self) -> int:
        return self.count("fail")

    @property
    def skipped(self) -> int:
        return self.count("skipped")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def failing_primes(self) -> List[int]:
        return [r.p for r in self.results if r.status == "fail"]

    def to_json(self) -> dict:
        return {
            "claim": self.claim.text(),
            "summary": {"pass": self.passed, "fail": self.failed, "skipped": self.skipped},
            "primes": [{"p": r.p, "status": r.status,
                        "valuation": None if r.valuation in (None, float("inf")) else r.valuation,
                        "reason": r.reason} for r in self.results],
        }

    def render(self) -> str:
        lines = [f"claim: {self.claim.text()}"]
        for r in self.results:
            if r.status == "skipped":
                lines.append(f"  p={r.p}: skipped ({r.reason})")
            else:
                v = "inf" if r.valuation == float("inf") else r.valuation
                lines.append(f"  p={r.p}: {r.status} (valuation of difference {v})")
        lines.append(f"summary: {self.passed} pass, {self.failed} fail, {self.skipped} skipped")
        return "\n".join(lines)


def check_prime(claim: Claim, p: int) -> PrimeResult:
    try:
        x, y = evaluate(claim.lhs, p), evaluate(claim.rhs, p)
    except (ZeroDivisionError, ValueError) as exc:
        return PrimeResult(p, "skipped", reason=str(exc))
    if x.denominator % p == 0 or y.denominator % p == 0:
        return PrimeResult(p, "skipped", reason=DenominatorDivisibleByP.__name__)
    v = valuation(x - y, p)
    return PrimeResult(p, "pass" if v >= claim.modulus_exponent else "fail", v)


def numeric_check(claim: Claim, primes: Sequence[int]) -> NumericReport:
    """Evaluate both sides exactly at each prime and test the congruence mod p^n."""
    return NumericReport(claim, [check_prime(claim, p) for p in primes])


# ---------------------------------------------------------------------------
# certificates

def _expansion_json(e: Expansion, order: int) -> dict:
    return {"mhs": mhs_to_json(e.mhs), "lift": reduced_to_json(e.reduced, order, "T")}


def certificate_json(v: Verdict, report: Optional[NumericReport] = None) -> dict:
    claim = v.claim
    n = claim.modulus_exponent
    out = {"claim": {"lhs": _side_text(claim.lhs), "rhs": _side_text(claim.rhs),
                     "modulus_exponent": n}}
    if isinstance(v, TableInsufficient):
        out["verdict"] = "TableInsufficient"
        out["weight_needed"] = v.weight_needed
        out["detail"] = v.detail
    else:
        out["lhs"] = _expansion_json(v.lhs, n)
        out["rhs"] = _expansion_json(v.rhs, n)
        if isinstance(v, Proven):
            out["verdict"] = "Proven"
            out["validity"] = "for all but finitely many primes p"
        else:
            out["verdict"] = "NotProven"
            out["difference"] = reduced_to_json(v.difference, n, "T")
            out["leading_degree"] = v.degree
            out["interpretation"] = CONDITIONAL_NOTE
    if report is not None:
        out["primes"] = report.to_json()
    return out


def certificate_render(v: Verdict, fmt: str = "plain", report: Optional[NumericReport] = None) -> str:
    if fmt == "json":
        return json.dumps(certificate_json(v, report), sort_keys=True, indent=2)
    claim = v.claim
    n = claim.modulus_exponent
    lines = [f"claim: {claim.text()}"]
    if isinstance(v, TableInsufficient):
        lines.append(f"verdict: TableInsufficient (needs weight {v.weight_needed}; {v.detail})")
        return "\n".join(lines)
    for name, side, expr in (("lhs", v.lhs, claim.lhs), ("rhs", v.rhs, claim.rhs)):
        lines.append(f"{name}: {_side_text(expr)}")
        lines.append(f"  MHS expansion: {render_mhs(side.mhs)}")
        lines.append(f"  lift: {render_reduced(side.reduced, n, 'T')}")
    lines.append("reduced coefficients:")
    for d in range(n):
        a = v.lhs.reduced.get(d, BasisForm())
        b = v.rhs.reduced.get(d, BasisForm())
        mark = "equal" if a == b else "differ"
        lines.append(f"  T^{d}: lhs {render_reduced({0: a}, float('inf'), 'T')} | "
                     f"rhs {render_reduced({0: b}, float('inf'), 'T')} | {mark}")
    if isinstance(v, Proven):
        lines.append(f"verdict: Proven mod p^{n}, valid for all but finitely many primes p")
    else:
        lead = render_reduced({0: v.leading}, float("inf"), "T")
        lines.append(f"verdict: NotProven; lhs - rhs has leading coefficient {lead} at T^{v.degree}")
        lines.append(f"interpretation: {CONDITIONAL_NOTE}")
    if report is not None:
        lines.append("numeric evidence (advisory):")
        lines.extend(report.render().splitlines()[1:])
    return "\n".join(lines)
