"""``fp``: command-line front end.

Exit codes: 0 success, 1 claim not proven or numerically refuted, 2 input
error, 3 relation-table error (including an insufficient weight cap).
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import primes_between
from .expr import Expr, ParseError, expand, lift, parse
from .galois import NotDepth1, degree0, delta, gm_act, granville_check
from .mzv import RelationTable, TableError, load_relation_table
from .poly import UnsupportedPolynomial
from .prover import Claim, NotProven, TableInsufficient, certificate_render, numeric_check, prove
from .render import render_mhs, render_reduced
from .summand import ResidualAlternatingSign, UnsupportedFactor

EXIT_OK, EXIT_NOT_PROVEN, EXIT_INPUT, EXIT_TABLE = 0, 1, 2, 3
DEFAULT_ORDER = 8
DEFAULT_PRIMES = (7, 97)


class InputError(ValueError):
    pass


@dataclass
class Config:
    command: str
    order: Optional[int] = None  # None: largest order <= DEFAULT_ORDER the table allows
    table_path: Optional[str] = None
    fmt: str = "plain"
    primes: Tuple[int, int] = DEFAULT_PRIMES
    modulus: Optional[int] = None
    motivic: bool = False

    def __post_init__(self):
        if self.order is not None and self.order < 1:
            raise InputError("--order must be >= 1")

    def table(self) -> RelationTable:
        path = self.table_path or os.environ.get("FP_TABLE")
        if not path:
            return load_relation_table()
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise TableError(f"cannot read table {path}: {exc.strerror}") from exc
        return load_relation_table(text)


def parse_primes(text: str) -> Tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise InputError(f"--primes expects LO..HI, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def parse_factorial_spec(text: str) -> Tuple[Tuple[int, int], ...]:
    body = text.strip()
    m = re.fullmatch(r"fact_prod\((.*)\)", body, re.S)
    if m:
        body = m.group(1)
    pairs = re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", body)
    if re.sub(r"\(\s*-?\d+\s*,\s*-?\d+\s*\)|[\s,]", "", body):
        raise InputError(f"factorial spec must be pairs (b, n), got {text!r}")
    return tuple((int(b), int(n)) for b, n in pairs)


# ---------------------------------------------------------------------------
# order selection

def _weight_offset(e: Expr) -> int:
    """``max(|s| - b)`` over the MHS terms: the T^d lift coefficient has weight offset + d."""
    m = expand(e, 1)
    return max((sum(s) - b for _, b, s in m), default=0)


def _pick_order(e: Expr, cfg: Config, t: RelationTable) -> int:
    if cfg.order is not None:
        return cfg.order
    return max(1, min(DEFAULT_ORDER, t.weight_cap - _weight_offset(e) + 1))


# ---------------------------------------------------------------------------
# commands

def cmd_mzv(e: Expr, cfg: Config) -> str:
    t = cfg.table()
    order = _pick_order(e, cfg, t)
    red = lift(e, order).reduce(t)
    var = "T" if cfg.motivic else "p"
    return render_reduced(red, order, var, cfg.fmt)


def cmd_mhs(e: Expr, cfg: Config) -> str:
    return render_mhs(expand(e, cfg.order or DEFAULT_ORDER), cfg.fmt)


def cmd_prove(lhs: Expr, rhs: Expr, n: int, cfg: Config) -> Tuple[str, int]:
    claim = Claim(lhs, rhs, n)
    v = prove(claim, cfg.table())
    code = EXIT_OK
    if isinstance(v, NotProven):
        code = EXIT_NOT_PROVEN
    elif isinstance(v, TableInsufficient):
        code = EXIT_TABLE
    return certificate_render(v, "json" if cfg.fmt == "json" else "plain"), code


def cmd_verify(lhs: Expr, rhs: Expr, n: int, primes: Sequence[int], cfg: Config) -> Tuple[str, int]:
    report = numeric_check(Claim(lhs, rhs, n), primes)
    text = json.dumps(report.to_json(), sort_keys=True, indent=2) if cfg.fmt == "json" \
        else report.render()
    return text, EXIT_OK if report.ok else EXIT_NOT_PROVEN


_ACTION = re.compile(r"(gm|delta):(-?\d+(?:/\d+)?)|degree0")


def cmd_galois(action: str, e: Expr, cfg: Config) -> str:
    """``action`` is ``gm:R``, ``delta:K`` or ``degree0``."""
    m = _ACTION.fullmatch(action.strip())
    if not m:
        raise InputError(f"galois action must be gm:R, delta:K or degree0, got {action!r}")
    t = cfg.table()
    order = _pick_order(e, cfg, t)
    x = lift(e, order)
    if m.group(0) == "degree0":
        y = degree0(x, t)
    elif m.group(1) == "gm":
        y = gm_act(Fraction(m.group(2)), x, t)
    else:
        k = Fraction(m.group(2))
        if k.denominator != 1:
            raise InputError("delta index must be an integer")
        y = delta(int(k), x, t)
    return render_reduced(y.reduce(t), order, "T", cfg.fmt)


def cmd_granville(spec, cfg: Config) -> str:
    res = granville_check(spec)
    if cfg.fmt == "json":
        return json.dumps({
            "spec": [list(x) for x in res.spec],
            "exponent": res.exponent,
            "degenerate": res.degenerate,
            "rhs": str(res.rhs),
            "power_sums": [{"m": m, "value": v} for m, v in res.power_sums],
            "statement": res.statement(),
            "trace": res.trace,
        }, sort_keys=True, indent=2)
    return "\n".join([res.statement()] + ["  " + ln for ln in res.trace])


# ---------------------------------------------------------------------------
# argument handling

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fp", description="Supercongruences via motivic lifts.")
    ap.add_argument("command", choices=["mzv", "mhs", "prove", "verify", "galois", "granville"])
    ap.add_argument("args", nargs="*", help="expressions (galois: ACTION EXPR; granville: SPEC)")
    ap.add_argument("--order", type=int, help="truncation order (default: 8, capped by the table)")
    ap.add_argument("--table", help="relation table path (default: $FP_TABLE or the bundled table)")
    ap.add_argument("--format", choices=["plain", "latex", "json"], default="plain")
    ap.add_argument("--primes", default=f"{DEFAULT_PRIMES[0]}..{DEFAULT_PRIMES[1]}",
                    help="prime range LO..HI for verify and prove")
    ap.add_argument("--mod", type=int, help="modulus exponent n for prove and verify")
    ap.add_argument("--motivic", action="store_true", help="render mzv output in T instead of p")
    return ap


_NARGS = {"mzv": 1, "mhs": 1, "prove": 2, "verify": 2, "galois": 2, "granville": 1}


def run(argv: Optional[List[str]] = None) -> Tuple[str, int]:
    ap = build_parser()
    ns = ap.parse_args(argv)
    cfg = Config(ns.command, ns.order, ns.table, ns.format, parse_primes(ns.primes), ns.mod,
                 ns.motivic)
    want = _NARGS[ns.command]
    if ns.command == "granville" and not ns.args:
        ns.args = [""]
    if len(ns.args) != want:
        raise InputError(f"{ns.command} takes {want} argument(s), got {len(ns.args)}")
    if ns.command == "granville":
        return cmd_granville(parse_factorial_spec(ns.args[0]), cfg), EXIT_OK
    if ns.command == "galois":
        return cmd_galois(ns.args[0], parse(ns.args[1]), cfg), EXIT_OK
    exprs = [parse(a) for a in ns.args]
    if ns.command == "mzv":
        return cmd_mzv(exprs[0], cfg), EXIT_OK
    if ns.command == "mhs":
        return cmd_mhs(exprs[0], cfg), EXIT_OK
    if cfg.modulus is None or cfg.modulus < 1:
        raise InputError(f"{ns.command} needs --mod N with N >= 1")
    if ns.command == "prove":
        return cmd_prove(exprs[0], exprs[1], cfg.modulus, cfg)
    return cmd_verify(exprs[0], exprs[1], cfg.modulus, primes_between(*cfg.primes), cfg)


INPUT_ERRORS = (InputError, ParseError, UnsupportedFactor, UnsupportedPolynomial,
                ResidualAlternatingSign, NotDepth1, ValueError, ZeroDivisionError)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        out, code = run(argv)
    except TableError as exc:
        print(f"fp: table error: {exc}", file=sys.stderr)
        return EXIT_TABLE
    except ParseError as exc:
        print(f"fp: parse error at line {exc.line}, column {exc.col}: {exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        print(f"fp: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
