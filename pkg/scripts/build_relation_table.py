"""Offline generator for the shipped MZV relation table (mod zeta(2)).

Solves the finite double shuffle relations plus Hoffman's relation in each
weight, expresses every admissible word in a polynomial basis of the full
algebra (zeta(2), zeta(3), zeta(5), zeta(7), zeta(5,3)), then kills every
monomial containing zeta(2).  Usage::

    python scripts/build_relation_table.py > src/fpmap/data/weight8.table
"""
from __future__ import annotations

import sys
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fpmap.core import compositions, lc_add, shuffle, stuffle  # noqa: E402
from fpmap.linalg import inverse, rref  # noqa: E402

CAP = 8
# generators of the full algebra through weight 8; zeta(2) is killed afterwards
GENERATORS = [(2,), (3,), (5,), (7,), (5, 3)]
ZAGIER = {0: 1, 1: 0, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 3, 8: 4}


def admissible(w):
    return [s for s in compositions(w) if s[0] >= 2]


def monomials(w):
    """Multisets of generators of total weight w."""
    out = []
    for k in range(1, w // 2 + 1):
        for combo in combinations_with_replacement(GENERATORS, k):
            if sum(sum(g) for g in combo) == w:
                out.append(tuple(sorted(combo)))
    return out


def product_words(mono):
    acc = {(): Fraction(1)}
    for g in mono:
        nxt: dict = {}
        for word, c in acc.items():
            for w2, c2 in stuffle(word, g).items():
                lc_add(nxt, w2, c * c2)
        acc = nxt
    return acc


def relations(w):
    rels = []
    for wa in range(2, w - 1):
        for a in admissible(wa):
            for b in admissible(w - wa):
                if (wa, a) > (w - wa, b):
                    continue
                rel: dict = {}
                for s, c in stuffle(a, b).items():
                    lc_add(rel, s, c)
                for s, c in shuffle(a, b).items():
                    lc_add(rel, s, -c)
                rels.append(rel)
    for b in admissible(w - 1):
        rel = {}
        for s, c in stuffle((1,), b).items():
            lc_add(rel, s, c)
        for s, c in shuffle((1,), b).items():
            lc_add(rel, s, -c)
        assert all(s[0] >= 2 for s in rel), rel
        rels.append(rel)
    return rels


def reduce_weight(w):
    words = admissible(w)
    index = {s: i for i, s in enumerate(words)}
    rows = [[rel.get(s, 0) for s in words] for rel in relations(w)]
    red, piv = rref(rows, len(words)) if rows else ([], [])
    free = [i for i in range(len(words)) if i not in piv]
    if len(free) != ZAGIER[w]:
        raise SystemExit(f"weight {w}: quotient dimension {len(free)} != {ZAGIER[w]}")

    def coords(lc):
        vec = [Fraction(0)] * len(free)
        for s, c in lc.items():
            i = index[s]
            if i in free:
                vec[free.index(i)] += c
            else:
                row = red[piv.index(i)]
                for k, f in enumerate(free):
                    vec[k] -= c * row[f]
        return vec

    monos = monomials(w)
    assert len(monos) == len(free)
    mat = [coords(product_words(m)) for m in monos]  # rows: monomials
    # word coords = x * mat  ->  x = coords * mat^{-1}
    inv = inverse(mat)
    out = {}
    for s in words:
        v = coords({s: 1})
        x = [sum(v[k] * inv[k][j] for k in range(len(free))) for j in range(len(monos))]
        out[s] = {m: c for m, c in zip(monos, x) if c and (2,) not in m}
    return out


def fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def main():
    print("# Motivic MZV reductions modulo zeta(2), generated offline by")
    print("# scripts/build_relation_table.py (double shuffle + Hoffman relation).")
    print(f"basis W={CAP}")
    for w in range(3, CAP + 1):
        for m in monomials(w):
            if (2,) in m or len(m) != 1:
                continue
            print(f"g {w} ({','.join(map(str, m[0]))})")
    for w in range(2, CAP + 1):
        print(f"dim {w} {ZAGIER[w] - ZAGIER[w - 2]}")
    for w in range(2, CAP + 1):
        for s, red in reduce_weight(w).items():
            terms = []
            for m, c in sorted(red.items()):
                gens = "*".join(f"z({','.join(map(str, g))})" for g in m)
                terms.append(f"{'-' if c < 0 else '+'} {fmt_frac(abs(c))} * {gens}")
            rhs = " ".join(terms) if terms else "0"
            if rhs.startswith("+ "):
                rhs = rhs[2:]
            print(f"({','.join(map(str, s))}) = {rhs}")


if __name__ == "__main__":
    main()
