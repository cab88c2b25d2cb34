"""Motivic multiple zeta values modulo zeta(2).

Elements of the algebra are kept in *word form*: a linear combination of
admissible compositions (first part >= 2), with the empty composition
standing for 1.  Multiplication is the stuffle product.  Relations between
words enter only through a :class:`RelationTable`, which maps every word of
weight <= W to a polynomial in a fixed set of generators (a
:class:`BasisForm`).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Tuple

from .core import Composition, compositions, lc_add, stuffle

Monomial = Tuple[Composition, ...]  # sorted multiset of generator words

DEFAULT_TABLE = Path(__file__).with_name("data") / "weight8.table"


class TableError(Exception):
    """Base class for relation-table problems (CLI exit code 3)."""


class ParseError(TableError, ValueError):
    pass


class HomogeneityViolation(TableError):
    pass


class IncompleteTable(TableError):
    pass


class WeightCapExceeded(TableError):
    pass


class MissingReduction(TableError):
    pass


# ---------------------------------------------------------------------------
# regularization

@lru_cache(maxsize=None)
def _regularize(w: Composition) -> Tuple[Tuple[Composition, Fraction], ...]:
    if not w or w[0] >= 2:
        return ((w, Fraction(1)),)
    # a * Z(1^a, v) = Z(1) Z(1^{a-1}, v) - (terms with fewer leading 1s), Z(1) = 0
    a = next((i for i, x in enumerate(w) if x != 1), len(w))
    out: Dict[Composition, Fraction] = {}
    for word, c in stuffle((1,), w[1:]).items():
        if word == w:
            assert c == a
            continue
        for adm, c2 in _regularize(word):
            lc_add(out, adm, -c * c2 / a)
    return tuple(sorted(out.items()))


def regularize(w: Iterable[int]) -> Dict[Composition, Fraction]:
    """Stuffle-regularized value of a word with the convention zeta*(1) = 0.

    >>> regularize((1, 2))
    {(2, 1): Fraction(-1, 1), (3,): Fraction(-1, 1)}
    """
    w = tuple(w)
    if any(x < 1 for x in w):
        raise ValueError(f"parts must be >= 1: {w}")
    return dict(_regularize(w))


# ---------------------------------------------------------------------------
# word form

class AElement:
    """Element of the algebra in word form (immutable)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Dict[Composition, Fraction] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if w and w[0] < 2:
                raise ValueError(f"non-admissible word {w}; regularize first")
            lc_add(clean, w, Fraction(c))
        object.__setattr__(self, "terms", {w: clean[w] for w in sorted(clean)})

    def __setattr__(self, name, value):
        raise AttributeError("AElement is immutable")

    @classmethod
    def zeta(cls, *s) -> "AElement":
        """``zeta(s)``, regularized if s starts with 1."""
        return cls(regularize(s))

    @classmethod
    def const(cls, c) -> "AElement":
        return cls({(): Fraction(c)}) if c else cls()

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            lc_add(out, w, c)
        return AElement(out)

    __radd__ = __add__

    def __neg__(self):
        return AElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AElement({w: c * other for w, c in self.terms.items()})
        return a_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.terms == _coerce(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "AElement(0)"
        parts = [f"{c}*z{w}" if w else str(c) for w, c in self.terms.items()]
        return "AElement(" + " + ".join(parts) + ")"

    # structure -----------------------------------------------------------
    def is_rational(self) -> bool:
        return all(not w for w in self.terms)

    def rational_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def weights(self) -> set:
        return {sum(w) for w in self.terms}


def _coerce(x) -> AElement:
    if isinstance(x, AElement):
        return x
    if isinstance(x, (int, Fraction)):
        return AElement.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to AElement")


def a_mul(x: AElement, y: AElement) -> AElement:
    """Stuffle product extended bilinearly."""
    x, y = _coerce(x), _coerce(y)
    out: Dict[Composition, Fraction] = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            for w, c in stuffle(w1, w2).items():
                lc_add(out, w, c1 * c2 * c)
    return AElement(out)


def weight_components(x: AElement) -> Dict[int, AElement]:
    comps: Dict[int, Dict[Composition, Fraction]] = {}
    for w, c in x.terms.items():
        comps.setdefault(sum(w), {})[w] = c
    return {k: AElement(v) for k, v in sorted(comps.items())}


# ---------------------------------------------------------------------------
# basis form

def mono_weight(m: Monomial) -> int:
    return sum(sum(g) for g in m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def mono_key(m: Monomial):
    """Display order: weight, then number of factors, then lexicographic."""
    return (mono_weight(m), len(m), m)


class BasisForm:
    """Polynomial in the table's generators with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            lc_add(clean, tuple(sorted(tuple(g) for g in m)), Fraction(c))
        object.__setattr__(self, "terms", {m: clean[m] for m in sorted(clean)})

    def __setattr__(self, name, value):
        raise AttributeError("BasisForm is immutable")

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in _bf(other).terms.items():
            lc_add(out, m, c)
        return BasisForm(out)

    __radd__ = __add__

    def __neg__(self):
        return BasisForm({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_bf(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BasisForm({m: c * other for m, c in self.terms.items()})
        other = _bf(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                lc_add(out, mono_mul(m1, m2), c1 * c2)
        return BasisForm(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.terms == _bf(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "BasisForm(0)"
        return "BasisForm(" + " + ".join(
            f"{c}*" + "*".join(f"z{g}" for g in m) if m else str(c)
            for m, c in self.terms.items()) + ")"

    def weight_components(self) -> Dict[int, "BasisForm"]:
        comps: Dict[int, dict] = {}
        for m, c in self.terms.items():
            comps.setdefault(mono_weight(m), {})[m] = c
        return {k: BasisForm(v) for k, v in sorted(comps.items())}

    def generators(self) -> set:
        return {g for m in self.terms for g in m}


def _bf(x) -> BasisForm:
    if isinstance(x, BasisForm):
        return x
    if isinstance(x, (int, Fraction)):
        return BasisForm({(): x})
    raise TypeError(f"cannot coerce {type(x).__name__} to BasisForm")


# ---------------------------------------------------------------------------
# relation table

_ENTRY = re.compile(r"^\(([\d,\s]*)\)\s*=\s*(.*)$")
_TERM = re.compile(r"([+-])?\s*(\d+(?:/\d+)?)\s*(?:\*\s*((?:z\([\d,\s]+\)\s*\*?\s*)+))?")
_GEN = re.compile(r"z\(([\d,\s]+)\)")


def _parts(text: str) -> Composition:
    text = text.strip()
    return tuple(int(x) for x in text.split(",")) if text else ()


class RelationTable:
    """Reductions of every admissible word of weight <= ``weight_cap``."""

    def __init__(self, weight_cap: int, generators: List[Composition],
                 dims: Dict[int, int], reductions: Dict[Composition, BasisForm]):
        self.weight_cap = weight_cap
        self.generators = [tuple(g) for g in generators]
        self.dims = dict(dims)
        self.reductions = dict(reductions)
        self._validate()

    def _validate(self) -> None:
        for w, red in self.reductions.items():
            if not w or w[0] < 2:
                raise ParseError(f"non-admissible entry {w}")
            for m in red.terms:
                if mono_weight(m) != sum(w):
                    raise HomogeneityViolation(f"entry {w} has a term of weight {mono_weight(m)}")
                for g in m:
                    if g not in self.generators:
                        raise ParseError(f"entry {w} uses undeclared generator {g}")
        for k in range(2, self.weight_cap + 1):
            for s in compositions(k):
                if s[0] >= 2 and s not in self.reductions:
                    raise IncompleteTable(f"missing reduction for {s}")
            if k % 2 == 0 and self.reductions[(k,)]:
                raise HomogeneityViolation(f"zeta({k}) must reduce to 0")
        for k, d in self.dims.items():
            if len(self.monomials(k)) != d:
                raise IncompleteTable(f"weight {k}: {len(self.monomials(k))} basis monomials, declared {d}")

    def monomials(self, w: int) -> List[Monomial]:
        """Monomials in the generators of total weight ``w``."""
        gens = sorted(self.generators)

        def rec(start, rem):
            if rem == 0:
                yield ()
                return
            for i in range(start, len(gens)):
                g = gens[i]
                if sum(g) <= rem:
                    for rest in rec(i, rem - sum(g)):
                        yield (g,) + rest
        return sorted((tuple(sorted(m)) for m in rec(0, w)), key=mono_key)

    def reduce_word(self, w: Composition) -> BasisForm:
        if not w:
            return BasisForm({(): 1})
        if sum(w) > self.weight_cap:
            raise WeightCapExceeded(f"weight {sum(w)} exceeds table cap {self.weight_cap}")
        try:
            return self.reductions[w]
        except KeyError:
            raise MissingReduction(f"no reduction for {w}") from None

    def to_basis(self, x: AElement) -> BasisForm:
        out: Dict[Monomial, Fraction] = {}
        for w, c in x.terms.items():
            for m, c2 in self.reduce_word(w).terms.items():
                lc_add(out, m, c * c2)
        return BasisForm(out)

    def from_basis(self, b: BasisForm) -> AElement:
        """A word-form representative of a basis polynomial."""
        acc = AElement()
        for m, c in b.terms.items():
            term = AElement.const(c)
            for g in m:
                term = a_mul(term, AElement({g: 1}))
            acc = acc + term
        return acc

    # serialization -------------------------------------------------------
    def serialize(self) -> str:
        lines = [f"basis W={self.weight_cap}"]
        for g in sorted(self.generators, key=lambda g: (sum(g), g)):
            lines.append(f"g {sum(g)} ({','.join(map(str, g))})")
        for k in sorted(self.dims):
            lines.append(f"dim {k} {self.dims[k]}")
        for w in sorted(self.reductions, key=lambda s: (sum(s), s)):
            red = self.reductions[w]
            terms = []
            for m, c in red.terms.items():
                c = Fraction(c)
                num = str(abs(c.numerator)) + ("" if c.denominator == 1 else f"/{c.denominator}")
                gens = "*".join(f"z({','.join(map(str, g))})" for g in m)
                terms.append(("-" if c < 0 else "+") + f" {num} * {gens}")
            rhs = " ".join(terms) if terms else "0"
            if rhs.startswith("+ "):
                rhs = rhs[2:]
            lines.append(f"({','.join(map(str, w))}) = {rhs}")
        return "\n".join(lines) + "\n"


def parse_relation_table(text: str) -> RelationTable:
    cap = None
    gens: List[Composition] = []
    dims: Dict[int, int] = {}
    reds: Dict[Composition, BasisForm] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("basis"):
                m = re.fullmatch(r"basis\s+W\s*=\s*(\d+)", line)
                if not m:
                    raise ValueError("bad header")
                cap = int(m.group(1))
            elif line.startswith("g "):
                m = re.fullmatch(r"g\s+(\d+)\s+\(([\d,\s]+)\)", line)
                if not m:
                    raise ValueError("bad generator line")
                g = _parts(m.group(2))
                if sum(g) != int(m.group(1)):
                    raise HomogeneityViolation(f"generator {g} declared with weight {m.group(1)}")
                gens.append(g)
            elif line.startswith("dim"):
                m = re.fullmatch(r"dim\s+(\d+)\s+(\d+)", line)
                if not m:
                    raise ValueError("bad dim line")
                dims[int(m.group(1))] = int(m.group(2))
            else:
                m = _ENTRY.match(line)
                if not m:
                    raise ValueError("unrecognized line")
                reds[_parts(m.group(1))] = _parse_rhs(m.group(2))
        except HomogeneityViolation:
            raise
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}: {raw!r}") from None
    if cap is None:
        raise ParseError("missing 'basis W=' header")
    return RelationTable(cap, gens, dims, reds)


def _parse_rhs(text: str) -> BasisForm:
    text = text.strip()
    if text == "0":
        return BasisForm()
    out: Dict[Monomial, Fraction] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad term at column {pos + 1}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) * sign
        mono = tuple(sorted(_parts(g) for g in _GEN.findall(m.group(3) or "")))
        lc_add(out, mono, coeff)
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return BasisForm(out)


def load_relation_table(source=None) -> RelationTable:
    """Load a table from a path, a document string, or the shipped default."""
    if source is None:
        return _default_table()
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and Path(source).exists()):
        return parse_relation_table(Path(source).read_text(encoding="utf-8"))
    return parse_relation_table(source)


@lru_cache(maxsize=1)
def _default_table() -> RelationTable:
    return parse_relation_table(DEFAULT_TABLE.read_text(encoding="utf-8"))


def to_basis(x: AElement, t: RelationTable) -> BasisForm:
    return t.to_basis(x)
