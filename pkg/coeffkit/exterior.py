# coeffkit/exterior.py
"""Exterior algebra over an ordered generator set.

A blade is an int bit set over generator positions (bit i <-> generator i).
Blade order everywhere: ascending degree, then the bit set read as a binary number.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .linalg import Vector, as_rational

Blade = int


class FormSyntaxError(ValueError):
    """Malformed form expression; `position` is the 0-based character offset."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}" + (f" in {text!r}" if text else ""))


# ---------------- Blades ----------------
def blade_degree(b: Blade) -> int:
    return b.bit_count()


def blade_indices(b: Blade) -> tuple[int, ...]:
    out = []
    i = 0
    while b:
        if b & 1:
            out.append(i)
        b >>= 1
        i += 1
    return tuple(out)


def blade_from_indices(indices: Iterable[int]) -> Blade:
    b = 0
    for i in indices:
        b |= 1 << i
    return b


@lru_cache(maxsize=None)
def blades_of_degree(m: int, p: int) -> tuple[Blade, ...]:
    if p < 0 or p > m:
        return ()
    return tuple(sorted(blade_from_indices(c) for c in combinations(range(m), p)))


def blade_wedge(a: Blade, b: Blade) -> tuple[int, Blade]:
    """(sign, a|b) for the product of canonical blades; (0, 0) if they share an index."""
    if a & b:
        return 0, 0
    # inversions: pairs (i in a, j in b) with i > j
    inv = 0
    for j in blade_indices(b):
        inv += (a >> (j + 1)).bit_count()
    return (-1 if inv & 1 else 1), a | b


def check_ambient(m: int, cap: int) -> None:
    if m > cap:
        raise ValueError(f"{m} generators exceeds the cap of {cap} (2^{m} blades); raise --max-gen to allow it")


# ---------------- Multivectors ----------------
@dataclass(frozen=True)
class Multivector:
    """Sparse rational combination of blades over m generators (no zero coefficients)."""
    m: int
    terms: Mapping[Blade, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for b, c in self.terms.items():
            if b >> self.m:
                raise ValueError(f"blade {b:b} outside ambient of {self.m} generators")
            q = as_rational(c)
            if q:
                clean[b] = q
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda t: (t[0].bit_count(), t[0]))))

    # -- constructors
    @classmethod
    def zero(cls, m: int) -> "Multivector":
        return cls(m, {})

    @classmethod
    def scalar(cls, m: int, c=1) -> "Multivector":
        return cls(m, {0: c})

    @classmethod
    def blade(cls, m: int, b: Blade, c=1) -> "Multivector":
        return cls(m, {b: c})

    @classmethod
    def generator(cls, m: int, i: int) -> "Multivector":
        return cls(m, {1 << i: 1})

    @classmethod
    def from_vector(cls, m: int, basis: Sequence[Blade], v: Sequence[Fraction]) -> "Multivector":
        return cls(m, {b: c for b, c in zip(basis, v) if c})

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {b.bit_count() for b in self.terms}

    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous multivector, else None."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def coefficient(self, b: Blade) -> Fraction:
        return self.terms.get(b, Fraction(0))

    def to_vector(self, basis: Sequence[Blade]) -> Vector:
        index = {b: i for i, b in enumerate(basis)}
        missing = [b for b in self.terms if b not in index]
        if missing:
            raise ValueError(f"blade(s) {[blade_indices(b) for b in missing]} not in the given basis")
        v = [Fraction(0)] * len(basis)
        for b, c in self.terms.items():
            v[index[b]] = c
        return tuple(v)

    # -- arithmetic
    def _check(self, other: "Multivector"):
        if self.m != other.m:
            raise ValueError(f"ambient mismatch: {self.m} vs {other.m} generators")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        acc = dict(self.terms)
        for b, c in other.terms.items():
            acc[b] = acc.get(b, Fraction(0)) + c
        return Multivector(self.m, acc)

    def __neg__(self) -> "Multivector":
        return Multivector(self.m, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, c) -> "Multivector":
        q = as_rational(c)
        return Multivector(self.m, {b: q * v for b, v in self.terms.items()})

    def wedge(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def power(self, k: int) -> "Multivector":
        out = Multivector.scalar(self.m)
        for _ in range(k):
            out = wedge(out, self)
        return out


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    acc: dict[Blade, Fraction] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            s, ab = blade_wedge(a, b)
            if s:
                acc[ab] = acc.get(ab, Fraction(0)) + s * ca * cb
    return Multivector(u.m, acc)


# ---------------- Form grammar ----------------
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+^/]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise FormSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", text, pos)
        kind = mt.lastgroup
        toks.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    return toks


class _FormParser:
    def __init__(self, text: str, generators: Sequence[str]):
        self.text = text
        self.index = {g: i for i, g in enumerate(generators)}
        self.m = len(generators)
        self.toks = _tokenize(text)
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _fail(self, msg: str, tok=None):
        pos = tok[2] if tok else len(self.text)
        raise FormSyntaxError(msg, self.text, pos)

    def parse(self) -> Multivector:
        if not self.toks:
            self._fail("empty form expression")
        acc: dict[Blade, Fraction] = {}
        sign = 1
        tok = self._peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self._take()
        while True:
            coeff, blade = self._term()
            acc[blade] = acc.get(blade, Fraction(0)) + sign * coeff
            tok = self._take()
            if tok is None:
                break
            if tok[0] != "op" or tok[1] not in "+-":
                self._fail(f"expected '+' or '-', got {tok[1]!r}", tok)
            sign = -1 if tok[1] == "-" else 1
        return Multivector(self.m, acc)

    def _term(self) -> tuple[Fraction, Blade]:
        tok = self._peek()
        if tok is None:
            self._fail("expected a term")
        coeff = Fraction(1)
        have_coeff = False
        if tok[0] == "num":
            coeff = self._rational()
            have_coeff = True
        tok = self._peek()
        if tok is None or tok[0] != "name":
            if have_coeff and (tok is None or (tok[0] == "op" and tok[1] in "+-")):
                return coeff, 0
            self._fail("expected a generator name", tok)
        sign, blade = self._monomial()
        return sign * coeff, blade

    def _rational(self) -> Fraction:
        num = self._take()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "/":
            self._take()
            den = self._take()
            if den is None or den[0] != "num":
                self._fail("malformed rational: expected a positive integer denominator", den)
            if int(den[1]) == 0:
                self._fail("malformed rational: zero denominator", den)
            return Fraction(int(num[1]), int(den[1]))
        return Fraction(int(num[1]))

    def _monomial(self) -> tuple[int, Blade]:
        indices: list[int] = []
        while True:
            tok = self._take()
            if tok is None or tok[0] != "name":
                self._fail("expected a generator name", tok)
            if tok[1] not in self.index:
                self._fail(f"unknown generator {tok[1]!r}", tok)
            i = self.index[tok[1]]
            if i in indices:
                self._fail(f"repeated generator {tok[1]!r} in monomial", tok)
            indices.append(i)
            nxt = self._peek()
            if nxt and nxt[0] == "op" and nxt[1] == "^":
                self._take()
                continue
            break
        # sign of the sorting permutation
        sign = 1
        for a in range(len(indices)):
            for b in range(a + 1, len(indices)):
                if indices[a] > indices[b]:
                    sign = -sign
        return sign, blade_from_indices(indices)


def parse_form(text: str, generators: Sequence[str]) -> Multivector:
    """Parse `text` (see the form grammar) into a canonical multivector.

    form := term (('+'|'-') term)* ; term := [rational] monomial | rational
    rational := integer ['/' positive-integer] ; monomial := name ('^' name)*
    A leading sign is allowed; an omitted coefficient means 1.
    """
    return _FormParser(text, generators).parse()


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_form(mv: Multivector, generators: Sequence[str]) -> str:
    """Canonical text for `mv`; parse_form(format_form(mv)) == mv."""
    if len(generators) != mv.m:
        raise ValueError(f"{len(generators)} generator names for an ambient of {mv.m}")
    if mv.is_zero():
        return "0"
    parts = []
    for k, (b, c) in enumerate(mv.terms.items()):
        mag = abs(c)
        mono = "^".join(generators[i] for i in blade_indices(b))
        if not mono:
            body = _fmt_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rational(mag)} {mono}"
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
