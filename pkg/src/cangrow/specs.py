"""Parsers for the ring-spec text format and the module mini-language.

Ring spec::

    ring { field: F32003; vars: x, y, z; ideal: x^2, x*y, y^2, z^2 }

Module spec::

    canonical | k | cyclic(p, ...) | ideal(p, ...) | coker([[p, ...], ...])

Diagnostics carry 1-based line and column numbers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .artinalg import DEFAULT_DIM_CAP, ArtinAlgebra, from_quotient
from .errors import ParseError
from .exactla import FieldSpec
from .polyring import Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<sym>[{}:;,+\-*^()\[\]]))")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks = []
    pos = 0
    line_starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]

    def where(i):
        line = max(k for k, s in enumerate(line_starts) if s <= i)
        return line + 1, i - line_starts[line] + 1

    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", *where(j))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(Token(kind, m.group(kind), *where(start)))
        pos = m.end()
    end = where(len(text))
    toks.append(Token("eof", "", *end))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.cur
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {found}", tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.cur.text == text and self.cur.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.cur
        if not self.accept(text):
            self.error(f"expected {text!r}")
        return tok

    def ident(self) -> Token:
        tok = self.cur
        if tok.kind != "ident":
            self.error("expected an identifier")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.cur
        if tok.kind != "int":
            self.error("expected an integer")
        self.i += 1
        return int(tok.text)

    # poly := ["-"] term (("+"|"-") term)*
    def poly(self, names: Sequence[str], F: FieldSpec) -> Polynomial:
        n = len(names)
        sign = -1 if self.accept("-") else 1
        total = self.term(names, F) * Polynomial.constant(F(sign), n, F)
        while self.cur.text in ("+", "-"):
            s = -1 if self.cur.text == "-" else 1
            self.i += 1
            total = total + self.term(names, F) * Polynomial.constant(F(s), n, F)
        return total

    # term := [int "*"] factor ("*" factor)*
    def term(self, names, F) -> Polynomial:
        out = self.factor(names, F)
        while self.accept("*"):
            out = out * self.factor(names, F)
        return out

    # factor := ident ["^" int] | int
    def factor(self, names, F) -> Polynomial:
        n = len(names)
        tok = self.cur
        if tok.kind == "int":
            self.i += 1
            return Polynomial.constant(F(int(tok.text)), n, F)
        if tok.kind == "ident":
            if tok.text not in names:
                self.error(f"unknown variable {tok.text!r}")
            self.i += 1
            v = Polynomial.variable(list(names).index(tok.text), n, F)
            if self.accept("^"):
                e = self.integer()
                return v ** e
            return v
        self.error("expected a variable or an integer")


@dataclass
class RingSpec:
    field: FieldSpec
    variables: list[str]
    generators: list[Polynomial]

    def build(self, dim_cap: int = DEFAULT_DIM_CAP) -> ArtinAlgebra:
        return from_quotient(self.field, self.variables, self.generators, dim_cap=dim_cap)

    def text(self) -> str:
        ideal = ", ".join(g.format(self.variables) for g in self.generators)
        return f"ring {{ field: {self.field.name}; vars: {', '.join(self.variables)}; ideal: {ideal} }}"


def _field_from(text: str, tok_parser: _Parser | None = None) -> FieldSpec:
    if text == "Q":
        return FieldSpec.rational()
    m = re.fullmatch(r"F(\d+)", text)
    if not m:
        raise ValueError(f"unknown field {text!r}")
    return FieldSpec.prime(int(m.group(1)))


def parse_ring_spec(text: str, field_override: str | None = None) -> RingSpec:
    P = _Parser(text)
    tok = P.ident()
    if tok.text != "ring":
        P.error("expected 'ring'", tok)
    P.expect("{")
    kw = P.ident()
    if kw.text != "field":
        P.error("expected 'field'", kw)
    P.expect(":")
    ftok = P.ident()
    ftext = ftok.text
    if ftext == "F" and P.cur.kind == "int":
        ftext += str(P.integer())
    try:
        F = _field_from(ftext)
    except ValueError as exc:
        raise ParseError(str(exc), ftok.line, ftok.col) from None
    if field_override:
        try:
            F = _field_from(field_override)
        except ValueError as exc:
            raise ParseError(f"--field: {exc}") from None
    P.expect(";")
    kw = P.ident()
    if kw.text != "vars":
        P.error("expected 'vars'", kw)
    P.expect(":")
    names = [P.ident().text]
    while P.accept(","):
        names.append(P.ident().text)
    if len(set(names)) != len(names):
        P.error("duplicate variable name", kw)
    P.expect(";")
    kw = P.ident()
    if kw.text != "ideal":
        P.error("expected 'ideal'", kw)
    P.expect(":")
    gens = [P.poly(names, F)]
    while P.accept(","):
        gens.append(P.poly(names, F))
    P.expect("}")
    if P.cur.kind != "eof":
        P.error("trailing input")
    return RingSpec(F, names, gens)


def parse_ring(text: str, field_override: str | None = None,
               dim_cap: int = DEFAULT_DIM_CAP) -> ArtinAlgebra:
    return parse_ring_spec(text, field_override).build(dim_cap)


# ---------------------------------------------------------------------------
# modules


@dataclass
class ModuleSpec:
    kind: str  # canonical | k | R | cyclic | ideal | coker
    polys: list[Polynomial]
    matrix: list[list[Polynomial]]
    text: str


def parse_module_spec(text: str, R: ArtinAlgebra) -> ModuleSpec:
    P = _Parser(text)
    head = P.ident()
    names, F = R.variables, R.field
    polys, matrix = [], []
    kind = head.text
    if kind in ("canonical", "omega"):
        kind = "canonical"
    elif kind == "k":
        pass
    elif kind == "R":
        pass
    elif kind in ("cyclic", "ideal"):
        P.expect("(")
        polys.append(P.poly(names, F))
        while P.accept(","):
            polys.append(P.poly(names, F))
        P.expect(")")
    elif kind == "coker":
        P.expect("(")
        P.expect("[")
        while True:
            P.expect("[")
            row = [P.poly(names, F)]
            while P.accept(","):
                row.append(P.poly(names, F))
            P.expect("]")
            matrix.append(row)
            if not P.accept(","):
                break
        P.expect("]")
        P.expect(")")
        if len({len(r) for r in matrix}) != 1:
            raise ParseError("coker matrix rows have different lengths", head.line, head.col)
    else:
        P.error("expected canonical, k, cyclic(...), ideal(...) or coker(...)", head)
    if P.cur.kind != "eof":
        P.error("trailing input")
    return ModuleSpec(kind, polys, matrix, canonical_module_text(kind, polys, matrix, names))


def canonical_module_text(kind, polys, matrix, names) -> str:
    if kind in ("canonical", "k", "R"):
        return kind
    if kind in ("cyclic", "ideal"):
        return f"{kind}({', '.join(p.format(names) for p in polys)})"
    rows = ", ".join("[" + ", ".join(p.format(names) for p in r) + "]" for r in matrix)
    return f"coker([{rows}])"


def build_module(spec: ModuleSpec, R: ArtinAlgebra):
    from . import modres

    if spec.kind == "canonical":
        return modres.canonical_module(R)
    if spec.kind == "k":
        return modres.residue_field(R)
    if spec.kind == "R":
        return modres.regular_module(R)
    if spec.kind == "cyclic":
        return modres.cyclic_module(R, spec.polys, name=spec.text)
    if spec.kind == "ideal":
        return modres.ideal_module(R, spec.polys, name=spec.text)
    return modres.cokernel_module(R, spec.matrix, name=spec.text)


def parse_module(text: str, R: ArtinAlgebra):
    return build_module(parse_module_spec(text, R), R)
