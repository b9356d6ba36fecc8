"""Text and JSON formats for polynomials, plus QUBO export.

Text grammar (whitespace is ignored)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := integer | integer '*' varprod | varprod
    varprod := var ('*' var)*
    var     := letter (letter | digit | '_')*
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .poly import INT64_MAX, CoefficientOverflow, Polynomial, canonicalize, grlex_key


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


class DegreeTooHigh(ValueError):
    def __init__(self, monomial, names):
        self.monomial = monomial
        super().__init__(f"monomial {'*'.join(names)} has degree {len(monomial)} > 2")


class SymbolTable:
    """Bidirectional name <-> VarId map; ids are dense, in registration order."""

    def __init__(self, names: Iterable[str] = ()):
        self.names: list[str] = []
        self.ids: dict[str, int] = {}
        for n in names:
            self.add(n)

    def add(self, name: str) -> int:
        i = self.ids.get(name)
        if i is None:
            i = len(self.names)
            self.names.append(name)
            self.ids[name] = i
        return i

    def fresh(self, prefix: str = "aux") -> int:
        k = 0
        while f"{prefix}{k}" in self.ids:
            k += 1
        return self.add(f"{prefix}{k}")

    def name(self, i: int) -> str:
        return self.names[i]

    def __getitem__(self, name: str) -> int:
        return self.ids[name]

    def __contains__(self, name) -> bool:
        return name in self.ids

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, SymbolTable) and self.names == other.names

    def copy(self) -> "SymbolTable":
        return SymbolTable(self.names)

    @classmethod
    def default(cls, n: int, prefix: str = "x") -> "SymbolTable":
        return cls(f"{prefix}{i}" for i in range(n))

    def __repr__(self):
        return f"SymbolTable({self.names!r})"


def _default_names(P: Polynomial) -> SymbolTable:
    n = max(P.support, default=-1) + 1
    return SymbolTable.default(n)


# --------------------------------------------------------------------------
# text format

def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line, col = line + 1, 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", text[i:j], line, start_col)
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("var", text[i:j], line, start_col)
        elif ch in "+-*":
            j = i + 1
            yield (ch, ch, line, start_col)
        else:
            raise ParseError(f"unexpected character {ch!r}", line, start_col)
        col += j - i
        i = j
    yield ("eof", "", line, col)


def parse(text: str, table: SymbolTable | None = None) -> tuple[Polynomial, SymbolTable]:
    """Parse a polynomial; new names are registered in first-appearance order."""
    table = SymbolTable() if table is None else table
    toks = list(_tokenize(text))
    pos = 0

    def peek():
        return toks[pos]

    def take(kind):
        nonlocal pos
        tok = toks[pos]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2], tok[3])
        pos += 1
        return tok

    def varprod():
        vs = [table.add(take("var")[1])]
        while peek()[0] == "*":
            take("*")
            vs.append(table.add(take("var")[1]))
        return vs

    def term(sign):
        tok = peek()
        if tok[0] == "int":
            take("int")
            c = int(tok[1])
            if c > INT64_MAX:
                raise ParseError(f"integer literal {tok[1]} overflows 64 bits", tok[2], tok[3])
            if peek()[0] == "*":
                take("*")
                return sign * c, varprod()
            return sign * c, []
        if tok[0] == "var":
            return sign, varprod()
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"expected a term, found {what}", tok[2], tok[3])

    raw = []
    sign = 1
    if peek()[0] in "+-":
        sign = -1 if take(peek()[0])[0] == "-" else 1
    raw.append(term(sign))
    while peek()[0] in ("+", "-"):
        sign = -1 if take(peek()[0])[0] == "-" else 1
        raw.append(term(sign))
    tok = peek()
    if tok[0] != "eof":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], tok[3])
    try:
        return canonicalize(raw), table
    except CoefficientOverflow as e:
        tok = toks[-1]
        raise ParseError(str(e), tok[2], tok[3]) from None


def serialize(P: Polynomial, table: SymbolTable | None = None) -> str:
    """Render P in graded-lex order, e.g. ``1 + x3*x4*x8``."""
    if table is None:
        table = _default_names(P)
    if P.is_zero():
        return "0"
    parts = []
    for k, (m, c) in enumerate(P.sorted_terms()):
        body = "*".join(table.name(v) for v in m)
        mag = abs(c)
        if not m:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if k == 0:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(("+ " if c > 0 else "- ") + text)
    return " ".join(parts)


def to_dict(P: Polynomial, table: SymbolTable | None = None) -> dict:
    if table is None:
        table = _default_names(P)
    return {
        "variables": list(table.names),
        "terms": [{"coeff": c, "vars": list(m)} for m, c in P.sorted_terms()],
    }


def to_json(P: Polynomial, table: SymbolTable | None = None, **kw) -> str:
    return json.dumps(to_dict(P, table), **kw)


def from_dict(doc: dict) -> tuple[Polynomial, SymbolTable]:
    try:
        table = SymbolTable(doc["variables"])
        if len(table) != len(doc["variables"]):
            raise ValueError("duplicate variable names")
        raw = []
        for t in doc["terms"]:
            vs = [int(v) for v in t["vars"]]
            if any(v < 0 or v >= len(table) for v in vs):
                raise ValueError(f"variable index out of range in {t!r}")
            raw.append((int(t["coeff"]), vs))
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed polynomial document: {e}") from None
    return canonicalize(raw), table


def from_json(doc: str | bytes | dict) -> tuple[Polynomial, SymbolTable]:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise ValueError(f"malformed JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ValueError("polynomial document must be a JSON object")
    return from_dict(doc)


def load(path) -> tuple[Polynomial, SymbolTable]:
    """Read a ``.json`` document or a text-format polynomial file."""
    with open(path) as f:
        text = f.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse(text)


# --------------------------------------------------------------------------
# QUBO export

@dataclass
class QuboExport:
    offset: int = 0
    linear: dict = field(default_factory=dict)
    quadratic: dict = field(default_factory=dict)  # (i, j) with i < j -> coeff
    variables: list = field(default_factory=list)

    def energy(self, a) -> int:
        e = self.offset
        for i, c in self.linear.items():
            if a[i]:
                e += c
        for (i, j), c in self.quadratic.items():
            if a[i] and a[j]:
                e += c
        return e

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "offset": self.offset,
            "linear": {str(i): c for i, c in sorted(self.linear.items())},
            "quadratic": [[i, j, c] for (i, j), c in sorted(self.quadratic.items())],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def export_qubo(P: Polynomial, table: SymbolTable | None = None) -> QuboExport:
    if table is None:
        table = _default_names(P)
    q = QuboExport(variables=list(table.names))
    for m, c in P.sorted_terms():
        if len(m) > 2:
            raise DegreeTooHigh(m, [table.name(v) for v in m])
        if not m:
            q.offset = c
        elif len(m) == 1:
            q.linear[m[0]] = c
        else:
            q.quadratic[m] = c
    return q
