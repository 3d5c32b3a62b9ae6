"""Spec-file and expression parsing.

A spec file is line oriented::

    # SL2 example
    ring: x, y, u, v
    relations: x*v - y*u - 1
    derivation: u -> x; v -> y
    options: max-iter = 32; bound = 64

Relations, derivation entries and options each sit on one line; several
items on a line are separated by ``;``.  A line without a section header
continues the previous section, so the variable list may wrap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .lnd import DEFAULT_NILPOTENCY_BOUND, Derivation, QuotientAlgebra
from .polycore import Poly, Ring

RESERVED = {"upsilon"}
SECTIONS = ("ring", "relations", "derivation", "options")
OPTION_TYPES = {"max-iter": int, "bound": int, "budget": int, "prune": bool}


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, column {col}: {message}" if line else message)
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<rat>\d+/\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[-+*^();,=:])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, col + pos))
        pos = m.end()
    return out


# -- expressions -----------------------------------------------------------


@dataclass
class Expr:
    """Expression AST node: ``op`` is one of
    ``int rat var neg add sub mul pow paren``."""

    op: str
    args: tuple = ()
    value: object = None

    def evaluate(self, ring: Ring) -> Poly:
        op = self.op
        if op in ("int", "rat"):
            return ring.const(self.value)
        if op == "var":
            return ring.var(self.value)
        if op == "neg":
            return -self.args[0].evaluate(ring)
        if op == "paren":
            return self.args[0].evaluate(ring)
        if op == "pow":
            return self.args[0].evaluate(ring) ** self.value
        a, b = (x.evaluate(ring) for x in self.args)
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        return a * b

    def variables(self) -> set:
        if self.op == "var":
            return {self.value}
        out = set()
        for a in self.args:
            out |= a.variables()
        return out


class _ExprParser:
    def __init__(self, tokens: Sequence[Token], end: Tuple[int, int]):
        self.toks = list(tokens)
        self.i = 0
        self.end = end

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg: str):
        t = self.peek()
        line, col = (t.line, t.col) if t else self.end
        raise ParseError(msg, line, col)

    def take(self, text: Optional[str] = None, kind: Optional[str] = None) -> Token:
        t = self.peek()
        if t is None or (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = text or kind
            self.error(f"expected {want!r}" + (f", found {t.text!r}" if t else ", found end of input"))
        self.i += 1
        return t

    def parse(self) -> Expr:
        if not self.toks:
            self.error("empty expression")
        e = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek().text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek() is not None and self.peek().text in ("+", "-"):
            op = "add" if self.take().text == "+" else "sub"
            e = Expr(op, (e, self.term()))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek() is not None and self.peek().text == "*":
            self.take()
            e = Expr("mul", (e, self.unary()))
        return e

    def unary(self) -> Expr:
        t = self.peek()
        if t is not None and t.text == "-":
            self.take()
            return Expr("neg", (self.unary(),))
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        t = self.peek()
        if t is not None and t.text == "^":
            self.take()
            exp = self.take(kind="int")
            return Expr("pow", (base,), int(exp.text))
        return base

    def atom(self) -> Expr:
        t = self.peek()
        if t is None:
            self.error("expected a number, variable or '('")
        if t.kind == "int":
            self.take()
            return Expr("int", value=int(t.text))
        if t.kind == "rat":
            self.take()
            p, q = t.text.split("/")
            if int(q) == 0:
                raise ParseError("zero denominator", t.line, t.col)
            return Expr("rat", value=Fraction(int(p), int(q)))
        if t.kind == "ident":
            self.take()
            return Expr("var", value=t.text)
        if t.text == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return Expr("paren", (e,))
        self.error(f"unexpected {t.text!r}")


def parse_expr_tokens(tokens: Sequence[Token], end: Tuple[int, int] = (0, 0)) -> Expr:
    return _ExprParser(tokens, end).parse()


def parse_expr(text: str) -> Expr:
    return parse_expr_tokens(tokenize(text), (1, len(text) + 1))


def parse_poly(text: str, ring: Ring, line: int = 1) -> Poly:
    """Parse ``text`` into a polynomial over ``ring``; unknown names are errors."""
    toks = tokenize(text, line)
    for t in toks:
        if t.kind == "ident" and t.text not in ring.index:
            raise ParseError(f"undeclared variable {t.text!r}", t.line, t.col)
    return parse_expr_tokens(toks, (line, len(text) + 1)).evaluate(ring)


# -- spec files ------------------------------------------------------------


@dataclass
class SpecFile:
    variables: List[str]
    relations: List[Poly] = field(default_factory=list)
    derivation: Dict[str, Poly] = field(default_factory=dict)
    options: Dict[str, object] = field(default_factory=dict)

    @property
    def ring(self) -> Ring:
        return Ring(self.variables)


def _split_items(tokens: List[Token]) -> List[List[Token]]:
    items, cur = [], []
    for t in tokens:
        if t.text == ";":
            items.append(cur)
            cur = []
        else:
            cur.append(t)
    items.append(cur)
    return items


def read_spec(text: str) -> SpecFile:
    """Parse spec-file text without building or validating any algebra."""
    sections: Dict[str, List[Tuple[int, int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*([A-Za-z_-]+)\s*:", line)
        if m and m.group(1) in SECTIONS:
            current = m.group(1)
            if current in sections:
                raise ParseError(f"duplicate section {current!r}", lineno, m.start(1) + 1)
            sections[current] = []
            rest = line[m.end():]
            sections[current].append((lineno, m.end() + 1, rest))
            continue
        if m and not re.match(r"\s*[A-Za-z_]\w*\s*->", line):
            raise ParseError(f"unknown section {m.group(1)!r}", lineno, m.start(1) + 1)
        if current is None:
            raise ParseError("text outside of any section", lineno, 1)
        sections[current].append((lineno, 1, line))

    if "ring" not in sections:
        raise ParseError("missing 'ring:' section")
    variables: List[str] = []
    # the declaration may run over several lines, so split on commas afterwards
    ring_tokens: List[Token] = []
    for lineno, col, chunk in sections["ring"]:
        ring_tokens += tokenize(chunk, lineno, col)
    last = sections["ring"][-1]
    for item, comma in _split_commas(ring_tokens):
        if len(item) != 1 or item[0].kind != "ident":
            if item:
                pos = (item[-1].line, item[-1].col) if item[0].kind == "ident" else (item[0].line, item[0].col)
            elif comma is not None:
                pos = (comma.line, comma.col)
            else:
                pos = (last[0], last[1] + len(last[2]))
            raise ParseError("expected a variable name", *pos)
        name = item[0].text
        if name in RESERVED:
            raise ParseError(f"{name!r} is reserved", item[0].line, item[0].col)
        if name in variables:
            raise ParseError(f"variable {name!r} declared twice", item[0].line, item[0].col)
        variables.append(name)
    if not variables:
        raise ParseError("no variables declared")
    ring = Ring(variables)
    spec = SpecFile(variables)

    def poly_of(toks: List[Token], lineno: int, endcol: int) -> Poly:
        for t in toks:
            if t.kind == "ident" and t.text not in ring.index:
                raise ParseError(f"undeclared variable {t.text!r}", t.line, t.col)
        return parse_expr_tokens(toks, (lineno, endcol)).evaluate(ring)

    for lineno, col, chunk in sections.get("relations", []):
        for item in _split_items(tokenize(chunk, lineno, col)):
            if item:
                spec.relations.append(poly_of(item, lineno, col + len(chunk)))

    for lineno, col, chunk in sections.get("derivation", []):
        for item in _split_items(tokenize(chunk, lineno, col)):
            if not item:
                continue
            if len(item) < 3 or item[0].kind != "ident" or item[1].text != "->":
                t = item[1] if len(item) > 1 and item[0].kind == "ident" else item[0]
                raise ParseError("expected 'variable -> expression'", t.line, t.col)
            name = item[0].text
            if name not in ring.index:
                raise ParseError(f"undeclared variable {name!r}", item[0].line, item[0].col)
            if name in spec.derivation:
                raise ParseError(f"derivation of {name!r} given twice", item[0].line, item[0].col)
            spec.derivation[name] = poly_of(item[2:], lineno, col + len(chunk))

    for lineno, col, chunk in sections.get("options", []):
        for item in _split_items(tokenize(chunk, lineno, col)):
            if not item:
                continue
            key, rest = _option_key(item)
            if key not in OPTION_TYPES:
                raise ParseError(f"unknown option {key!r}", item[0].line, item[0].col)
            if not rest or rest[0].text != "=" or len(rest) != 2:
                t = rest[0] if rest else item[-1]
                raise ParseError("expected 'option = value'", t.line, t.col)
            val = rest[1]
            if OPTION_TYPES[key] is bool:
                if val.text not in ("true", "false"):
                    raise ParseError("expected true or false", val.line, val.col)
                spec.options[key] = val.text == "true"
            else:
                if val.kind != "int":
                    raise ParseError("expected a non-negative integer", val.line, val.col)
                spec.options[key] = int(val.text)
    return spec


def _split_commas(tokens: List[Token]) -> List[Tuple[List[Token], Optional[Token]]]:
    """Comma-separated items, each with the comma that ends it (None for the last)."""
    items, cur = [], []
    for t in tokens:
        if t.text == ",":
            items.append((cur, t))
            cur = []
        else:
            cur.append(t)
    if cur or items:
        items.append((cur, None))
    return items


def _option_key(item: List[Token]) -> Tuple[str, List[Token]]:
    # option keys may contain dashes: max-iter
    parts = [item[0].text]
    i = 1
    while i + 1 < len(item) and item[i].text == "-" and item[i + 1].kind == "ident":
        parts.append(item[i + 1].text)
        i += 2
    return "-".join(parts), item[i:]


def parse_spec(text: str, validate: bool = True,
               bound: Optional[int] = None) -> Tuple[QuotientAlgebra, Derivation, Dict[str, object]]:
    """Build the algebra and derivation described by a spec file.

    With ``validate`` the derivation is checked to preserve the relations
    and to be locally nilpotent (raising the corresponding library errors).
    """
    spec = read_spec(text)
    algebra = QuotientAlgebra(spec.ring, spec.relations, budget=spec.options.get("budget", 200_000))
    d = Derivation(algebra, spec.derivation)
    if validate:
        d.validate(bound if bound is not None else spec.options.get("bound", DEFAULT_NILPOTENCY_BOUND))
    return algebra, d, spec.options
