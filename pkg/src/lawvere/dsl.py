"""Text format for finite presentations.

    theory cmon {
      op e : 0;
      op m : 2;
      eq (2) m(x0,x1) = m(x1,x0);
    }

Variables are written ``x0, x1, ...``. A nullary operation may be written
``e`` or ``e()``. ``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import LawvereError
from .theory import (BUILTIN_THEORIES, App, Equation, OpSym, Presentation, Term, Var)

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<nat>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_\-]*)
  | (?P<punct>[{}():;,=])
""", re.VERBOSE)
_VAR = re.compile(r"x([0-9]+)\Z")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*\Z")


class DSLError(LawvereError):
    kind = "dsl"

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col, self.detail = line, col, message
        self.path = "<input>"


class DSLSyntaxError(DSLError):
    kind = "syntax"


class DSLSemanticError(DSLError):
    kind = "semantic"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind, text = m.lastgroup, m.group()
        if kind != "ws":
            out.append(Token(kind, text, line, pos - line_start + 1))
        for i, ch in enumerate(text):
            if ch == "\n":
                line, line_start = line + 1, pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, source: str):
        self.toks = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise DSLSyntaxError(f"expected {expected}, found {found}", tok.line, tok.col)

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            self.fail(repr(text) if text else kind)
        self.i += 1
        return t

    def keyword(self, word: str) -> bool:
        if self.tok.kind == "ident" and self.tok.text == word:
            self.i += 1
            return True
        return False

    def term(self):
        t = self.expect("ident")
        if _VAR.match(t.text):
            return ("var", int(t.text[1:]), t)
        args = []
        if self.tok.text == "(":
            self.i += 1
            if self.tok.text != ")":
                args.append(self.term())
                while self.tok.text == ",":
                    self.i += 1
                    args.append(self.term())
            self.expect("punct", ")")
        return ("app", t.text, args, t)

    def theory(self):
        self.expect("ident", "theory")
        name = self.expect("ident")
        self.expect("punct", "{")
        ops, eqs = [], []
        while self.keyword("op"):
            op = self.expect("ident")
            self.expect("punct", ":")
            arity = self.expect("nat")
            self.expect("punct", ";")
            ops.append((op, int(arity.text)))
        while self.tok.text == "eq":
            start = self.expect("ident", "eq")
            self.expect("punct", "(")
            n = self.expect("nat")
            self.expect("punct", ")")
            lhs = self.term()
            self.expect("punct", "=")
            rhs = self.term()
            self.expect("punct", ";")
            eqs.append((start, int(n.text), lhs, rhs))
        if self.tok.text == "op":
            raise DSLSyntaxError("op declarations must precede equations", self.tok.line, self.tok.col)
        self.expect("punct", "}")
        self.expect("eof")
        return name, ops, eqs


def _build(raw, arities: dict, context: int) -> Term:
    if raw[0] == "var":
        _, index, tok = raw
        if index >= context:
            raise DSLSemanticError(f"x{index} outside context of size {context}", tok.line, tok.col)
        return Var(index)
    _, name, args, tok = raw
    if name not in arities:
        raise DSLSemanticError(f"undeclared operation {name!r}", tok.line, tok.col)
    if len(args) != arities[name]:
        raise DSLSemanticError(f"{name} has arity {arities[name]} but is applied to {len(args)}",
                               tok.line, tok.col)
    return App(name, tuple(_build(a, arities, context) for a in args))


def parse_theory(source: str) -> Presentation:
    """Parse one theory. A known built-in presentation keeps its normal-form procedure."""
    name, raw_ops, raw_eqs = _Parser(source).theory()
    arities = {}
    for tok, arity in raw_ops:
        if _VAR.match(tok.text):
            raise DSLSemanticError(f"operation name {tok.text!r} is reserved for variables",
                                   tok.line, tok.col)
        if tok.text in arities:
            raise DSLSemanticError(f"operation {tok.text!r} declared twice", tok.line, tok.col)
        arities[tok.text] = arity
    eqs = [Equation(n, _build(lhs, arities, n), _build(rhs, arities, n)) for _, n, lhs, rhs in raw_eqs]
    ops = tuple(OpSym(k, v) for k, v in arities.items())
    return Presentation(name.text, ops, tuple(eqs), _match_builtin(ops, eqs))


def _match_builtin(ops, eqs):
    for tag, make in BUILTIN_THEORIES.items():
        p = make()
        if p.ops == tuple(ops) and set(p.eqs) == set(eqs):
            return p.normalizer
    return None


def format_theory(p: Presentation) -> str:
    name = p.name if _IDENT.match(p.name) else re.sub(r"[^A-Za-z0-9_\-]", "_", p.name)
    lines = [f"theory {name} {{"]
    lines += [f"  op {o.name} : {o.arity};" for o in p.ops]
    lines += [f"  eq ({e.context_size}) {e.lhs} = {e.rhs};" for e in p.eqs]
    lines.append("}")
    return "\n".join(lines) + "\n"
