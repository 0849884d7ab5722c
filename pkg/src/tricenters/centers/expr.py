"""Parser for the coordinate-expression grammar used by the catalog table."""

from __future__ import annotations

import re

from ..algebra.poly import A, B, C, Poly3
from ..algebra.qfield import QSqrt3
from ..algebra.slinear import S, SLinearPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt3|[abcS])|(.))")
_SYNONYMS = {"√3": "sqrt3", "·": "*", "−": "-", "–": "-"}

_ATOMS = {
    "a": SLinearPoly(A),
    "b": SLinearPoly(B),
    "c": SLinearPoly(C),
    "S": S,
    "sqrt3": SLinearPoly(Poly3.constant(QSqrt3(0, 1))),
}


class ExpressionError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    for k, v in _SYNONYMS.items():
        text = text.replace(k, v)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is not None and not tok.isspace():
            tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExpressionError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> SLinearPoly:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> SLinearPoly:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                value = value * self.factor()
            elif tok is not None and (tok == "(" or tok.isdigit() or tok in _ATOMS):
                value = value * self.factor()
            else:
                return value

    def factor(self) -> SLinearPoly:
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            inner = self.factor()
            return inner if tok == "+" else -inner
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ExpressionError(f"exponent must be a nonnegative integer, got {exp!r}")
            base = base ** int(exp)
        return base

    def atom(self) -> SLinearPoly:
        tok = self.take()
        if tok.isdigit():
            return SLinearPoly(Poly3.constant(int(tok)))
        if tok in _ATOMS:
            return _ATOMS[tok]
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ExpressionError(f"unexpected token {tok!r}")


def parse_expression(text: str) -> SLinearPoly:
    """Parse a coordinate expression over ``a, b, c, S, sqrt3`` into an SLinearPoly."""
    parser = _Parser(_tokenize(text))
    value = parser.expr()
    if parser.peek() is not None:
        raise ExpressionError(f"trailing input at {parser.peek()!r}")
    return value
