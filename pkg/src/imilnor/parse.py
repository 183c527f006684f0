"""Recursive-descent parser for polynomial expressions.

Grammar (``^`` binds tighter than unary minus, which binds tighter than ``*``)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | IDENT | '(' expr ')'

Division only appears inside rational literals, and juxtaposition such as
``2x`` is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, List, Optional

from .poly import Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, END
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<INT>\d+)|(?P<IDENT>[A-Za-z_][A-Za-z_0-9]*)|(?P<OP>[-+*/^()]))")


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allowed: Optional[Collection[str]], line: int, col0: int):
        self.text = text
        self.tokens = tokenize_at(text, line, col0)
        self.i = 0
        self.allowed = allowed
        self.line = line
        self.col0 = col0

    def error(self, msg: str, tok: Token) -> ParseError:
        return ParseError(msg, self.line, self.col0 + tok.pos)

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str) -> Token:
        t = self.take()
        if t.kind != "OP" or t.text != op:
            raise self.error(f"expected {op!r}, found {t.text or 'end of input'!r}", t)
        return t

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.tok.kind != "END":
            raise self.error(f"unexpected {self.tok.text!r}", self.tok)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.tok.kind == "OP" and self.tok.text == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        if self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.take().text
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.tok.kind == "OP" and self.tok.text == "^":
            self.take()
            t = self.take()
            if t.kind != "INT":
                raise self.error("exponent must be a non-negative integer literal", t)
            base = base ** int(t.text)
        return base

    def atom(self) -> Polynomial:
        t = self.take()
        if t.kind == "INT":
            value = Fraction(int(t.text))
            if self.tok.kind == "OP" and self.tok.text == "/":
                self.take()
                d = self.take()
                if d.kind != "INT":
                    raise self.error("rational literal needs an integer denominator", d)
                if int(d.text) == 0:
                    raise self.error("zero denominator", d)
                value = value / int(d.text)
            if self.tok.kind in ("IDENT", "INT") or (self.tok.kind == "OP" and self.tok.text == "("):
                raise self.error("implicit multiplication is not allowed; use '*'", self.tok)
            return Polynomial.const(value)
        if t.kind == "IDENT":
            if self.allowed is not None and t.text not in self.allowed:
                raise self.error(f"unknown variable {t.text!r}", t)
            if self.tok.kind in ("IDENT", "INT") or (self.tok.kind == "OP" and self.tok.text == "("):
                raise self.error("implicit multiplication is not allowed; use '*'", self.tok)
            return Polynomial.var(t.text)
        if t.kind == "OP" and t.text == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise self.error(f"unexpected {t.text or 'end of input'!r}", t)


def tokenize_at(text: str, line: int, col0: int) -> List[Token]:
    try:
        return tokenize(text)
    except ParseError as e:
        raise ParseError(e.message, line, col0 + e.column - 1) from None


def parse_polynomial(
    text: str, variables: Optional[Collection[str]] = None, *, line: int = 1, column: int = 1
) -> Polynomial:
    """Parse ``text`` into a Polynomial.

    ``line``/``column`` locate ``text`` inside a larger document so errors
    point at the right place.

    >>> str(parse_polynomial("z^5 + x^3*z"))
    'z^5 + x^3*z'
    """
    return _Parser(text, variables, line, column).parse()
