"""Expression grammar for polynomials and rational functions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)*
    atom   := INT | IDENT | '(' expr ')'

Identifiers match [a-z][a-z0-9_]*. Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z][a-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    col: int


def tokenize(text: str, line: int = 1, col0: int = 1):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(Tok("int", m.group(1), col0 + m.start(1)))
        elif m.group(2) is not None:
            toks.append(Tok("id", m.group(2), col0 + m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col0 + m.start(3))
            toks.append(Tok(ch, ch, col0 + m.start(3)))
        pos = m.end()
    toks.append(Tok("end", "", col0 + len(text.rstrip())))
    return toks


class _Parser:
    def __init__(self, text, line, col0):
        self.toks = tokenize(text, line, col0)
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok):
        raise ParseError(msg, self.line, tok.col)

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek().kind == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                self.fail("exponent must be a non-negative integer literal", tok)
            self.take()
            node = ("pow", node, int(tok.text))
        return node

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return ("int", int(tok.text))
        if tok.kind == "id":
            return ("id", tok.text, tok.col)
        if tok.kind == "(":
            node = self.expr()
            close = self.take()
            if close.kind != ")":
                self.fail("expected ')'", close)
            return node
        if tok.kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected {tok.text!r}", tok)


def parse_expression(text: str, line: int = 1, col0: int = 1):
    """Parse into a small tuple AST; raises ParseError with line/column."""
    p = _Parser(text, line, col0)
    node = p.expr()
    tok = p.peek()
    if tok.kind != "end":
        p.fail(f"unexpected {tok.text!r}", tok)
    return node


def identifiers(node) -> set:
    kind = node[0]
    if kind == "id":
        return {node[1]}
    if kind == "int":
        return set()
    if kind in ("neg",):
        return identifiers(node[1])
    if kind == "pow":
        return identifiers(node[1])
    return identifiers(node[1]) | identifiers(node[2])


def evaluate(node, env: dict, from_int, line: int = 1):
    kind = node[0]
    if kind == "int":
        return from_int(node[1])
    if kind == "id":
        if node[1] not in env:
            raise ParseError(f"unknown identifier {node[1]!r}", line, node[2])
        return env[node[1]]
    if kind == "neg":
        return -evaluate(node[1], env, from_int, line)
    if kind == "pow":
        return evaluate(node[1], env, from_int, line) ** node[2]
    a = evaluate(node[1], env, from_int, line)
    b = evaluate(node[2], env, from_int, line)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    return a / b
