"""Recursive-descent parser for ring expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := ('+' | '-') unary | primary
    primary := INT | 'L' ['^' exponent] | '[' NAME ']' | 'U' '(' NAME ')'
             | '(' expr ')'
    exponent:= ['-'] INT | '{' rational '}' | '(' rational ')'

``^`` is only allowed directly after ``L``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ring import AtomTable, HalfInt, MotivicClass, default_table


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.lastindex is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, table: AtomTable):
        self.text = text
        self.table = table
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] not in ("op", "name"):
            self.error(f"expected {value!r}, got {tok[1] or 'end of input'!r}", tok)
        return tok

    def parse(self) -> MotivicClass:
        if self.peek()[0] == "end":
            self.error("empty expression")
        x = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.error(f"unexpected {tok[1]!r}")
        return x

    def expr(self):
        x = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.next()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self):
        x = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.next()
            x = x * self.unary()
        return x

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.next()
            x = self.unary()
            return -x if tok[1] == "-" else x
        return self.primary()

    def primary(self):
        tok = self.next()
        kind, val, _ = tok
        if kind == "int":
            return MotivicClass.integer(int(val))
        if kind == "name" and val == "L":
            if self.peek()[:2] == ("op", "^"):
                self.next()
                return MotivicClass.lefschetz(self.exponent())
            return MotivicClass.lefschetz(1)
        if kind == "name" and val == "U":
            self.expect("(")
            name = self.next()
            if name[0] != "name":
                self.error("expected bundle name", name)
            self.expect(")")
            try:
                return self.table.resolve_unit(name[1])
            except KeyError:
                self.error(f"unknown bundle {name[1]!r}", name)
        if kind == "op" and val == "[":
            name = self.next()
            if name[0] != "name":
                self.error("expected atom name", name)
            self.expect("]")
            try:
                return self.table.resolve_atom(name[1])
            except KeyError:
                self.error(f"unknown atom {name[1]!r}", name)
        if kind == "op" and val == "(":
            x = self.expr()
            self.expect(")")
            return x
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)

    def exponent(self) -> HalfInt:
        tok = self.peek()
        if tok[:2] in (("op", "{"), ("op", "(")):
            self.next()
            close = "}" if tok[1] == "{" else ")"
            value = self.rational()
            self.expect(close)
        else:
            value = self.signed_int()
        if value.denominator not in (1, 2):
            self.error(f"exponent {value} has denominator other than 1 or 2", tok)
        return HalfInt.from_fraction(value)

    def signed_int(self) -> Fraction:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.next()
            sign = -1
        tok = self.next()
        if tok[0] != "int":
            self.error("expected integer exponent", tok)
        return Fraction(sign * int(tok[1]))

    def rational(self) -> Fraction:
        num = self.signed_int()
        if self.peek()[:2] == ("op", "/"):
            self.next()
            den = self.next()
            if den[0] != "int" or int(den[1]) == 0:
                self.error("expected nonzero integer denominator", den)
            return num / int(den[1])
        return num


def parse(text: str, table: AtomTable | None = None) -> MotivicClass:
    """Parse ``text`` into a normal-form class; ``*`` is the ring product."""
    return _Parser(text, table or default_table()).parse()
