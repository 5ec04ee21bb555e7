"""Recursive-descent parser for rational expressions in z and the parameters.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?
    primary := NUMBER | IDENT | 'sqrt' '(' expr ')' | '(' expr ')'

Exponents must evaluate to integer constants.  ``sqrt`` is only accepted
by ``parse_form`` (canonical forms emitted by the engine); input for r
goes through ``parse_expression``, which rejects radicals.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .params import ParamField
from .ratfunc import RatFunc

__all__ = ["parse_expression", "parse_form", "parse_param", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),]))")


def tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, field, allow_radicals):
        self.text = text
        self.field = field
        self.allow_radicals = allow_radicals
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != value:
            self._unexpected(tok)
        return self.advance()

    def _unexpected(self, tok):
        if tok[0] == "end":
            raise ParseError("syntax error: unexpected end of input", tok[2])
        raise ParseError(f"syntax error: unexpected {tok[1]!r}", tok[2])

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self._unexpected(tok)
        return value

    def expr(self):
        value = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.advance()
                rhs = self.unary()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if not rhs:
                        raise ParseError("division by zero", tok[2])
                    value = value / rhs
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.advance()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.primary()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.advance()
            start = self.peek()[2]
            exponent = self.unary()
            n = None
            if exponent.is_constant():
                n = exponent.constant_value().as_integer()
            if n is None:
                raise ParseError("non-integer exponent", start)
            if n < 0 and not base:
                raise ParseError("division by zero", start)
            return base ** n
        return base

    def primary(self):
        tok = self.advance()
        kind, value, pos = tok
        if kind == "num":
            return RatFunc.const(self.field, Fraction(int(value)))
        if kind == "id":
            nxt = self.peek()
            if value == "sqrt" and nxt[0] == "op" and nxt[1] == "(":
                if not self.allow_radicals:
                    raise ParseError("radicals are not accepted in input expressions", pos)
                self.advance()
                arg = self.expr()
                self.expect(")")
                if not arg.is_constant():
                    raise ParseError("sqrt argument must not depend on z", pos)
                return RatFunc.const(self.field, self.field.sqrt(arg.constant_value()))
            if value == "z":
                return RatFunc.z(self.field)
            if value in self.field.names:
                return RatFunc.const(self.field, self.field.param(value))
            raise ParseError(f"unknown identifier {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        self._unexpected(tok)


def _field_for(field_or_names):
    if isinstance(field_or_names, ParamField):
        return field_or_names
    return ParamField(tuple(field_or_names or ()))


def parse_expression(text, params=()):
    """Parse input text for r (no radicals) into a normalized RatFunc.

    ``params`` is a ParamField or a sequence of parameter names.
    """
    field = _field_for(params)
    return _Parser(text, field, allow_radicals=False).parse()


def parse_form(text, field):
    """Parse an emitted canonical form; ``sqrt`` adjoins into ``field``."""
    return _Parser(text, field, allow_radicals=True).parse()


def parse_param(text, field, allow_radicals=True):
    """Parse a z-free expression into a ParamElem."""
    value = _Parser(text, field, allow_radicals=allow_radicals).parse()
    if not value.is_constant():
        raise ParseError("expression must not depend on z", 0)
    return value.constant_value()
