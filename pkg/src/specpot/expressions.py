"""Expression text format: recursive-descent parser and canonical printer.

Grammar (whitespace-insensitive)::

    expr     :=  term  (('+' | '-') term)*
    term     :=  unary (('*' | '/') unary)*
    unary    :=  '-' unary | power
    power    :=  atom ['^' exponent]
    exponent :=  ['-'] integer | '(' ['-'] integer ['/' integer] ')'
    atom     :=  integer | symbol | func '(' expr ')' | '(' expr ')'
    symbol   :=  z | E | nu | a | b | c | d | t
    func     :=  ln | sqrt | exp

The printer emits the same dialect (with ``ln`` for the natural logarithm
and ``sqrt(x)^k`` for half-integer powers), and ``print_expr(parse_expr(s))
== s`` holds for canonical strings.
"""

from __future__ import annotations

import re

import sympy as sp
from sympy.printing.str import StrPrinter

from .algebra import SYMBOLS
from .errors import ExprSyntaxError

_ATOMS = dict(SYMBOLS)
_ATOMS["t"] = sp.Symbol("t")
_FUNCS = {"ln": sp.log, "sqrt": sp.sqrt, "exp": sp.exp}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.items = []  # (kind, value, offset)
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                stripped = len(text) - len(text[pos:].lstrip())
                raise ExprSyntaxError(stripped if pos == 0 else pos,
                                      ("token",),
                                      "unrecognized character at offset %d" % pos)
            offset = m.start(m.lastindex)
            if m.group(1):
                self.items.append(("int", int(m.group(1)), offset))
            elif m.group(2):
                self.items.append(("name", m.group(2), offset))
            else:
                self.items.append(("op", m.group(3), offset))
            pos = m.end()
        self.items.append(("end", None, len(text)))
        self.index = 0

    def peek(self):
        return self.items[self.index]

    def next(self):
        tok = self.items[self.index]
        self.index += 1
        return tok

    def expect_op(self, op):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            raise ExprSyntaxError(offset, (op,))
        return self.next()


def parse_expr(text: str) -> sp.Expr:
    """Parse the expression dialect into an exact symbolic tree."""
    toks = _Tokens(text)
    expr = _parse_sum(toks)
    kind, _value, offset = toks.peek()
    if kind != "end":
        raise ExprSyntaxError(offset, ("end of input",))
    return expr


def _parse_sum(toks):
    expr = _parse_product(toks)
    while True:
        kind, value, _ = toks.peek()
        if kind == "op" and value in "+-":
            toks.next()
            rhs = _parse_product(toks)
            expr = expr + rhs if value == "+" else expr - rhs
        else:
            return expr


def _parse_product(toks):
    expr = _parse_unary(toks)
    while True:
        kind, value, _ = toks.peek()
        if kind == "op" and value in "*/":
            toks.next()
            rhs = _parse_unary(toks)
            expr = expr * rhs if value == "*" else expr / rhs
        else:
            return expr


def _parse_unary(toks):
    kind, value, _ = toks.peek()
    if kind == "op" and value == "-":
        toks.next()
        return -_parse_unary(toks)
    return _parse_power(toks)


def _parse_power(toks):
    base = _parse_atom(toks)
    kind, value, _ = toks.peek()
    if kind == "op" and value == "^":
        toks.next()
        return base ** _parse_exponent(toks)
    return base


def _parse_exponent(toks):
    kind, value, offset = toks.peek()
    if kind == "int":
        toks.next()
        return sp.Integer(value)
    if kind == "op" and value == "-":
        toks.next()
        kind, value, offset = toks.peek()
        if kind != "int":
            raise ExprSyntaxError(offset, ("integer",))
        toks.next()
        return -sp.Integer(value)
    if kind == "op" and value == "(":
        toks.next()
        sign = 1
        kind, value, offset = toks.peek()
        if kind == "op" and value == "-":
            toks.next()
            sign = -1
        kind, value, offset = toks.peek()
        if kind != "int":
            raise ExprSyntaxError(offset, ("integer",))
        toks.next()
        num = sp.Integer(value)
        den = sp.Integer(1)
        kind, value, offset = toks.peek()
        if kind == "op" and value == "/":
            toks.next()
            kind, value, offset = toks.peek()
            if kind != "int":
                raise ExprSyntaxError(offset, ("integer",))
            toks.next()
            den = sp.Integer(value)
        toks.expect_op(")")
        return sign * num / den
    raise ExprSyntaxError(offset, ("integer exponent",))


def _parse_atom(toks):
    kind, value, offset = toks.next()
    if kind == "int":
        return sp.Integer(value)
    if kind == "name":
        if value in _FUNCS:
            toks.expect_op("(")
            arg = _parse_sum(toks)
            toks.expect_op(")")
            return _FUNCS[value](arg)
        if value in _ATOMS:
            return _ATOMS[value]
        raise ExprSyntaxError(offset, tuple(sorted(_ATOMS)) +
                              tuple(sorted(_FUNCS)))
    if kind == "op" and value == "(":
        expr = _parse_sum(toks)
        toks.expect_op(")")
        return expr
    raise ExprSyntaxError(offset, ("integer", "symbol", "("))


class _CanonicalPrinter(StrPrinter):
    """Deterministic text form in the parser's dialect."""

    def _print_log(self, expr):
        return "ln(%s)" % self._print(expr.args[0])

    def _print_Pow(self, expr, rational=False):
        base, exponent = expr.as_base_exp()
        if exponent.is_Rational and not exponent.is_Integer \
                and exponent.q == 2 and exponent > 0:
            root = "sqrt(%s)" % self._print(base)
            if exponent == sp.Rational(1, 2):
                return root
            return "%s**%d" % (root, exponent.p)
        return super()._print_Pow(expr, rational=rational)


_printer = _CanonicalPrinter()


def print_expr(expr) -> str:
    return _printer.doprint(sp.sympify(expr)).replace("**", "^")
