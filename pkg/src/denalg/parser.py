"""Tokenizer and recursive-descent parser for the expression DSL.

Grammar (whitespace-insensitive):

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' exponent)?
    atom     := rational | ident | deriv | '|Dx|' | 'w' | '(' expr ')'
    exponent := integer | '(' ['-'] rational ')'

Atoms evaluate to normal-form differential operators over the session
chart; a plain expression is an order-0 operator.  ``d/dxN`` is a
coordinate derivative, ``w`` the weight operator, ``|Dx|`` an alias for
the scale variable t.  Identifiers resolve to chart variables first, then
to session bindings.  Errors carry line and column.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DenalgError, ParseError
from .expr import GradedExpr, SCALE
from .operators import DiffOperator

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<dxbar>\|Dx\|)
  | (?P<deriv>d/d[A-Za-z_][A-Za-z0-9_]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^();,=:@])
    """,
    re.VERBOSE,
)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(src):
    tokens = []
    line = 1
    col = 1
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            tokens.append(Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class Parser:
    """Parses DSL source into differential operators over one chart."""

    def __init__(self, chart, bindings=None):
        self.chart = chart
        self.bindings = bindings or {}
        self.tokens = []
        self.pos = 0

    # -- token plumbing -----------------------------------------------------

    def _peek(self):
        return self.tokens[self.pos]

    def _next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect_op(self, text):
        tok = self._next()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(
                f"expected {text!r}, found {tok.text!r}", tok.line, tok.col
            )
        return tok

    def _at_op(self, text):
        tok = self._peek()
        return tok.kind == "op" and tok.text == text

    # -- public entry points --------------------------------------------------

    def parse_operator(self, src):
        """Full parse of the source as a differential operator."""
        self.tokens = tokenize(src)
        self.pos = 0
        op = self._expr()
        tok = self._peek()
        if tok.kind != "eof":
            raise ParseError(
                f"unexpected trailing input {tok.text!r}", tok.line, tok.col
            )
        return op

    def parse_expr(self, src):
        """Full parse of the source as an order-0 expression."""
        op = self.parse_operator(src)
        try:
            return op.as_multiplication()
        except DenalgError:
            raise ParseError(
                "expression must not contain derivative or w tokens"
            ) from None

    # -- grammar ----------------------------------------------------------------

    def _expr(self):
        negate = False
        if self._at_op("-"):
            self._next()
            negate = True
        acc = self._term()
        if negate:
            acc = acc.scale(-1)
        while True:
            if self._at_op("+"):
                self._next()
                acc = acc + self._term()
            elif self._at_op("-"):
                self._next()
                acc = acc - self._term()
            else:
                return acc

    def _term(self):
        acc = self._factor()
        while self._at_op("*"):
            self._next()
            acc = acc.compose(self._factor())
        return acc

    def _factor(self):
        tok = self._peek()
        base = self._atom()
        if not self._at_op("^"):
            return base
        self._next()
        exponent = self._exponent()
        return self._power(base, exponent, tok)

    def _power(self, base, exponent, tok):
        if exponent.denominator == 1 and exponent >= 0:
            n = int(exponent)
            if self._single_odd_variable(base) and n > 1:
                raise ParseError(
                    "odd variable raised to a power above 1", tok.line, tok.col
                )
            acc = DiffOperator.identity(self.chart)
            for _ in range(n):
                acc = acc.compose(base)
            return acc
        try:
            expr = base.as_multiplication()
            return DiffOperator.multiplication(self.chart, expr ** exponent)
        except DenalgError:
            raise ParseError(
                "fractional or negative exponents only apply to powers of t",
                tok.line,
                tok.col,
            ) from None

    def _single_odd_variable(self, op):
        try:
            expr = op.as_multiplication()
        except DenalgError:
            return False
        if len(expr.terms) != 1:
            return False
        (mono, c), = expr.terms.items()
        hot = [
            i for i, e in enumerate(mono)
            if e and expr.universe.variables[i].parity
        ]
        return c == 1 and len(hot) == 1 and sum(1 for e in mono if e) == 1

    def _exponent(self):
        tok = self._peek()
        if tok.kind == "number":
            self._next()
            if "/" in tok.text:
                raise ParseError(
                    "rational exponents must be parenthesized",
                    tok.line,
                    tok.col,
                )
            return Fraction(int(tok.text))
        if self._at_op("("):
            self._next()
            negate = False
            if self._at_op("-"):
                self._next()
                negate = True
            num = self._next()
            if num.kind != "number":
                raise ParseError(
                    "expected a rational exponent", num.line, num.col
                )
            value = Fraction(num.text)
            self._expect_op(")")
            return -value if negate else value
        raise ParseError(
            "expected an integer or parenthesized rational exponent",
            tok.line,
            tok.col,
        )

    def _atom(self):
        tok = self._next()
        if tok.kind == "number":
            return DiffOperator.multiplication(
                self.chart, self.chart.const(Fraction(tok.text))
            )
        if tok.kind == "dxbar":
            return DiffOperator.multiplication(self.chart, self.chart.t())
        if tok.kind == "deriv":
            name = tok.text[3:]
            if name not in self.chart.coord_names:
                raise ParseError(
                    f"unknown coordinate {name!r} in derivative",
                    tok.line,
                    tok.col,
                )
            return DiffOperator.coordinate_derivative(self.chart, name)
        if tok.kind == "ident":
            if tok.text == "w":
                return DiffOperator.weight(self.chart)
            if tok.text in self.chart.universe:
                return DiffOperator.multiplication(
                    self.chart, self.chart.var(tok.text)
                )
            if tok.text in self.bindings:
                value = self.bindings[tok.text]
                if not isinstance(value, DiffOperator):
                    raise ParseError(
                        f"binding {tok.text!r} is not usable in expressions",
                        tok.line,
                        tok.col,
                    )
                return value
            raise ParseError(
                f"unknown variable {tok.text!r}", tok.line, tok.col
            )
        if tok.kind == "op" and tok.text == "(":
            inner = self._expr()
            self._expect_op(")")
            return inner
        raise ParseError(
            f"unexpected token {tok.text!r}", tok.line, tok.col
        )


def parse_operator(src, chart, bindings=None):
    return Parser(chart, bindings).parse_operator(src)


def parse_expr(src, chart, bindings=None):
    return Parser(chart, bindings).parse_expr(src)
