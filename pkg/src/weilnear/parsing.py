"""Tokenizer and expression evaluation for problem files and CLI literals.

Expressions mix three levels of values: exact rationals, base polynomials
and A-polynomials.  Operands are lifted to the highest level present
(rationals embed as constants, base polynomials prolong), `^A` lifts a
base-level expression explicitly, and division is restricted to nonzero
rational divisors.  Variables are ``x1..xn`` with ``x,y,z`` aliases for
low dimensions when nothing else claims those names; algebra basis labels
act as constant coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import ParseError
from .poly import APoly, Poly, prolong
from .weil import WeilAlgebra


class Token(NamedTuple):
    kind: str      # INT | IDENT | SYM | EOF
    value: object
    line: int
    col: int


_SYMBOLS = set("={}[](),:^*+-/")


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    size = len(text)
    while i < size:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < size and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            startcol = col
            while i < size and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(Token("INT", int(text[start:i]), line, startcol))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            startcol = col
            while i < size and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("IDENT", text[start:i], line, startcol))
            continue
        if ch in _SYMBOLS:
            tokens.append(Token("SYM", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", None, line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def accept_sym(self, sym: str) -> bool:
        tok = self.peek()
        if tok.kind == "SYM" and tok.value == sym:
            self.next()
            return True
        return False

    def expect_sym(self, sym: str) -> Token:
        tok = self.next()
        if tok.kind != "SYM" or tok.value != sym:
            raise ParseError(f"expected {sym!r}, found {tok.value!r}",
                             tok.line, tok.col)
        return tok

    def expect_ident(self) -> Token:
        tok = self.next()
        if tok.kind != "IDENT":
            raise ParseError(f"expected a name, found {tok.value!r}",
                             tok.line, tok.col)
        return tok

    def expect_int(self) -> Token:
        tok = self.next()
        if tok.kind != "INT":
            raise ParseError(f"expected an integer, found {tok.value!r}",
                             tok.line, tok.col)
        return tok

    def at_end(self) -> bool:
        return self.peek().kind == "EOF"


class ExprContext:
    """Name resolution data for expression evaluation."""

    def __init__(self, n: int, algebra: Optional[WeilAlgebra] = None,
                 names: Optional[dict] = None):
        self.n = n
        self.algebra = algebra
        self.names = dict(names or {})
        self.var_map = {f"x{j}": j for j in range(1, n + 1)}
        taken = set(self.names)
        if algebra is not None:
            taken |= set(algebra.labels)
        for alias, j in zip(("x", "y", "z"), range(1, min(n, 3) + 1)):
            if alias not in taken and alias not in self.var_map:
                self.var_map[alias] = j


# value levels: 0 = rational, 1 = base polynomial, 2 = A-polynomial

def _level(v) -> int:
    if isinstance(v, Fraction):
        return 0
    if isinstance(v, Poly):
        return 1
    return 2


def _lift(ctx: ExprContext, v, level: int, tok: Token):
    cur = _level(v)
    if cur >= level:
        return v
    if level >= 1 and cur == 0:
        v = Poly.constant(ctx.n, v)
        cur = 1
    if level == 2:
        if ctx.algebra is None:
            raise ParseError("no algebra in scope for an A-valued expression",
                             tok.line, tok.col)
        v = prolong(v, ctx.algebra)
    return v


def _binop(ctx, op: str, a, b, tok: Token):
    if op == "/":
        if _level(b) != 0:
            raise ParseError("division is only by nonzero rationals",
                             tok.line, tok.col)
        if b == 0:
            raise ParseError("division by zero", tok.line, tok.col)
        if _level(a) == 0:
            return a / b
        return a * (Fraction(1) / b)
    level = max(_level(a), _level(b))
    a = _lift(ctx, a, level, tok)
    b = _lift(ctx, b, level, tok)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    raise ParseError(f"unknown operator {op!r}", tok.line, tok.col)


def _parse_atom(ts: TokenStream, ctx: ExprContext):
    tok = ts.next()
    if tok.kind == "INT":
        return Fraction(tok.value)
    if tok.kind == "SYM" and tok.value == "(":
        value = _parse_sum(ts, ctx)
        ts.expect_sym(")")
        return value
    if tok.kind == "IDENT":
        name = tok.value
        if name in ctx.var_map:
            return Poly.variable(ctx.n, ctx.var_map[name])
        if ctx.algebra is not None and name in ctx.algebra._label_index:
            return APoly.constant(ctx.algebra, ctx.n, ctx.algebra.by_label(name))
        if name in ctx.names:
            return ctx.names[name]
        raise ParseError(f"unknown name {name!r}", tok.line, tok.col)
    raise ParseError(f"unexpected token {tok.value!r}", tok.line, tok.col)


def _parse_power(ts: TokenStream, ctx: ExprContext):
    value = _parse_atom(ts, ctx)
    while ts.peek().kind == "SYM" and ts.peek().value == "^":
        tok = ts.next()
        exp = ts.next()
        if exp.kind == "INT":
            value = value ** exp.value
        elif exp.kind == "IDENT" and exp.value == "A":
            if _level(value) == 2:
                raise ParseError("expression is already A-valued",
                                 tok.line, tok.col)
            value = _lift(ctx, value, 2, tok)
        else:
            raise ParseError("exponent must be a nonnegative integer or A",
                             exp.line, exp.col)
    return value


def _parse_unary(ts: TokenStream, ctx: ExprContext):
    if ts.peek().kind == "SYM" and ts.peek().value == "-":
        ts.next()
        return -_parse_unary(ts, ctx)
    if ts.peek().kind == "SYM" and ts.peek().value == "+":
        ts.next()
        return _parse_unary(ts, ctx)
    return _parse_power(ts, ctx)


def _parse_product(ts: TokenStream, ctx: ExprContext):
    value = _parse_unary(ts, ctx)
    while ts.peek().kind == "SYM" and ts.peek().value in ("*", "/"):
        tok = ts.next()
        rhs = _parse_unary(ts, ctx)
        value = _binop(ctx, tok.value, value, rhs, tok)
    return value


def _parse_sum(ts: TokenStream, ctx: ExprContext):
    value = _parse_product(ts, ctx)
    while ts.peek().kind == "SYM" and ts.peek().value in ("+", "-"):
        tok = ts.next()
        rhs = _parse_product(ts, ctx)
        value = _binop(ctx, tok.value, value, rhs, tok)
    return value


def parse_expression(ts: TokenStream, ctx: ExprContext):
    """Parse one expression from the stream; value is Fraction/Poly/APoly."""
    return _parse_sum(ts, ctx)


def eval_expression(text: str, ctx: ExprContext, want: str = "any"):
    """Evaluate a standalone expression string.

    ``want`` is 'poly' (base level required), 'apoly' (lifted) or 'any'.
    """
    ts = TokenStream(tokenize(text))
    value = parse_expression(ts, ctx)
    if not ts.at_end():
        tok = ts.peek()
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.col)
    return coerce_value(value, ctx, want)


def coerce_value(value, ctx: ExprContext, want: str):
    tok = Token("EOF", None, 0, 0)
    if want == "poly":
        if _level(value) == 2:
            raise ParseError("expected a base-level (real) expression")
        return _lift(ctx, value, 1, tok)
    if want == "apoly":
        return _lift(ctx, value, 2, tok)
    return value


def as_base_poly(phi: APoly) -> Optional[Poly]:
    """Base polynomial whose prolongation is ``phi``, when one exists."""
    terms = {}
    for e, c in phi.terms.items():
        if not c.is_real_multiple_of_unit():
            return None
        terms[e] = c.augmentation
    return Poly(phi.n_vars, terms)
