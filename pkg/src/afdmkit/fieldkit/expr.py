"""Closed-form scalar-field expressions over a small declared variable set.

The grammar (documented in the README) supports decimal literals, the
variables ``x1, x2, t, y3, z, zeta``, the unary functions
``exp, ln, sin, cos, sqrt, abs``, the binary operators ``+ - * /`` and
constant-exponent ``^``.  Precedence is ``^`` over unary minus over
``* /`` over ``+ -``; ``^`` is right-associative.

Expressions are immutable trees.  Evaluation is vectorized over numpy
arrays; domain violations (log of a non-positive value, division by zero,
fractional power of a negative base) are reported at evaluation time with
the offending node attached.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from ..errors import (
    DisallowedVariableError,
    EvaluationDomainError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
)

DSL_VARIABLES = ("x1", "x2", "t", "y3", "z", "zeta")
UNARY_FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt", "abs")


class Expr:
    """Base node.  Supports arithmetic operators for programmatic assembly."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return pow_const(self, exponent)

    def __repr__(self):
        return f"Expr({pretty(self)!r})"


@dataclass(frozen=True, repr=False)
class Const(Expr):
    value: float


@dataclass(frozen=True, repr=False)
class Var(Expr):
    name: str


@dataclass(frozen=True, repr=False)
class Unary(Expr):
    op: str  # neg | exp | ln | sin | cos | sqrt | abs
    arg: Expr


@dataclass(frozen=True, repr=False)
class Binary(Expr):
    op: str  # + - * /
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True, repr=False)
class Pow(Expr):
    base: Expr
    exponent: float  # constant by construction


def as_expr(x):
    if isinstance(x, Expr):
        return x
    return Const(float(x))


def const(value):
    return Const(float(value))


def var(name):
    if name not in DSL_VARIABLES:
        raise ValueError(f"'{name}' is not a DSL variable {DSL_VARIABLES}")
    return Var(name)


# -- folding constructors ---------------------------------------------------
# Light folding only: enough to keep derivative trees from exploding.

def add(a, b):
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if isinstance(a, Const) and a.value == 0.0:
        return b
    if isinstance(b, Const) and b.value == 0.0:
        return a
    return Binary("+", a, b)


def sub(a, b):
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if isinstance(b, Const) and b.value == 0.0:
        return a
    if isinstance(a, Const) and a.value == 0.0:
        return neg(b)
    return Binary("-", a, b)


def mul(a, b):
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if isinstance(a, Const):
        if a.value == 0.0:
            return Const(0.0)
        if a.value == 1.0:
            return b
    if isinstance(b, Const):
        if b.value == 0.0:
            return Const(0.0)
        if b.value == 1.0:
            return a
    return Binary("*", a, b)


def div(a, b):
    if isinstance(b, Const):
        if b.value == 1.0:
            return a
        if isinstance(a, Const):
            if b.value == 0.0:
                raise EvaluationDomainError("constant division by zero")
            return Const(a.value / b.value)
    if isinstance(a, Const) and a.value == 0.0:
        return Const(0.0)
    return Binary("/", a, b)


def neg(a):
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Unary) and a.op == "neg":
        return a.arg
    return Unary("neg", a)


def pow_const(base, exponent):
    p = float(exponent)
    if p == 1.0:
        return base
    if p == 0.0:
        return Const(1.0)
    if isinstance(base, Const):
        return Const(float(base.value**p))
    return Pow(base, p)


def exp(a):
    return Unary("exp", as_expr(a))


def ln(a):
    return Unary("ln", as_expr(a))


def sin(a):
    return Unary("sin", as_expr(a))


def cos(a):
    return Unary("cos", as_expr(a))


def sqrt(a):
    return Unary("sqrt", as_expr(a))


def absval(a):
    return Unary("abs", as_expr(a))


_UNARY_BUILDERS = {
    "exp": exp,
    "ln": ln,
    "sin": sin,
    "cos": cos,
    "sqrt": sqrt,
    "abs": absval,
}


def variables(e):
    """Set of variable names appearing in the tree."""
    out = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Unary):
            stack.append(node.arg)
        elif isinstance(node, Binary):
            stack.append(node.lhs)
            stack.append(node.rhs)
        elif isinstance(node, Pow):
            stack.append(node.base)
    return out


# -- tokenizer / parser -----------------------------------------------------

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self._skip_ws()

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        """Return (kind, value, offset) without consuming."""
        if self.pos >= len(self.text):
            return ("eof", "", self.pos)
        ch = self.text[self.pos]
        if ch in "+-*/^()":
            return ("op", ch, self.pos)
        m = _NUMBER_RE.match(self.text, self.pos)
        if m:
            return ("number", m.group(), self.pos)
        m = _IDENT_RE.match(self.text, self.pos)
        if m:
            return ("ident", m.group(), self.pos)
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", self.pos)

    def take(self):
        kind, value, offset = self.peek()
        self.pos = offset + len(value)
        self._skip_ws()
        return kind, value, offset


class _Parser:
    def __init__(self, text, allowed_vars):
        self.toks = _Tokenizer(text)
        self.allowed = frozenset(allowed_vars)

    def parse(self):
        e = self.expression()
        kind, value, offset = self.toks.peek()
        if kind != "eof":
            raise ExpressionSyntaxError(f"unexpected trailing input {value!r}", offset)
        return e

    def expression(self):
        e = self.term()
        while True:
            kind, value, _ = self.toks.peek()
            if kind == "op" and value in "+-":
                self.toks.take()
                rhs = self.term()
                e = add(e, rhs) if value == "+" else sub(e, rhs)
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            kind, value, _ = self.toks.peek()
            if kind == "op" and value in "*/":
                self.toks.take()
                rhs = self.factor()
                e = mul(e, rhs) if value == "*" else div(e, rhs)
            else:
                return e

    def factor(self):
        kind, value, _ = self.toks.peek()
        if kind == "op" and value == "-":
            self.toks.take()
            return neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        kind, value, offset = self.toks.peek()
        if kind == "op" and value == "^":
            self.toks.take()
            _, _, exp_offset = self.toks.peek()
            exponent = self.factor()  # right-associative; allows x^-2, x^2^3
            if not isinstance(exponent, Const):
                raise ExpressionSyntaxError(
                    "pow exponent must be a constant", exp_offset
                )
            return pow_const(base, exponent.value)
        return base

    def atom(self):
        kind, value, offset = self.toks.take()
        if kind == "number":
            return Const(float(value))
        if kind == "op" and value == "(":
            e = self.expression()
            kind, value, offset = self.toks.take()
            if not (kind == "op" and value == ")"):
                raise ExpressionSyntaxError("expected ')'", offset)
            return e
        if kind == "ident":
            nxt_kind, nxt_value, _ = self.toks.peek()
            if nxt_kind == "op" and nxt_value == "(":
                if value not in _UNARY_BUILDERS:
                    raise UnknownIdentifierError(value, offset)
                self.toks.take()
                arg = self.expression()
                k2, v2, off2 = self.toks.take()
                if not (k2 == "op" and v2 == ")"):
                    raise ExpressionSyntaxError("expected ')'", off2)
                return _UNARY_BUILDERS[value](arg)
            if value in DSL_VARIABLES:
                if value not in self.allowed:
                    raise DisallowedVariableError(value, offset)
                return Var(value)
            raise UnknownIdentifierError(value, offset)
        raise ExpressionSyntaxError(f"unexpected token {value!r}", offset)


def parse_expression(text, allowed_vars=DSL_VARIABLES):
    """Parse ``text`` into an expression tree.

    ``allowed_vars`` restricts which DSL variables may appear; anything else
    raises :class:`DisallowedVariableError` with the byte offset.
    """
    if not text or text.isspace():
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(text, allowed_vars).parse()


# -- printing ---------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e):
    if isinstance(e, (Const, Var)):
        # negative literals print with a leading minus => unary-minus tightness
        if isinstance(e, Const) and e.value < 0:
            return _PREC_NEG
        return _PREC_ATOM
    if isinstance(e, Pow):
        return _PREC_POW
    if isinstance(e, Unary):
        return _PREC_NEG if e.op == "neg" else _PREC_ATOM
    return _PREC_MUL if e.op in "*/" else _PREC_ADD


def _fmt_const(v):
    if v == int(v) and abs(v) < 1e16:
        return repr(int(v))
    return repr(v)


def pretty(e):
    """Render with minimal parentheses; parse(pretty(e)) evaluates like e."""
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pow):
        base = pretty(e.base)
        if _prec(e.base) <= _PREC_POW:
            base = f"({base})"
        return f"{base}^{_fmt_const(e.exponent)}"
    if isinstance(e, Unary):
        if e.op == "neg":
            arg = pretty(e.arg)
            if _prec(e.arg) < _PREC_NEG:
                arg = f"({arg})"
            return f"-{arg}"
        return f"{e.op}({pretty(e.arg)})"
    lhs, rhs = pretty(e.lhs), pretty(e.rhs)
    if e.op in "+-":
        if _prec(e.lhs) < _PREC_ADD:
            lhs = f"({lhs})"
        # subtraction / trailing additive terms need parens at equal precedence
        if _prec(e.rhs) < _PREC_ADD or (e.op == "-" and _prec(e.rhs) == _PREC_ADD):
            rhs = f"({rhs})"
        return f"{lhs} {e.op} {rhs}"
    if _prec(e.lhs) < _PREC_MUL:
        lhs = f"({lhs})"
    if _prec(e.rhs) < _PREC_MUL or (e.op == "/" and _prec(e.rhs) == _PREC_MUL):
        rhs = f"({rhs})"
    return f"{lhs} {e.op} {rhs}"


# -- evaluation -------------------------------------------------------------

def evaluate(e, env):
    """Evaluate on an environment of scalars or broadcastable numpy arrays."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise EvaluationDomainError(f"no value bound for '{e.name}'", e) from None
    if isinstance(e, Pow):
        base = evaluate(e.base, env)
        p = e.exponent
        if p != int(p) and np.any(np.asarray(base) < 0):
            raise EvaluationDomainError(
                f"fractional power {p} of a negative base", e
            )
        if p < 0 and np.any(np.asarray(base) == 0):
            raise EvaluationDomainError("zero base with negative exponent", e)
        return base**p
    if isinstance(e, Unary):
        u = evaluate(e.arg, env)
        if e.op == "neg":
            return -u
        if e.op == "exp":
            return np.exp(u)
        if e.op == "ln":
            if np.any(np.asarray(u) <= 0):
                raise EvaluationDomainError("ln of a non-positive value", e)
            return np.log(u)
        if e.op == "sin":
            return np.sin(u)
        if e.op == "cos":
            return np.cos(u)
        if e.op == "sqrt":
            if np.any(np.asarray(u) < 0):
                raise EvaluationDomainError("sqrt of a negative value", e)
            return np.sqrt(u)
        return np.abs(u)
    lhs = evaluate(e.lhs, env)
    rhs = evaluate(e.rhs, env)
    if e.op == "+":
        return lhs + rhs
    if e.op == "-":
        return lhs - rhs
    if e.op == "*":
        return lhs * rhs
    if np.any(np.asarray(rhs) == 0):
        raise EvaluationDomainError("division by zero", e)
    return lhs / rhs


# -- symbolic partial derivative -------------------------------------------

def diff(e, name):
    """Exact partial derivative as a new tree (with light constant folding).

    The derivative of ``abs`` is taken as ``u/|u|``, which matches the jet
    convention away from zero; fields fed through here are kept
    sign-definite by their callers.
    """
    if isinstance(e, Const):
        return Const(0.0)
    if isinstance(e, Var):
        return Const(1.0 if e.name == name else 0.0)
    if isinstance(e, Pow):
        du = diff(e.base, name)
        return mul(mul(Const(e.exponent), pow_const(e.base, e.exponent - 1.0)), du)
    if isinstance(e, Unary):
        du = diff(e.arg, name)
        if isinstance(du, Const) and du.value == 0.0:
            return Const(0.0)
        u = e.arg
        if e.op == "neg":
            return neg(du)
        if e.op == "exp":
            return mul(exp(u), du)
        if e.op == "ln":
            return div(du, u)
        if e.op == "sin":
            return mul(cos(u), du)
        if e.op == "cos":
            return neg(mul(sin(u), du))
        if e.op == "sqrt":
            return div(du, mul(Const(2.0), sqrt(u)))
        # abs
        return mul(div(u, absval(u)), du)
    dl, dr = diff(e.lhs, name), diff(e.rhs, name)
    if e.op == "+":
        return add(dl, dr)
    if e.op == "-":
        return sub(dl, dr)
    if e.op == "*":
        return add(mul(dl, e.rhs), mul(e.lhs, dr))
    # quotient rule
    return sub(div(dl, e.rhs), div(mul(e.lhs, dr), mul(e.rhs, e.rhs)))
