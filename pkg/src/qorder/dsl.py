"""A tiny expression language for user-supplied quantile functions.

Grammar (no implicit multiplication):

    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := unary ("^" factor)?          # right-associative power
    unary   := "-" unary | atom
    atom    := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"

``p`` is the probability variable; any other identifier is a parameter that
must be bound at evaluation time.  Functions: log, exp, sqrt, abs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError, ValidationError
from .models import QuantileModel, check_p
from .limits import limit_at

__all__ = [
    "Expression",
    "Num",
    "Var",
    "Neg",
    "Bin",
    "Call",
    "parse",
    "render",
    "evaluate",
    "as_quantile_model",
    "DslModel",
]

FUNCTIONS = ("log", "exp", "sqrt", "abs")


class Expression:
    """Base class for AST nodes; immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Num(Expression):
    value: float


@dataclass(frozen=True)
class Var(Expression):
    name: str


@dataclass(frozen=True)
class Neg(Expression):
    child: Expression


@dataclass(frozen=True)
class Bin(Expression):
    op: str  # + - * / ^
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Call(Expression):
    fn: str
    arg: Expression


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            # skip pure whitespace tails; anything else is a lexing failure
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = len(text) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r} at offset {bad}")
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, val, off = self.peek()
        got = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"syntax error at offset {off}: got {got}, expected {expected}")

    def expect_op(self, op):
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            return self.next()
        self.fail(f"'{op}'")

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                node = Bin(val, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                node = Bin(val, node, self.factor())
            else:
                return node

    def factor(self):
        node = self.unary()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            return Bin("^", node, self.factor())  # right-associative
        return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return Neg(self.unary())
        return self.atom()

    def atom(self):
        kind, val, off = self.peek()
        if kind == "num":
            self.next()
            return Num(float(val))
        if kind == "ident":
            self.next()
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "(":
                if val not in FUNCTIONS:
                    raise ParseError(
                        f"unknown function {val!r} at offset {off}; "
                        f"available: {', '.join(FUNCTIONS)}"
                    )
                self.next()
                arg = self.expr()
                self.expect_op(")")
                return Call(val, arg)
            return Var(val)
        if kind == "op" and val == "(":
            self.next()
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail("a number, identifier, function call, '-' or '('")


def parse(text: str) -> Expression:
    """Parse an expression; raises ParseError with the byte offset on failure."""
    if not text or not text.strip():
        raise ParseError("empty expression")
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "eof":
        p.fail("end of input or an operator")
    return node


# ---------------------------------------------------------------------------
# rendering and evaluation

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}


def render(expr: Expression) -> str:
    """Serialize an AST back to source; parse(render(e)) == e."""
    if isinstance(expr, Num):
        return repr(expr.value) if expr.value != int(expr.value) else str(int(expr.value))
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Neg):
        inner = render(expr.child)
        if isinstance(expr.child, (Bin, Neg)):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, Call):
        return f"{expr.fn}({render(expr.arg)})"
    if isinstance(expr, Bin):
        lhs, rhs = render(expr.left), render(expr.right)
        prec = _PREC[expr.op]
        if isinstance(expr.left, Bin) and (
            _PREC[expr.left.op] < prec or (expr.op == "^" and _PREC[expr.left.op] == prec)
        ):
            lhs = f"({lhs})"
        elif isinstance(expr.left, Neg):
            lhs = f"({lhs})"
        if isinstance(expr.right, Bin) and (
            _PREC[expr.right.op] < prec
            or (_PREC[expr.right.op] == prec and expr.op != "^")
        ):
            rhs = f"({rhs})"
        elif isinstance(expr.right, Neg):
            rhs = f"({rhs})"
        return f"{lhs} {expr.op} {rhs}"
    raise TypeError(f"not an Expression: {expr!r}")


def _domain(cond, expr, what):
    if np.any(cond):
        raise DomainError(f"{what} in subexpression '{render(expr)}'")


def evaluate(expr: Expression, p, bindings=None):
    """Evaluate at probability p (scalar or array) with parameter bindings."""
    bindings = bindings or {}

    def ev(node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Var):
            if node.name == "p":
                return np.asarray(p, dtype=float)
            if node.name not in bindings:
                raise ValidationError(f"unbound parameter {node.name!r}")
            return float(bindings[node.name])
        if isinstance(node, Neg):
            return -ev(node.child)
        if isinstance(node, Call):
            arg = ev(node.arg)
            if node.fn == "log":
                _domain(np.asarray(arg) <= 0.0, node, "log of a non-positive value")
                return np.log(arg)
            if node.fn == "exp":
                return np.exp(arg)
            if node.fn == "sqrt":
                _domain(np.asarray(arg) < 0.0, node, "sqrt of a negative value")
                return np.sqrt(arg)
            return np.abs(arg)
        if isinstance(node, Bin):
            a, b = ev(node.left), ev(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if node.op == "/":
                _domain(np.asarray(b) == 0.0, node, "division by zero")
                return a / b
            # power
            bb = np.asarray(b)
            aa = np.asarray(a)
            _domain((aa == 0.0) & (bb < 0.0), node, "zero raised to a negative power")
            _domain((aa < 0.0) & (bb != np.floor(bb)), node,
                    "negative base with non-integer exponent")
            return np.power(a, b)
        raise TypeError(f"not an Expression: {node!r}")

    out = ev(expr)
    if np.isscalar(p) or (isinstance(p, np.ndarray) and np.ndim(p) == 0):
        return float(out)
    return np.broadcast_to(np.asarray(out, dtype=float), np.shape(p)).copy() \
        if np.shape(out) != np.shape(p) else out


# ---------------------------------------------------------------------------
# model adapter


class DslModel(QuantileModel):
    """Quantile model backed by parsed expressions."""

    def __init__(self, qf, qdf=None, bindings=None, source=None):
        self._qf = qf
        self._qdf = qdf
        self._bindings = dict(bindings or {})
        self._source = source or render(qf)
        self._validate()

    def _validate(self):
        grid = np.linspace(1.0 / 1025.0, 1024.0 / 1025.0, 1024)
        vals = evaluate(self._qf, grid, self._bindings)
        bad = np.nonzero(np.diff(vals) <= 0.0)[0]
        if bad.size:
            i = int(bad[0])
            raise ValidationError(
                "quantile expression is not strictly increasing: "
                f"qf({grid[i]:.6f}) = {vals[i]:.9g} >= qf({grid[i + 1]:.6f}) = {vals[i + 1]:.9g}"
            )

    def quantile(self, p):
        return evaluate(self._qf, check_p(p), self._bindings)

    def quantile_density(self, p):
        p = check_p(p)
        if self._qdf is not None:
            return evaluate(self._qdf, p, self._bindings)
        h = 1e-6 * np.minimum(p, 1.0 - p)
        upper = evaluate(self._qf, p + h, self._bindings)
        lower = evaluate(self._qf, p - h, self._bindings)
        return (upper - lower) / (2.0 * h)

    def tail_quantile(self, end):
        lim = limit_at(lambda q: evaluate(self._qf, q, self._bindings), end)
        if lim.is_determinate:
            return lim.as_float()
        # fall back to a near-endpoint evaluation
        return super().tail_quantile(end)

    def label(self):
        parts = [f"dsl:{self._source}"]
        if self._qdf is not None:
            parts.append(f"qdf={render(self._qdf)}")
        parts.extend(f"{k}={v:g}" for k, v in sorted(self._bindings.items()))
        return ";".join(parts)


def as_quantile_model(qf, qdf=None, bindings=None) -> DslModel:
    """Wrap expressions into a QuantileModel, validating monotonicity."""
    if isinstance(qf, str):
        qf = parse(qf)
    if isinstance(qdf, str):
        qdf = parse(qdf)
    return DslModel(qf, qdf, bindings)
