"""Arithmetic expression front-end: tokenizer, recursive-descent parser, evaluator.

Expressions are written in the two variables x and y with the usual operators
(+ - * / ^, unary minus, parentheses) and a fixed whitelist of calls
(sqrt, exp, ln, abs, min, max).  Grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' factor)?
    base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'

'^' is right-associative and binds tighter than unary minus, so -x^2 parses
as -(x^2).  Evaluation is strict: division by zero, ln of a non-positive
argument, and fractional powers of negative bases raise EvalError rather
than producing infinities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

# token kinds
NUMBER = "number"
IDENT = "ident"
PLUS = "plus"
MINUS = "minus"
STAR = "star"
SLASH = "slash"
CARET = "caret"
LPAREN = "lparen"
RPAREN = "rparen"
COMMA = "comma"

_SINGLE_CHAR = {
    "+": PLUS,
    "-": MINUS,
    "*": STAR,
    "/": SLASH,
    "^": CARET,
    "(": LPAREN,
    ")": RPAREN,
    ",": COMMA,
}

# call name -> arity
CALL_WHITELIST = {"sqrt": 1, "exp": 1, "ln": 1, "abs": 1, "min": 2, "max": 2}

VARIABLES = ("x", "y")


class LexError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EvalError(ValueError):
    """Raised when evaluation hits a domain violation (division by zero, ...)."""

    def __init__(self, message: str, subexpr: "Expr | None" = None):
        if subexpr is not None:
            message = f"{message} in '{to_string(subexpr)}'"
        super().__init__(message)
        self.subexpr = subexpr


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # add | sub | mul | div | pow
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]


Expr = Union[Const, Var, Neg, BinOp, Call]


def tokenize(src: str) -> list[Token]:
    """Lex a source string into tokens; whitespace separates, everything else must lex."""
    if not src.strip():
        raise LexError("empty expression", 0)
    tokens: list[Token] = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in _SINGLE_CHAR:
            tokens.append(Token(_SINGLE_CHAR[c], c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and src[i + 1].isdigit()):
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == ".":
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            tokens.append(Token(NUMBER, src[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(Token(IDENT, src[i:j], i))
            i = j
            continue
        raise LexError(f"illegal character {c!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], src_len: int):
        self.tokens = tokens
        self.pos = 0
        self.src_len = src_len

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {kind}, found end of input", self.src_len)
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text!r}", tok.position)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.text!r}", tok.position)
        return e

    def expr(self) -> Expr:
        node = self.term()
        while (tok := self.peek()) is not None and tok.kind in (PLUS, MINUS):
            self.advance()
            rhs = self.term()
            node = BinOp("add" if tok.kind == PLUS else "sub", node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while (tok := self.peek()) is not None and tok.kind in (STAR, SLASH):
            self.advance()
            rhs = self.factor()
            node = BinOp("mul" if tok.kind == STAR else "div", node, rhs)
        return node

    def factor(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.kind == MINUS:
            self.advance()
            return Neg(self.factor())
        node = self.base()
        tok = self.peek()
        if tok is not None and tok.kind == CARET:
            self.advance()
            return BinOp("pow", node, self.factor())
        return node

    def base(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected expression, found end of input", self.src_len)
        if tok.kind == NUMBER:
            self.advance()
            value = float(tok.text)
            if not np.isfinite(value):
                raise ParseError(f"constant {tok.text!r} overflows", tok.position)
            return Const(value)
        if tok.kind == LPAREN:
            self.advance()
            inner = self.expr()
            self.expect(RPAREN)
            return inner
        if tok.kind == IDENT:
            self.advance()
            nxt = self.peek()
            if nxt is not None and nxt.kind == LPAREN:
                if tok.text not in CALL_WHITELIST:
                    raise ParseError(f"unknown function {tok.text!r}", tok.position)
                self.advance()
                args = [self.expr()]
                while (t := self.peek()) is not None and t.kind == COMMA:
                    self.advance()
                    args.append(self.expr())
                self.expect(RPAREN)
                arity = CALL_WHITELIST[tok.text]
                if len(args) != arity:
                    raise ParseError(
                        f"{tok.text} takes {arity} argument(s), got {len(args)}",
                        tok.position,
                    )
                return Call(tok.text, tuple(args))
            if tok.text in VARIABLES:
                return Var(tok.text)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.position)
        raise ParseError(f"unexpected {tok.text!r}", tok.position)


def parse_tokens(tokens: list[Token], src_len: int = 0) -> Expr:
    return _Parser(tokens, src_len).parse()


def parse(src: str) -> Expr:
    return parse_tokens(tokenize(src), len(src))


def _is_integer_exponent(e) -> bool:
    arr = np.asarray(e, dtype=float)
    return bool(np.all(arr == np.floor(arr)))


def _eval(node: Expr, x, y):
    """Recursive evaluator; x/y may be floats or numpy arrays (broadcasting)."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x if node.name == "x" else y
    if isinstance(node, Neg):
        return -_eval(node.operand, x, y)
    if isinstance(node, BinOp):
        a = _eval(node.left, x, y)
        b = _eval(node.right, x, y)
        if node.op == "add":
            return a + b
        if node.op == "sub":
            return a - b
        if node.op == "mul":
            return a * b
        if node.op == "div":
            if np.any(np.asarray(b) == 0.0):
                raise EvalError("division by zero", node)
            return a / b
        # pow
        a_arr = np.asarray(a, dtype=float)
        if np.any(a_arr < 0.0) and not _is_integer_exponent(b):
            raise EvalError("negative base with non-integer exponent", node)
        if np.any((a_arr == 0.0) & (np.asarray(b, dtype=float) < 0.0)):
            raise EvalError("zero base with negative exponent", node)
        return np.power(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else float(a) ** float(b)
    if isinstance(node, Call):
        args = [_eval(arg, x, y) for arg in node.args]
        if node.name == "sqrt":
            if np.any(np.asarray(args[0]) < 0.0):
                raise EvalError("sqrt of negative value", node)
            return np.sqrt(args[0])
        if node.name == "exp":
            return np.exp(args[0])
        if node.name == "ln":
            if np.any(np.asarray(args[0]) <= 0.0):
                raise EvalError("ln of non-positive value", node)
            return np.log(args[0])
        if node.name == "abs":
            return np.abs(args[0])
        if node.name == "min":
            return np.minimum(args[0], args[1])
        return np.maximum(args[0], args[1])
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(node: Expr, x: float = 0.0, y: float = 0.0) -> float:
    """Evaluate at a point. Pure: identical inputs give bit-identical outputs."""
    return float(_eval(node, x, y))


def evaluate_array(node: Expr, x, y):
    """Evaluate on numpy arrays (broadcasting); same domain errors as evaluate()."""
    out = _eval(node, np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return np.broadcast_to(np.asarray(out, dtype=float), np.broadcast_shapes(np.shape(x), np.shape(y))).copy()


def as_function(node: Expr):
    """Compile to a two-argument callable f(x, y) accepting floats or arrays."""

    def f(x, y):
        return _eval(node, x, y)

    return f


_PRECEDENCE = {"add": 1, "sub": 1, "mul": 2, "div": 2, "pow": 4}


def _render(node: Expr, parent_prec: int) -> str:
    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = _render(node.operand, 3)
        s = f"-{inner}"
        return f"({s})" if parent_prec > 3 else s
    if isinstance(node, BinOp):
        prec = _PRECEDENCE[node.op]
        if node.op == "pow":
            # right-associative; the left side must be an atom
            left = _render(node.left, prec + 1)
            right = _render(node.right, prec)
            s = f"{left}^{right}"
        else:
            sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[node.op]
            left = _render(node.left, prec)
            # left-associative: the right operand needs the next tighter level
            right = _render(node.right, prec + 1)
            s = f"{left}{sym}{right}"
        return f"({s})" if parent_prec > prec else s
    if isinstance(node, Call):
        return f"{node.name}({','.join(_render(a, 0) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


def to_string(node: Expr) -> str:
    """Pretty-print; parse(to_string(e)) is structurally identical to e."""
    return _render(node, 0)
