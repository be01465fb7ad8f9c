"""Real-valued expressions in ``x`` and ``y``.

Grammar, lowest to highest precedence::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | power
    power  := atom ("^" factor)?
    atom   := number | "x" | "y" | ident "(" expr ("," expr)* ")" | "(" expr ")"

so ``^`` is right-associative and ``-2^2 == -4`` while ``2^-1 == 0.5``.
Evaluation is vectorised over numpy arrays in binary64; every node checks
its own domain so a quadrature rule never silently integrates a NaN.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ArityError, DomainError, NumericalFailure, ParseError, UnknownIdentifierError, UsageError

__all__ = [
    "Num", "Var", "Neg", "BinOp", "Call", "Ast",
    "parse", "to_source", "ScalarFn", "Slice", "compile_expr", "evaluate", "slice_fn",
]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "y"


@dataclass(frozen=True)
class Neg:
    operand: "Ast"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Ast", ...]


Ast = Union[Num, Var, Neg, BinOp, Call]

VARIABLES = ("x", "y")
# name -> (min arity, max arity); None means unbounded
FUNCTIONS = {
    "exp": (1, 1),
    "log": (1, 1),
    "sqrt": (1, 1),
    "abs": (1, 1),
    "pow": (2, 2),
    "min": (2, None),
    "max": (2, None),
}


# --------------------------------------------------------------------------
# Lexer / parser
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    offset: int  # byte offset into the UTF-8 source


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    byte_pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", byte_pos)
        text = m.group()
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, text, byte_pos))
        pos = m.end()
        byte_pos += len(text.encode("utf-8"))
    tokens.append(_Token("eof", "", byte_pos))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def _expect(self, text: str) -> None:
        if not self._at(text):
            self._unexpected(f"expected {text!r}")
        self._advance()

    def _unexpected(self, what: str = "unexpected token"):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{what}, found {found}", tok.offset)

    def parse(self) -> Ast:
        node = self.expr()
        if self.tok.kind != "eof":
            self._unexpected()
        return node

    def expr(self) -> Ast:
        node = self.term()
        while self._at("+") or self._at("-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Ast:
        node = self.factor()
        while self._at("*") or self._at("/"):
            op = self._advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Ast:
        if self._at("-"):
            self._advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Ast:
        base = self.atom()
        if self._at("^"):
            self._advance()
            return BinOp("^", base, self.factor())
        return base

    def atom(self) -> Ast:
        tok = self.tok
        if tok.kind == "num":
            self._advance()
            value = float(tok.text)
            if not np.isfinite(value):
                raise ParseError(f"numeric literal {tok.text!r} overflows binary64", tok.offset)
            return Num(value)
        if tok.kind == "ident":
            self._advance()
            if tok.text in VARIABLES:
                return Var(tok.text)
            if tok.text not in FUNCTIONS:
                raise UnknownIdentifierError(f"unknown identifier {tok.text!r}", tok.offset)
            self._expect("(")
            args = [self.expr()]
            while self._at(","):
                self._advance()
                args.append(self.expr())
            self._expect(")")
            lo, hi = FUNCTIONS[tok.text]
            if len(args) < lo or (hi is not None and len(args) > hi):
                want = str(lo) if lo == hi else f"at least {lo}"
                raise ArityError(f"{tok.text}() takes {want} argument(s), got {len(args)}", tok.offset)
            return Call(tok.text, tuple(args))
        if self._at("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        self._unexpected("expected a number, variable, function call or '('")


def parse(src: str) -> Ast:
    """Parse ``src`` into an :data:`Ast`.

    Raises :class:`ParseError` (or one of its subclasses for unknown
    identifiers and wrong argument counts) carrying the byte offset.
    """
    return _Parser(src).parse()


# --------------------------------------------------------------------------
# Printer
# --------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4


def _prec(node: Ast) -> int:
    if isinstance(node, BinOp):
        return {"+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL}.get(node.op, _PREC_UNARY)
    if isinstance(node, Neg):
        return _PREC_UNARY
    if isinstance(node, Num) and (node.value < 0 or np.signbit(node.value)):
        return _PREC_UNARY
    return _PREC_ATOM


def _wrap(node: Ast, min_prec: int) -> str:
    text = to_source(node)
    return f"({text})" if _prec(node) < min_prec else text


def to_source(node: Ast) -> str:
    """Render ``node`` with the minimum parentheses needed to re-parse it."""
    match node:
        case Num(value):
            return repr(float(value))
        case Var(name):
            return name
        case Neg(operand):
            return "-" + _wrap(operand, _PREC_UNARY)
        case BinOp("^", left, right):
            return _wrap(left, _PREC_ATOM) + "^" + _wrap(right, _PREC_UNARY)
        case BinOp(op, left, right):
            p = _prec(node)
            return f"{_wrap(left, p)} {op} {_wrap(right, p + 1)}"
        case Call(func, args):
            return f"{func}({', '.join(to_source(a) for a in args)})"
    raise TypeError(f"not an Ast node: {node!r}")


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------

def _finite(value: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(value)):
        raise NumericalFailure(f"non-finite result in {what}")
    return value


def _power(base: np.ndarray, expo: np.ndarray) -> np.ndarray:
    base, expo = np.broadcast_arrays(base, expo)
    integral = expo == np.floor(expo)
    if np.any((base < 0) & ~integral):
        raise DomainError("non-integer power of a negative base")
    if np.any((base == 0) & (expo < 0)):
        raise DomainError("division by zero in negative power of 0")
    return _finite(np.power(base, expo), "^")


def _call(func: str, args: list[np.ndarray]) -> np.ndarray:
    if func == "exp":
        return _finite(np.exp(args[0]), "exp()")
    if func == "log":
        if np.any(args[0] <= 0):
            raise DomainError("log() of a non-positive argument")
        return np.log(args[0])
    if func == "sqrt":
        if np.any(args[0] < 0):
            raise DomainError("sqrt() of a negative argument")
        return np.sqrt(args[0])
    if func == "abs":
        return np.abs(args[0])
    if func == "pow":
        return _power(args[0], args[1])
    if func == "min":
        out = args[0]
        for a in args[1:]:
            out = np.minimum(out, a)
        return out
    if func == "max":
        out = args[0]
        for a in args[1:]:
            out = np.maximum(out, a)
        return out
    raise UnknownIdentifierError(f"unknown function {func!r}", 0)


def _eval(node: Ast, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    match node:
        case Num(value):
            return np.float64(value)
        case Var("x"):
            return x
        case Var("y"):
            return y
        case Neg(operand):
            return -_eval(operand, x, y)
        case BinOp(op, left, right):
            lhs = _eval(left, x, y)
            rhs = _eval(right, x, y)
            if op == "+":
                return _finite(lhs + rhs, "+")
            if op == "-":
                return _finite(lhs - rhs, "-")
            if op == "*":
                return _finite(lhs * rhs, "*")
            if op == "/":
                if np.any(rhs == 0):
                    raise DomainError("division by zero")
                return _finite(lhs / rhs, "/")
            return _power(lhs, rhs)
        case Call(func, args):
            return _call(func, [_eval(a, x, y) for a in args])
    raise TypeError(f"not an Ast node: {node!r}")


def _variables(node: Ast) -> set[str]:
    match node:
        case Var(name):
            return {name}
        case Neg(operand):
            return _variables(operand)
        case BinOp(_, left, right):
            return _variables(left) | _variables(right)
        case Call(_, args):
            return set().union(*(_variables(a) for a in args))
    return set()


@dataclass(frozen=True)
class ScalarFn:
    """An immutable, vectorised function of ``(x, y)``.

    Calling with scalars returns a ``float``; calling with arrays returns an
    ndarray of the broadcast shape.
    """

    ast: Ast
    source: str = ""

    def __post_init__(self):
        if not self.source:
            object.__setattr__(self, "source", to_source(self.ast))

    def __call__(self, x, y):
        xa = np.asarray(x, dtype=np.float64)
        ya = np.asarray(y, dtype=np.float64)
        if not (np.all(np.isfinite(xa)) and np.all(np.isfinite(ya))):
            raise UsageError("evaluation point must be finite")
        with np.errstate(all="ignore"):
            out = _eval(self.ast, xa, ya)
        out = np.broadcast_to(out, np.broadcast_shapes(xa.shape, ya.shape))
        if out.ndim == 0:
            return float(out)
        return np.array(out, dtype=np.float64)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(_variables(self.ast))

    def slice(self, axis: str, value: float) -> "Slice":
        return slice_fn(self, axis, value)

    def __str__(self) -> str:
        return self.source


@dataclass(frozen=True)
class Slice:
    """A partial mapping of a :class:`ScalarFn` with one coordinate frozen.

    ``axis="fix-y"`` gives ``t -> fn(t, value)``; ``axis="fix-x"`` gives
    ``t -> fn(value, t)``.
    """

    fn: ScalarFn
    axis: str
    value: float

    def __call__(self, t):
        if self.axis == "fix-y":
            return self.fn(t, self.value)
        return self.fn(self.value, t)

    def __str__(self) -> str:
        var = "y" if self.axis == "fix-y" else "x"
        return f"({self.fn.source})[{var}={self.value!r}]"


def compile_expr(src: str) -> ScalarFn:
    """Parse ``src`` and wrap it as a :class:`ScalarFn`."""
    return ScalarFn(parse(src), src)


def evaluate(f: ScalarFn | str, x: float, y: float) -> float:
    if isinstance(f, str):
        f = compile_expr(f)
    return float(f(x, y))


def slice_fn(f: ScalarFn, axis: str, value: float) -> Slice:
    if axis not in ("fix-x", "fix-y"):
        raise UsageError(f"axis must be 'fix-x' or 'fix-y', got {axis!r}")
    value = float(value)
    if not np.isfinite(value):
        raise UsageError("slice value must be finite")
    return Slice(f, axis, value)
