"""Expression trees for smooth maps R^m -> R.

Nodes: real literals, variables x1..xm, the four arithmetic operators,
unary minus, integer powers and the analytic primitives sin, cos, exp,
log, sqrt.  The module stays stdlib-only; evaluation over Weil algebra
scalars lives in prolongation.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import Mapping

__all__ = [
    "Expression",
    "Const",
    "Var",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Neg",
    "Pow",
    "Call",
    "ANALYTIC_FUNCTIONS",
    "as_expression",
    "variables",
    "eval_real",
    "differentiate",
    "substitute",
    "to_text",
]

ANALYTIC_FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")


class Expression:
    __slots__ = ()

    def __add__(self, other):
        return _add(self, as_expression(other))

    def __radd__(self, other):
        return _add(as_expression(other), self)

    def __sub__(self, other):
        return _sub(self, as_expression(other))

    def __rsub__(self, other):
        return _sub(as_expression(other), self)

    def __mul__(self, other):
        return _mul(self, as_expression(other))

    def __rmul__(self, other):
        return _mul(as_expression(other), self)

    def __truediv__(self, other):
        return _div(self, as_expression(other))

    def __rtruediv__(self, other):
        return _div(as_expression(other), self)

    def __neg__(self):
        return _neg(self)

    def __pow__(self, exponent):
        return _pow(self, exponent)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Const(Expression):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    def __repr__(self):
        return f"Const({self.value!r})"


@dataclass(frozen=True)
class Var(Expression):
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices are 1-based")


@dataclass(frozen=True)
class Add(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Sub(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Mul(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Div(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Neg(Expression):
    operand: Expression


@dataclass(frozen=True)
class Pow(Expression):
    base: Expression
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, numbers.Integral) or isinstance(self.exponent, bool):
            raise TypeError("power exponent must be an integer")
        object.__setattr__(self, "exponent", int(self.exponent))


@dataclass(frozen=True)
class Call(Expression):
    func: str
    arg: Expression

    def __post_init__(self):
        if self.func not in ANALYTIC_FUNCTIONS:
            raise ValueError(f"unknown function {self.func!r}")


def as_expression(value) -> Expression:
    if isinstance(value, Expression):
        return value
    if isinstance(value, numbers.Real):
        return Const(float(value))
    raise TypeError(f"cannot treat {value!r} as an expression")


def variables(expr: Expression) -> set[int]:
    """Set of 1-based variable indices occurring in the expression."""
    out: set[int] = set()
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, Var):
            out.add(e.index)
        elif isinstance(e, (Add, Sub, Mul, Div)):
            stack.extend((e.left, e.right))
        elif isinstance(e, Neg):
            stack.append(e.operand)
        elif isinstance(e, Pow):
            stack.append(e.base)
        elif isinstance(e, Call):
            stack.append(e.arg)
    return out


def eval_real(expr: Expression, point) -> float:
    """Plain double-precision evaluation; point[i-1] is the value of xi."""
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        if expr.index > len(point):
            raise ValueError(f"expression uses x{expr.index} but only {len(point)} coordinates given")
        return float(point[expr.index - 1])
    if isinstance(expr, Add):
        return eval_real(expr.left, point) + eval_real(expr.right, point)
    if isinstance(expr, Sub):
        return eval_real(expr.left, point) - eval_real(expr.right, point)
    if isinstance(expr, Mul):
        return eval_real(expr.left, point) * eval_real(expr.right, point)
    if isinstance(expr, Div):
        return eval_real(expr.left, point) / eval_real(expr.right, point)
    if isinstance(expr, Neg):
        return -eval_real(expr.operand, point)
    if isinstance(expr, Pow):
        return eval_real(expr.base, point) ** expr.exponent
    if isinstance(expr, Call):
        return getattr(math, expr.func)(eval_real(expr.arg, point))
    raise TypeError(f"not an expression node: {expr!r}")


# -- smart constructors: constant folding only, no other rewriting -------------


def _is_const(e: Expression, value=None) -> bool:
    return isinstance(e, Const) and (value is None or e.value == value)


def _add(a: Expression, b: Expression) -> Expression:
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Add(a, b)


def _sub(a: Expression, b: Expression) -> Expression:
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    return Sub(a, b)


def _mul(a: Expression, b: Expression) -> Expression:
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Mul(a, b)


def _div(a: Expression, b: Expression) -> Expression:
    if _is_const(b) and b.value != 0.0:
        if _is_const(a):
            return Const(a.value / b.value)
        if b.value == 1.0:
            return a
    if _is_const(a, 0.0):
        return Const(0.0)
    return Div(a, b)


def _neg(a: Expression) -> Expression:
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def _pow(base: Expression, exponent: int) -> Expression:
    if not isinstance(exponent, numbers.Integral) or isinstance(exponent, bool):
        raise TypeError("power exponent must be an integer")
    exponent = int(exponent)
    if exponent == 0:
        return Const(1.0)
    if exponent == 1:
        return base
    if _is_const(base):
        return Const(base.value**exponent)
    return Pow(base, exponent)


def differentiate(expr: Expression, index: int) -> Expression:
    """Symbolic partial derivative with respect to x_index, lightly folded."""
    if isinstance(expr, Const):
        return Const(0.0)
    if isinstance(expr, Var):
        return Const(1.0) if expr.index == index else Const(0.0)
    if isinstance(expr, Add):
        return _add(differentiate(expr.left, index), differentiate(expr.right, index))
    if isinstance(expr, Sub):
        return _sub(differentiate(expr.left, index), differentiate(expr.right, index))
    if isinstance(expr, Mul):
        return _add(
            _mul(differentiate(expr.left, index), expr.right),
            _mul(expr.left, differentiate(expr.right, index)),
        )
    if isinstance(expr, Div):
        num = _sub(
            _mul(differentiate(expr.left, index), expr.right),
            _mul(expr.left, differentiate(expr.right, index)),
        )
        return _div(num, _pow(expr.right, 2))
    if isinstance(expr, Neg):
        return _neg(differentiate(expr.operand, index))
    if isinstance(expr, Pow):
        inner = differentiate(expr.base, index)
        return _mul(
            _mul(Const(float(expr.exponent)), _pow(expr.base, expr.exponent - 1)),
            inner,
        )
    if isinstance(expr, Call):
        inner = differentiate(expr.arg, index)
        a = expr.arg
        if expr.func == "sin":
            outer = Call("cos", a)
        elif expr.func == "cos":
            outer = _neg(Call("sin", a))
        elif expr.func == "exp":
            outer = expr
        elif expr.func == "log":
            return _mul(_div(Const(1.0), a), inner)
        elif expr.func == "sqrt":
            return _div(inner, _mul(Const(2.0), expr))
        return _mul(outer, inner)
    raise TypeError(f"not an expression node: {expr!r}")


def substitute(expr: Expression, mapping: Mapping[int, Expression]) -> Expression:
    """Replace variables by expressions (composition of maps)."""
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, Var):
        return mapping.get(expr.index, expr)
    if isinstance(expr, Add):
        return _add(substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, Sub):
        return _sub(substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, Mul):
        return _mul(substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, Div):
        return _div(substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, Neg):
        return _neg(substitute(expr.operand, mapping))
    if isinstance(expr, Pow):
        return _pow(substitute(expr.base, mapping), expr.exponent)
    if isinstance(expr, Call):
        return Call(expr.func, substitute(expr.arg, mapping))
    raise TypeError(f"not an expression node: {expr!r}")


# -- printing -------------------------------------------------------------------

_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


def _precedence(expr: Expression) -> int:
    if isinstance(expr, (Add, Sub)):
        return _ADD
    if isinstance(expr, (Mul, Div)):
        return _MUL
    if isinstance(expr, Neg):
        return _NEG
    if isinstance(expr, Const) and expr.value < 0:
        return _NEG
    if isinstance(expr, Pow):
        return _POW
    return _ATOM


def _wrap(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def to_text(expr: Expression) -> str:
    """Render with minimal parentheses; parsing the result recovers the tree."""
    p = _precedence(expr)
    if isinstance(expr, Const):
        return repr(expr.value)
    if isinstance(expr, Var):
        return f"x{expr.index}"
    if isinstance(expr, (Add, Sub)):
        op = "+" if isinstance(expr, Add) else "-"
        left = _wrap(to_text(expr.left), _precedence(expr.left) < p)
        right = _wrap(to_text(expr.right), _precedence(expr.right) <= p)
        return f"{left} {op} {right}"
    if isinstance(expr, (Mul, Div)):
        op = "*" if isinstance(expr, Mul) else "/"
        left = _wrap(to_text(expr.left), _precedence(expr.left) < p)
        right = _wrap(to_text(expr.right), _precedence(expr.right) <= p)
        return f"{left}{op}{right}"
    if isinstance(expr, Neg):
        return "-" + _wrap(to_text(expr.operand), _precedence(expr.operand) < p)
    if isinstance(expr, Pow):
        base = _wrap(to_text(expr.base), _precedence(expr.base) <= _POW)
        return f"{base}^{expr.exponent}"
    if isinstance(expr, Call):
        return f"{expr.func}({to_text(expr.arg)})"
    raise TypeError(f"not an expression node: {expr!r}")
