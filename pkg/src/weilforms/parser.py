"""Recursive-descent parser for the expression grammar.

Grammar (usual precedence, ^ binds tightest and takes a literal integer
exponent, unary minus sits between * and ^):

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := NUMBER | VAR | FUNC "(" expr ")" | "(" expr ")"

Variables are x1, x2, ...; functions are sin, cos, exp, log, sqrt.
Errors carry line, column and the set of expected tokens.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import (
    ANALYTIC_FUNCTIONS,
    Call,
    Const,
    Div,
    Expression,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    Add,
)

__all__ = ["ParseError", "parse_expression"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        text = f"syntax error at line {line}, column {column}: {message}"
        if expected:
            text += f" (expected: {', '.join(expected)})"
        super().__init__(text)


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER, IDENT, OP, LPAREN, RPAREN, COMMA, END
    text: str
    line: int
    column: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == ".":
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            tokens.append(_Token("NUMBER", text, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^":
            tokens.append(_Token("OP", ch, line, start_col))
        elif ch == "(":
            tokens.append(_Token("LPAREN", ch, line, start_col))
        elif ch == ")":
            tokens.append(_Token("RPAREN", ch, line, start_col))
        elif ch == ",":
            tokens.append(_Token("COMMA", ch, line, start_col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, start_col)
        i += 1
        col += 1
    tokens.append(_Token("END", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        tok = self.current
        return ParseError(message, tok.line, tok.column, expected)

    def describe(self) -> str:
        tok = self.current
        return "end of input" if tok.kind == "END" else repr(tok.text)

    def expect(self, kind: str, expected_name: str) -> _Token:
        if self.current.kind != kind:
            raise self.error(f"unexpected {self.describe()}", (expected_name,))
        return self.advance()

    def parse(self) -> Expression:
        e = self.expr()
        if self.current.kind != "END":
            raise self.error(
                f"unexpected {self.describe()} after a complete expression",
                ("+", "-", "*", "/", "end of input"),
            )
        return e

    def expr(self) -> Expression:
        e = self.term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self.advance().text
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expression:
        e = self.unary()
        while self.current.kind == "OP" and self.current.text in "*/":
            op = self.advance().text
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self) -> Expression:
        if self.current.kind == "OP" and self.current.text == "-":
            self.advance()
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Neg(operand)
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.current.kind == "OP" and self.current.text == "^":
            self.advance()
            negative = False
            if self.current.kind == "OP" and self.current.text in "+-":
                negative = self.advance().text == "-"
            tok = self.expect("NUMBER", "integer exponent")
            if any(c in tok.text for c in ".eE"):
                raise ParseError(
                    f"power exponent must be an integer literal, got {tok.text!r}",
                    tok.line,
                    tok.column,
                    ("integer exponent",),
                )
            exponent = int(tok.text)
            return Pow(base, -exponent if negative else exponent)
        return base

    def atom(self) -> Expression:
        tok = self.current
        if tok.kind == "NUMBER":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "IDENT":
            self.advance()
            name = tok.text
            if name in ANALYTIC_FUNCTIONS:
                self.expect("LPAREN", "(")
                arg = self.expr()
                if self.current.kind == "COMMA":
                    raise self.error(
                        f"{name} takes exactly one argument", (")",)
                    )
                self.expect("RPAREN", ")")
                return Call(name, arg)
            if name.startswith("x") and name[1:].isdigit() and int(name[1:]) >= 1:
                return Var(int(name[1:]))
            raise ParseError(
                f"unknown identifier {name!r}",
                tok.line,
                tok.column,
                ("x<index>",) + ANALYTIC_FUNCTIONS,
            )
        if tok.kind == "LPAREN":
            self.advance()
            e = self.expr()
            self.expect("RPAREN", ")")
            return e
        raise self.error(
            f"unexpected {self.describe()}",
            ("number", "variable", "function call", "("),
        )


def parse_expression(text: str) -> Expression:
    return _Parser(_tokenize(text)).parse()
