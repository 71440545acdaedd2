"""Plain-text expression language for ring elements.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := primary ('^' INT)*
    primary := INT | GEN | '(' expr ')'
    GEN     := 'w' ["'"] '(' INT ',' INT ')'

so '^' binds tighter than unary minus, which binds tighter than '*'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ExprSyntaxError
from .ring import Element, Side, SpaceSpec, make_generator, multiply


@dataclass(frozen=True)
class IntLiteral:
    value: int


@dataclass(frozen=True)
class Gen:
    i: int
    j: int
    primed: bool = False


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class Add:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Sub:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Mul:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int


ExprAst = Union[IntLiteral, Gen, Neg, Add, Sub, Mul, Pow]

MAX_DEPTH = 100


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.depth = 0

    def nest(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.error(f"at most {MAX_DEPTH} levels of nesting")

    def error(self, expected: str, pos: int | None = None):
        pos = self.pos if pos is None else pos
        found = repr(self.text[pos]) if pos < len(self.text) else "end of input"
        offset = len(self.text[:pos].encode("utf-8"))
        raise ExprSyntaxError(f"expected {expected}, found {found}", offset, self.text)

    def skip(self):
        text = self.text
        while self.pos < len(text) and text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(repr(ch))
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            self.error("integer")
        return int(self.text[start:self.pos])

    def parse(self) -> ExprAst:
        node = self.expr()
        if self.peek():
            self.error("'+', '-', '*', '^' or end of input")
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> ExprAst:
        node = self.unary()
        while self.peek() == "*":
            self.pos += 1
            node = Mul(node, self.unary())
        return node

    def unary(self) -> ExprAst:
        if self.peek() == "-":
            self.pos += 1
            self.nest()
            node = Neg(self.unary())
            self.depth -= 1
            return node
        return self.power()

    def power(self) -> ExprAst:
        node = self.primary()
        while self.peek() == "^":
            self.pos += 1
            node = Pow(node, self.integer())
        return node

    def primary(self) -> ExprAst:
        ch = self.peek()
        if ch and ch in "0123456789":
            return IntLiteral(self.integer())
        if ch == "(":
            self.pos += 1
            self.nest()
            node = self.expr()
            self.expect(")")
            self.depth -= 1
            return node
        if ch == "w":
            self.pos += 1
            primed = False
            if self.peek() == "'":
                primed = True
                self.pos += 1
            self.expect("(")
            i = self.integer()
            self.expect(",")
            j = self.integer()
            self.expect(")")
            return Gen(i, j, primed)
        self.error("integer, generator w(i,j) / w'(i,j) or '('")


def parse(text: str) -> ExprAst:
    """Parse ``text``; raises ExprSyntaxError with a byte offset on failure."""
    parser = _Parser(text)
    if not parser.peek():
        parser.error("expression")
    return parser.parse()


def _power(base: Element, exponent: int) -> Element:
    result = Element.one(base.spec)
    # square-and-multiply; nilpotent bases hit zero after a few rounds
    while exponent and result:
        if exponent & 1:
            result = multiply(result, base)
        exponent >>= 1
        if exponent:
            base = multiply(base, base)
    return result


def evaluate(ast: ExprAst, spec: SpaceSpec) -> Element:
    """Evaluate bottom-up into a normalized Element of ``spec``'s ring."""
    # explicit stack: long left-nested sums must not hit the recursion limit
    stack = [(ast, False)]
    values: list[Element] = []
    while stack:
        node, ready = stack.pop()
        if isinstance(node, IntLiteral):
            values.append(Element.scalar(spec, node.value))
        elif isinstance(node, Gen):
            values.append(make_generator(spec, node.i, node.j, Side.PRIMED if node.primed else Side.UNPRIMED))
        elif not ready:
            stack.append((node, True))
            if isinstance(node, (Add, Sub, Mul)):
                stack.append((node.right, False))
                stack.append((node.left, False))
            elif isinstance(node, Neg):
                stack.append((node.operand, False))
            elif isinstance(node, Pow):
                stack.append((node.base, False))
            else:
                raise TypeError(f"not an expression node: {node!r}")
        elif isinstance(node, Neg):
            values.append(-values.pop())
        elif isinstance(node, Pow):
            values.append(_power(values.pop(), node.exponent))
        else:
            right = values.pop()
            left = values.pop()
            if isinstance(node, Add):
                values.append(left + right)
            elif isinstance(node, Sub):
                values.append(left - right)
            else:
                values.append(multiply(left, right))
    return values.pop()


def evaluate_text(text: str, spec: SpaceSpec) -> Element:
    return evaluate(parse(text), spec)
