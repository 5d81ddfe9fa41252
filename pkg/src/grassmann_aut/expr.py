"""Text syntax for Grassmann algebra elements and subspace files.

Grammar (wedge binds tighter than ``+``/``-``; both ``^`` and ``*`` denote the
wedge product, which absorbs scalars)::

    expr    := term (('+' | '-') term)*
    term    := factor (('^' | '*') factor)*
    factor  := literal | 'e' digits | 'e{' digits (',' digits)* '}'
             | '(' expr ')' | '[' expr ',' expr ']' | '-' factor
    literal := integer ('/' integer)?

A subspace file is a header line ``n=<int> field=Q|GF(<p>)`` followed by one
basis vector per line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .fieldlin import Q, Field, FieldError, Residue, Subspace, parse_field, rref
from .grassmann import Multivector, commutator, indices_of, wedge


class ExpressionError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")
        self.position = position


class ExpressionSyntaxError(ExpressionError):
    pass


class GeneratorIndexError(ExpressionError, IndexError):
    """``e<k>`` with ``k`` outside ``1..n``."""


class LiteralDivisionByZero(ExpressionError, ZeroDivisionError):
    pass


# -- syntax tree ---------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    num: int
    den: int
    pos: int


@dataclass(frozen=True)
class Gen:
    indices: tuple
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>e(?:\d+|\{\s*\d+(?:\s*,\s*\d+)*\s*\}))|(?P<num>\d+)|(?P<op>[-+*^/()\[\],]))"
)


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            found = "end of input" if kind == "end" else repr(val)
            raise ExpressionSyntaxError(f"expected {value!r}, found {found}", pos)

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected {val!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("^", "*") and self.peek()[0] == "op":
            self.take()
            node = BinOp("^", node, self.factor())
        return node

    def factor(self):
        kind, val, pos = self.take()
        if kind == "num":
            den = 1
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise ExpressionSyntaxError("expected an integer denominator", p2)
                den = int(v2)
            return Num(int(val), den, pos)
        if kind == "gen":
            body = val[1:].strip("{}")
            return Gen(tuple(int(x) for x in body.split(",")), pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "op" and val == "[":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right)
        if kind == "op" and val == "-":
            return Neg(self.factor())
        found = "end of input" if kind == "end" else repr(val)
        raise ExpressionSyntaxError(f"unexpected {found}", pos)


def parse(text: str):
    """Syntax tree of ``text``."""
    return _Parser(text).parse()


def evaluate(node, n: int, field: Field = Q) -> Multivector:
    if isinstance(node, Num):
        if node.den == 0:
            raise LiteralDivisionByZero("zero denominator", node.pos)
        try:
            c = field.ratio(node.num, node.den)
        except ZeroDivisionError:
            raise LiteralDivisionByZero(f"denominator {node.den} vanishes in {field}", node.pos) from None
        return Multivector.scalar(n, c, field)
    if isinstance(node, Gen):
        out = Multivector.scalar(n, 1, field)
        for k in node.indices:
            if not 1 <= k <= n:
                raise GeneratorIndexError(f"generator e{k} outside e1..e{n}", node.pos)
            out = wedge(out, Multivector.gen(n, k, field))
        return out
    if isinstance(node, Neg):
        return -evaluate(node.operand, n, field)
    if isinstance(node, Bracket):
        return commutator(evaluate(node.left, n, field), evaluate(node.right, n, field))
    left = evaluate(node.left, n, field)
    right = evaluate(node.right, n, field)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return wedge(left, right)


def parse_expression(text: str, n: int, field: Field = Q) -> Multivector:
    return evaluate(parse(text), n, field)


# -- canonical printing ------------------------------------------------------------

def format_scalar(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, Residue):
        return str(c.value)
    return str(c)


def format_monomial(mask: int) -> str:
    return "e{" + ",".join(map(str, indices_of(mask))) + "}"


def format_multivector(a: Multivector) -> str:
    """Terms by grade then mask, e.g. ``1 + 2*e{1} - 1/2*e{1,3}``."""
    parts = []
    for mask, c in a.items():
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        if mask == 0:
            body = format_scalar(mag)
        elif mag == 1:
            body = format_monomial(mask)
        else:
            body = f"{format_scalar(mag)}*{format_monomial(mask)}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"


# -- subspace files ------------------------------------------------------------------

_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s+field\s*=\s*(Q|GF\(\d+\))\s*$")


class SubspaceFileError(ValueError):
    pass


def read_subspace(text: str) -> Subspace:
    lines = text.splitlines()
    if not lines:
        raise SubspaceFileError("empty subspace file: missing header 'n=<int> field=Q|GF(<p>)'")
    m = _HEADER.match(lines[0])
    if not m:
        raise SubspaceFileError(f"bad header {lines[0]!r}: expected 'n=<int> field=Q|GF(<p>)'")
    n = int(m.group(1))
    try:
        field = parse_field(m.group(2))
    except FieldError as exc:
        raise SubspaceFileError(str(exc)) from None
    vectors = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            vectors.append(parse_expression(line, n, field).coords())
        except ExpressionError as exc:
            raise SubspaceFileError(f"line {lineno}: {exc}") from None
    return rref(vectors, n, field)


def load_subspace(path) -> Subspace:
    return read_subspace(Path(path).read_text())


def write_subspace(B: Subspace) -> str:
    from .grassmann import elements_of

    lines = [f"n={B.n} field={B.field.name}"]
    lines += [format_multivector(v) for v in elements_of(B)]
    return "\n".join(lines) + "\n"
