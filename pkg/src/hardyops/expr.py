"""Textual mini-language for analytic symbols.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom
    atom   := number | 'z' | '(' expr ')' | 'exp' '(' expr ')'
            | 'compose' '(' expr ',' expr ')'
            | 'mobius' '(' signed ',' signed ',' signed ',' signed ')'
    number := real ['i'] | 'i' | '(' ['-'] real ('+' | '-') real 'i' ')'

``compose(f, g)`` is f o g. Parenthesized ``(x+yi)`` with literal parts is a
single complex literal. Inside ``mobius`` the four numbers may carry a sign.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ExprSyntaxError
from .symbols import maps

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/(),]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'name', 'op', 'end'
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


# --------------------------------------------------------------------------
# syntax tree
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Exp:
    arg: "Node"


@dataclass(frozen=True)
class Compose:
    outer: "Node"
    inner: "Node"


@dataclass(frozen=True)
class MobiusLit:
    a: complex
    b: complex
    c: complex
    d: complex


Node = Union[Num, Var, Neg, BinOp, Exp, Compose, MobiusLit]


@dataclass(frozen=True)
class SymbolExpr:
    source: str
    ast: Node

    def __str__(self):
        return to_text(self.ast)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        raise ExprSyntaxError(message, self.text, tok.pos)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.accept("-"):
            return Neg(self.factor())
        return self.atom()

    def atom(self):
        tok = self.tok
        if tok.kind == "num" or (tok.kind == "name" and tok.text == "i"):
            return Num(self.real_or_imag())
        if tok.kind == "name":
            self.i += 1
            if tok.text == "z":
                return Var()
            if tok.text == "exp":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Exp(arg)
            if tok.text == "compose":
                self.expect("(")
                outer = self.expr()
                self.expect(",")
                inner = self.expr()
                self.expect(")")
                return Compose(outer, inner)
            if tok.text == "mobius":
                return self.mobius(tok)
            self.fail(f"unknown name {tok.text!r}", tok)
        if tok.kind == "op" and tok.text == "(":
            lit = self.try_complex_literal()
            if lit is not None:
                return Num(lit)
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        self.fail(f"unexpected {found!r}")

    def real_or_imag(self):
        tok = self.tok
        if tok.kind == "name" and tok.text == "i":
            self.i += 1
            return 1j
        if tok.kind != "num":
            self.fail("expected a number")
        value = float(tok.text)
        self.i += 1
        nxt = self.tok
        if nxt.kind == "name" and nxt.text == "i":
            self.i += 1
            return complex(0.0, value)
        return complex(value, 0.0)

    def try_complex_literal(self):
        """Match '(' ['-'] real ('+'|'-') real 'i' ')'; consumes nothing on failure."""
        toks = self.tokens
        last = len(toks) - 1

        def at(j):
            return toks[min(j, last)]

        def is_op(t, chars):
            return t.kind == "op" and t.text in chars

        def is_i(t):
            return t.kind == "name" and t.text == "i"

        j = self.i
        if not is_op(at(j), "("):
            return None
        j += 1
        sign = 1.0
        if is_op(at(j), "-"):
            sign = -1.0
            j += 1
        re_tok = at(j)
        if re_tok.kind != "num" or is_i(at(j + 1)):
            return None
        j += 1
        if not is_op(at(j), "+-"):
            return None
        im_sign = 1.0 if at(j).text == "+" else -1.0
        j += 1
        im_tok = at(j)
        if im_tok.kind != "num" or not is_i(at(j + 1)):
            return None
        j += 2
        if not is_op(at(j), ")"):
            return None
        self.i = j + 1
        return complex(sign * float(re_tok.text), im_sign * float(im_tok.text))

    def signed_number(self):
        if self.tok.kind == "op" and self.tok.text == "(":
            lit = self.try_complex_literal()
            if lit is None:
                self.fail("expected a number")
            return lit
        sign = -1.0 if self.accept("-") else 1.0
        if not (self.tok.kind == "num" or self.tok.text == "i"):
            self.fail("expected a number")
        return sign * self.real_or_imag()

    def mobius(self, tok):
        self.expect("(")
        vals = [self.signed_number()]
        for _ in range(3):
            self.expect(",")
            vals.append(self.signed_number())
        self.expect(")")
        a, b, c, d = vals
        if a * d - b * c == 0:
            self.fail("degenerate mobius coefficients (ad - bc = 0)", tok)
        return MobiusLit(a, b, c, d)


def parse_expr(text):
    """Parse text into a :class:`SymbolExpr`; raises ExprSyntaxError."""
    return SymbolExpr(text, _Parser(text).parse())


# --------------------------------------------------------------------------
# printer
# --------------------------------------------------------------------------


def _fmt_real(x):
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _fmt_complex(v, signed=False):
    """Literal text for v; ``signed`` allows a bare leading minus (mobius args)."""
    v = complex(v)
    x, y = v.real, v.imag
    if y == 0 and (x >= 0 or signed):
        return _fmt_real(x)
    if x == 0 and (y > 0 or (signed and y < 0)):
        return ("-" if y < 0 else "") + _fmt_real(abs(y)) + "i"
    sign = "+" if y >= 0 else "-"
    return f"({_fmt_real(x)}{sign}{_fmt_real(abs(y))}i)"


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _is_bare_imag(node):
    return isinstance(node, Num) and node.value.real == 0 and node.value.imag > 0


def to_text(node, parent_prec=0, right_side=False):
    """Render a syntax tree with the parentheses needed to reparse it exactly."""
    if isinstance(node, Num):
        return _fmt_complex(node.value)
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Neg):
        text = "-" + to_text(node.operand, 3)
        return f"({text})" if parent_prec >= 3 else text
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        left = to_text(node.left, prec)
        right = to_text(node.right, prec, right_side=True)
        if prec == 1 and _is_bare_imag(node.right):
            # keeps "(x+yi)" from reparsing as one complex literal
            right = f"({right})"
        text = f"{left}{node.op}{right}"
        if prec < parent_prec or (prec == parent_prec and right_side):
            return f"({text})"
        return text
    if isinstance(node, Exp):
        return f"exp({to_text(node.arg)})"
    if isinstance(node, Compose):
        return f"compose({to_text(node.outer)},{to_text(node.inner)})"
    if isinstance(node, MobiusLit):
        parts = ",".join(_fmt_complex(c, signed=True) for c in (node.a, node.b, node.c, node.d))
        return f"mobius({parts})"
    raise TypeError(f"not a syntax node: {node!r}")


# --------------------------------------------------------------------------
# lowering to analytic maps
# --------------------------------------------------------------------------


def to_map(node):
    if isinstance(node, Num):
        return maps.constant(node.value)
    if isinstance(node, Var):
        return maps.IDENTITY
    if isinstance(node, Neg):
        return maps.negate(to_map(node.operand))
    if isinstance(node, BinOp):
        left, right = to_map(node.left), to_map(node.right)
        if node.op == "+":
            return maps.add(left, right)
        if node.op == "-":
            return maps.add(left, maps.negate(right))
        if node.op == "*":
            return maps.multiply(left, right)
        return maps.divide(left, right)
    if isinstance(node, Exp):
        return maps.exp_map(to_map(node.arg))
    if isinstance(node, Compose):
        return maps.compose(to_map(node.outer), to_map(node.inner))
    if isinstance(node, MobiusLit):
        return maps.Mobius(node.a, node.b, node.c, node.d)
    raise TypeError(f"not a syntax node: {node!r}")


def parse_symbol(text):
    """Parse a symbol expression straight to an AnalyticMap.

    >>> parse_symbol("z/(2-z)")
    Mobius((1+0j), 0j, (-1+0j), (2+0j))
    """
    return to_map(parse_expr(text).ast)
