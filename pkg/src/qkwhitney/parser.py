"""Expression language for presentation classes.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' ['-'] int)?
    atom   := int | var | '(' expr ')'
    var    := T<i> | q<j> | e<l>(X<j>) | e<l>(Y<j>) | e<l>(T) | X<j>_<l> | Y<j>_<l>

``X<j>_1`` and ``Y<j>_1`` name the single Chern root of a rank-one block.
Division is allowed by scalars, and by unit series when evaluating into the
completed ring. Negative exponents likewise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .exceptions import (
    DomainError,
    NonUnitConstantTerm,
    ParseError,
    QVariablePresent,
    UnknownVariable,
)
from .series import QSeries, extend_table_with_q, series_invert_unit
from .whitney import elementary_T, whitney_table, x_name, y_name

__all__ = ["ExprAst", "parse_expr", "render_ast", "evaluate", "resolve_var", "MAX_EXPONENT"]

MAX_EXPONENT = 10_000

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<elem>e(?P<el>\d+)\(\s*(?:(?P<eb>[XY])(?P<ej>\d+)|(?P<et>T))\s*\))
  | (?P<root>(?P<rb>[XY])(?P<rj>\d+)_(?P<rl>\d+))
  | (?P<tvar>T(?P<ti>\d+))
  | (?P<qvar>q(?P<qj>\d+))
  | (?P<int>\d+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class ExprAst:
    """kind is one of int, var, neg, add, sub, mul, div, pow.

    ``value`` holds the integer for int and pow (the exponent), and a
    variable key for var: ("T", i), ("q", j), ("e", l, "X"|"Y"|"T", j) or
    ("root", "X"|"Y", j, l).
    """

    kind: str
    value: object = None
    children: tuple = ()


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int
    key: object = None


def _byte_offset(text, pos):
    return len(text[:pos].encode("utf-8"))


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        off = _byte_offset(text, pos)
        if m.group("ws"):
            pass
        elif m.group("elem"):
            if m.group("et"):
                key = ("e", int(m.group("el")), "T", 0)
            else:
                key = ("e", int(m.group("el")), m.group("eb"), int(m.group("ej")))
            toks.append(_Tok("var", m.group(0), off, key))
        elif m.group("root"):
            key = ("root", m.group("rb"), int(m.group("rj")), int(m.group("rl")))
            toks.append(_Tok("var", m.group(0), off, key))
        elif m.group("tvar"):
            toks.append(_Tok("var", m.group(0), off, ("T", int(m.group("ti")))))
        elif m.group("qvar"):
            toks.append(_Tok("var", m.group(0), off, ("q", int(m.group("qj")))))
        elif m.group("int"):
            toks.append(_Tok("int", m.group(0), off, int(m.group(0))))
        else:
            toks.append(_Tok(m.group(0), m.group(0), off))
        pos = m.end()
    toks.append(_Tok("end", "", _byte_offset(text, len(text))))
    return toks


def resolve_var(key, shape):
    """Check a variable key against ``shape``; return the canonical key.

    Root aliases become ("e", 1, block, j); e_l(X^(k+1)) becomes e_l(T).
    """
    kind = key[0]
    if kind == "T":
        ok = 1 <= key[1] <= shape.n
    elif kind == "q":
        ok = 1 <= key[1] <= shape.k
    elif kind == "root":
        _, block, j, l = key
        size = _block_size(shape, block, j)
        if size == 1 and l == 1:
            return resolve_var(("e", 1, block, j), shape)
        ok = False
    else:
        _, l, block, j = key
        if block == "T":
            ok = 1 <= l <= shape.n
        elif block == "X" and j == shape.k + 1:
            return resolve_var(("e", l, "T", 0), shape)
        else:
            ok = 1 <= l <= _block_size(shape, block, j)
    if not ok:
        raise UnknownVariable(f"{_key_text(key)} is not a variable of {shape}")
    return key


def _block_size(shape, block, j):
    if block == "X":
        return shape.rank(j) if 1 <= j <= shape.k + 1 else 0
    return shape.delta(j) if 1 <= j <= shape.k else 0


def _key_text(key):
    kind = key[0]
    if kind == "T":
        return f"T{key[1]}"
    if kind == "q":
        return f"q{key[1]}"
    if kind == "root":
        return f"{key[1]}{key[2]}_{key[3]}"
    _, l, block, j = key
    return f"e{l}(T)" if block == "T" else f"e{l}({block}{j})"


class _Parser:
    def __init__(self, text, shape):
        self.toks = _tokenize(text)
        self.i = 0
        self.shape = shape

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}, found {tok.text or 'end of input'!r}", tok.offset)
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            node = ExprAst("add" if op == "+" else "sub", None, (node, self.term()))
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            node = ExprAst("mul" if op == "*" else "div", None, (node, self.factor()))
        return node

    def factor(self):
        if self.peek().kind == "-":
            self.take()
            return ExprAst("neg", None, (self.factor(),))
        node = self.atom()
        if self.peek().kind == "^":
            self.take()
            sign = 1
            if self.peek().kind == "-":
                self.take()
                sign = -1
            tok = self.take("int")
            if tok.key > MAX_EXPONENT:
                raise ParseError(f"exponent overflow: {tok.text} > {MAX_EXPONENT}", tok.offset)
            node = ExprAst("pow", sign * tok.key, (node,))
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return ExprAst("int", tok.key)
        if tok.kind == "var":
            self.take()
            key = tok.key
            if self.shape is not None:
                try:
                    key = resolve_var(key, self.shape)
                except UnknownVariable as exc:
                    raise UnknownVariable(str(exc), tok.offset) from None
            return ExprAst("var", key)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.offset)


def parse_expr(text, shape=None):
    """Parse ``text``; with a shape, variable references are validated and canonicalized."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    p = _Parser(text, shape)
    node = p.expr()
    p.take("end")
    return node


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def _prec(node):
    return _PREC.get(node.kind, 5)


def render_ast(node):
    """Canonical text; parsing it gives back an equal tree."""
    k = node.kind
    if k == "int":
        return str(node.value)
    if k == "var":
        return _key_text(node.value)
    if k == "neg":
        (a,) = node.children
        inner = render_ast(a)
        return f"-{inner}" if _prec(a) >= 3 else f"-({inner})"
    if k == "pow":
        (a,) = node.children
        inner = render_ast(a)
        if _prec(a) <= 4:
            inner = f"({inner})"
        return f"{inner}^{node.value}"
    a, b = node.children
    p = _PREC[k]
    left = render_ast(a)
    right = render_ast(b)
    if _prec(a) < p:
        left = f"({left})"
    if _prec(b) <= p:
        right = f"({right})"
    sym = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[k]
    return f"{left}{sym}{right}"


# -- evaluation -------------------------------------------------------------


class _PolyDomain:
    """Values are Poly over the presentation table extended by q1..qk."""

    def __init__(self, shape, equivariant, with_q=True):
        self.shape = shape
        self.base = whitney_table(shape, equivariant)
        self.table = extend_table_with_q(self.base, shape.k) if with_q else self.base

    def scalar(self, c):
        return self.table.const(c)

    def var(self, name):
        return self.table.var(name)

    def q(self, j):
        if f"q{j}" not in self.table.index:
            raise QVariablePresent(f"q{j} is not allowed in a classical expression")
        return self.table.var(f"q{j}")

    def invert(self, v):
        if not v.is_constant() or not v:
            raise DomainError("division by a non-scalar polynomial")
        return self.table.const(self.table.field.one / v.constant_coeff())


class _SeriesDomain:
    """Values are QSeries over the presentation table, truncated at D."""

    def __init__(self, shape, equivariant, D):
        self.shape = shape
        self.table = whitney_table(shape, equivariant)
        self.D = D

    def scalar(self, c):
        return QSeries.scalar(self.table, self.shape.k, self.D, c)

    def var(self, name):
        return QSeries.from_poly(self.table.var(name), self.shape.k, self.D)

    def q(self, j):
        return QSeries.q(self.table, self.shape.k, self.D, j - 1)

    def invert(self, v):
        try:
            return series_invert_unit(v)
        except NonUnitConstantTerm:
            raise DomainError("division by a non-unit series") from None


def evaluate(node, shape, equivariant=True, D=None, with_q=True):
    """Value of an expression: a Poly in presentation and q variables, or a
    QSeries truncated at total q-degree ``D`` when ``D`` is given.

    With ``with_q=False`` the result is a Poly in the presentation variables
    only, and q variables are rejected.
    """
    if D is None:
        dom = _PolyDomain(shape, equivariant, with_q)
    else:
        dom = _SeriesDomain(shape, equivariant, D)
    field = dom.table.field

    def t_value(i):
        return field.gen(i - 1) if equivariant else field.one

    def ev(nd):
        k = nd.kind
        if k == "int":
            return dom.scalar(field.convert(nd.value))
        if k == "var":
            key = resolve_var(nd.value, shape)
            if key[0] == "T":
                return dom.scalar(t_value(key[1]))
            if key[0] == "q":
                return dom.q(key[1])
            _, l, block, j = key
            if block == "T":
                if equivariant:
                    return dom.scalar(elementary_T(field, shape.n, l))
                return dom.scalar(field.convert(elementary_T(field, shape.n, l)))
            return dom.var(x_name(j, l) if block == "X" else y_name(j, l))
        if k == "neg":
            return -ev(nd.children[0])
        if k == "pow":
            base = ev(nd.children[0])
            if nd.value < 0:
                return dom.invert(base) ** (-nd.value)
            return base ** nd.value
        a, b = (ev(c) for c in nd.children)
        if k == "add":
            return a + b
        if k == "sub":
            return a - b
        if k == "mul":
            return a * b
        return a * dom.invert(b)

    return ev(node)


def parse_value(text, shape, equivariant=True, D=None, with_q=True):
    return evaluate(parse_expr(text, shape), shape, equivariant, D, with_q)


__all__ += ["parse_value"]
