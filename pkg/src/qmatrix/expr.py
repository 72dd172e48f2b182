"""Expression language for elements of O_q(M_{m,n}).

Grammar (whitespace-insensitive, LL(1))::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" exponent)?
    exponent:= "-"? INT | "(" "-"? INT ")"
    atom    := INT | "q" | "Y" "[" INT "," INT "]" | "(" expr ")"
             | "minor" "(" list "," list ")" | "det" "(" INT ")" | "b" "(" INT ")"
             | "gamma" "(" expr ")" | "tau" "(" expr ")"
             | "torus" "(" args ";" args ")" "(" expr ")"
    list    := "[" INT ("," INT)* "]"
    args    := (expr ("," expr)*)?

``*`` is the noncommutative product. ``/`` and negative powers are only
allowed on scalars.
"""

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import EvaluationError, ExpressionSyntaxError, ShapeMismatch
from .minors import b_element, check_index_set, gamma_images, quantum_minor
from .morphisms import GeneratorMap, TorusParam, apply_map, torus_automorphism, transpose_automorphism

__all__ = ["parse_expression", "evaluate", "evaluate_text", "Node"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")
_KEYWORDS = {"q", "Y", "minor", "det", "b", "gamma", "tau", "torus"}


@dataclass(frozen=True)
class Node:
    """AST node: ``kind`` plus positional ``args``; ``pos`` is 1-based."""

    kind: str
    args: tuple
    pos: int


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt.group(0).strip() == "":
            break
        start = mt.start(mt.lastindex) + 1
        if mt.group(1):
            tokens.append(("INT", mt.group(1), start))
        elif mt.group(2):
            word = mt.group(2)
            if word not in _KEYWORDS:
                raise ExpressionSyntaxError(start, ["expression"], word)
            tokens.append((word, word, start))
        else:
            tokens.append((mt.group(3), mt.group(3), start))
        pos = mt.end()
    tokens.append(("EOF", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.k = 0

    @property
    def tok(self):
        return self.tokens[self.k]

    def error(self, expected):
        kind, value, pos = self.tok
        raise ExpressionSyntaxError(pos, expected, value)

    def accept(self, kind):
        if self.tok[0] == kind:
            t = self.tok
            self.k += 1
            return t
        return None

    def expect(self, kind):
        t = self.accept(kind)
        if t is None:
            self.error([kind])
        return t

    def parse(self):
        node = self.expr()
        if self.tok[0] != "EOF":
            self.error(["+", "-", "*", "/", "^", "end of input"])
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] in ("+", "-"):
            op, _, pos = self.tok
            self.k += 1
            node = Node("add" if op == "+" else "sub", (node, self.term()), pos)
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] in ("*", "/"):
            op, _, pos = self.tok
            self.k += 1
            node = Node("mul" if op == "*" else "div", (node, self.unary()), pos)
        return node

    def unary(self):
        t = self.accept("-")
        if t:
            return Node("neg", (self.unary(),), t[2])
        return self.power()

    def power(self):
        base = self.atom()
        t = self.accept("^")
        if t:
            if self.accept("("):
                e = self.signed_int()
                self.expect(")")
            else:
                e = self.signed_int()
            return Node("pow", (base, e), t[2])
        return base

    def signed_int(self):
        neg = self.accept("-") is not None
        if self.tok[0] != "INT":
            self.error(["INT"] if neg else ["INT", "-"])
        v = int(self.tok[1])
        self.k += 1
        return -v if neg else v

    def int_(self):
        return int(self.expect("INT")[1])

    def int_list(self):
        self.expect("[")
        out = [self.int_()]
        while self.accept(","):
            out.append(self.int_())
        self.expect("]")
        return tuple(out)

    def atom(self):
        kind, value, pos = self.tok
        if kind == "INT":
            self.k += 1
            return Node("int", (int(value),), pos)
        if kind == "q":
            self.k += 1
            return Node("q", (), pos)
        if kind == "Y":
            self.k += 1
            self.expect("[")
            i = self.int_()
            self.expect(",")
            a = self.int_()
            self.expect("]")
            return Node("gen", (i, a), pos)
        if kind == "(":
            self.k += 1
            node = self.expr()
            self.expect(")")
            return node
        if kind == "minor":
            self.k += 1
            self.expect("(")
            rows = self.int_list()
            self.expect(",")
            cols = self.int_list()
            self.expect(")")
            return Node("minor", (rows, cols), pos)
        if kind in ("det", "b"):
            self.k += 1
            self.expect("(")
            v = self.int_()
            self.expect(")")
            return Node(kind, (v,), pos)
        if kind in ("gamma", "tau"):
            self.k += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Node(kind, (inner,), pos)
        if kind == "torus":
            self.k += 1
            self.expect("(")
            a = self.args(";")
            self.expect(";")
            b = self.args(")")
            self.expect(")")
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Node("torus", (a, b, inner), pos)
        self.error(["INT", "q", "Y", "(", "minor", "det", "b", "gamma", "tau", "torus", "-"])

    def args(self, stop):
        out = []
        if self.tok[0] == stop:
            return tuple(out)
        out.append(self.expr())
        while self.accept(","):
            out.append(self.expr())
        return tuple(out)


def parse_expression(text):
    """Parse ``text`` to a :class:`Node`; raises ExpressionSyntaxError."""
    return _Parser(text).parse()


@lru_cache(maxsize=32)
def _gamma_map(algebra):
    return GeneratorMap(algebra, gamma_images(algebra), kind="anti")


def _scalar(x, node):
    if not x.is_scalar():
        raise EvaluationError(f"position {node.pos}: expected a scalar, got {x}")
    return x.scalar_value()


def evaluate(node, algebra):
    """Evaluate an AST to a normalised element of ``algebra``."""
    ev = lambda nd: evaluate(nd, algebra)
    kind, args = node.kind, node.args
    if kind == "int":
        return algebra.scalar(args[0])
    if kind == "q":
        return algebra.q()
    if kind == "gen":
        return algebra.gen(*args)
    if kind == "add":
        return ev(args[0]) + ev(args[1])
    if kind == "sub":
        return ev(args[0]) - ev(args[1])
    if kind == "neg":
        return -ev(args[0])
    if kind == "mul":
        return ev(args[0]) * ev(args[1])
    if kind == "div":
        num = ev(args[0])
        den = _scalar(ev(args[1]), args[1])
        if not den:
            raise EvaluationError(f"position {node.pos}: division by zero")
        return num.scale(algebra.field.one / den)
    if kind == "pow":
        base = ev(args[0])
        e = args[1]
        if e >= 0:
            return base ** e
        s = _scalar(base, args[0])
        if not s:
            raise EvaluationError(f"position {node.pos}: zero to a negative power")
        return algebra.scalar((algebra.field.one / s) ** (-e))
    if kind == "minor":
        rows, cols = args
        try:
            check_index_set(rows, algebra.m, "row set")
            check_index_set(cols, algebra.n, "column set")
        except ValueError as exc:
            if isinstance(exc, IndexError):
                raise
            raise EvaluationError(f"position {node.pos}: {exc}") from None
        return quantum_minor(algebra, rows, cols)
    if kind == "det":
        if not algebra.shape.is_square or args[0] != algebra.n:
            raise ShapeMismatch(f"det({args[0]}) used in a {algebra.shape} algebra")
        return quantum_minor(algebra, range(1, args[0] + 1), range(1, args[0] + 1))
    if kind == "b":
        return b_element(algebra, args[0])
    if kind == "gamma":
        return apply_map(_gamma_map(algebra), ev(args[0]))
    if kind == "tau":
        return apply_map(transpose_automorphism(algebra), ev(args[0]))
    if kind == "torus":
        a_nodes, b_nodes, inner = args
        sh = algebra.shape
        if len(a_nodes) != sh.m or len(b_nodes) not in (sh.n - 1, sh.n):
            raise ShapeMismatch(f"torus needs {sh.m} row and {sh.n - 1} column parameters")
        a = tuple(_scalar(ev(x), x) for x in a_nodes)
        b = tuple(_scalar(ev(x), x) for x in b_nodes)
        if len(b) == sh.n - 1:
            b = b + (algebra.field.one,)
        try:
            h = TorusParam(a, b)
        except ValueError as exc:
            raise EvaluationError(f"position {node.pos}: {exc}") from None
        return apply_map(torus_automorphism(algebra, h), ev(inner))
    raise EvaluationError(f"unknown node kind {kind!r}")


def evaluate_text(text, algebra):
    return evaluate(parse_expression(text), algebra)
