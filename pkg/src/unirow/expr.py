"""Polynomial expression syntax.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | IDENT | "(" expr ")"

``^`` binds tightest and ``*`` is left-associative.  Division is only
accepted by a nonzero constant, which is how rational coefficients such as
``1/2*x`` are written.  Parsing yields a tiny AST which a ring evaluates.
"""

import re

from .errors import SessionSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text, line=1, col0=1):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise SessionSyntaxError(f"unexpected character {ch!r}", line, col0 + start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, line, col0):
        self.text = text
        self.line = line
        self.col0 = col0
        self.toks = tokenize(text, line, col0)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise SessionSyntaxError(msg, self.line, self.col0 + tok[2])

    def expect_op(self, ch):
        t = self.take()
        if t[0] != "op" or t[1] != ch:
            self.fail(f"expected {ch!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                self.fail("exponent must be a non-negative integer", e)
            node = ("pow", node, e[1])
            t = self.peek()
            if t[0] == "op" and t[1] == "^":
                self.fail("chained exponent; use parentheses", t)
        return node

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return ("int", t[1])
        if t[0] == "id":
            return ("var", t[1])
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if t[0] == "end":
            self.fail("unexpected end of expression", t)
        self.fail(f"unexpected token {t[1]!r}", t)


def parse_expr(text, line=1, col0=1):
    """Parse ``text`` into an AST; errors report ``line`` and column."""
    return _Parser(text, line, col0).parse()


def evaluate(node, ring, names=None):
    """Evaluate an AST in ``ring`` (anything offering ``element``/``var``).

    ``names`` optionally maps identifiers to ring elements (used for named
    values in sessions); otherwise identifiers must be ring variables.
    """
    kind = node[0]
    if kind == "int":
        return ring.element(node[1])
    if kind == "var":
        if names is not None and node[1] in names:
            return names[node[1]]
        return ring.var(node[1])
    if kind == "neg":
        return -evaluate(node[1], ring, names)
    if kind == "pow":
        return evaluate(node[1], ring, names) ** node[2]
    a = evaluate(node[1], ring, names)
    b = evaluate(node[2], ring, names)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return ring.divide_by_constant(a, b)
    raise ValueError(f"bad node {node!r}")


def split_top_level(text, sep=","):
    """Split on ``sep`` outside parentheses/brackets; keeps column offsets."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts
