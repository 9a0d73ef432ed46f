"""Session files: parsing and canonical serialization.

A session is line oriented::

    # comments start with '#'
    [ring]
    base = Q                       # Q | Fp:<odd prime> | Zmod:<odd m>
    vars = [x, y, z]
    relations = [x^2 + y^2 + z^2 - 1]
    order = degrevlex              # or lex

    [row v]
    entries = [x, y, z]
    witness = [x, y, z]            # optional; computed when absent

    [matrix G]
    rows = [0, 1; -1, 0]

    [pipeline]
    s = vaserstein_symbol(v)

    [assert]
    pf(s) == 1

Parsing checks expression syntax, operation names and name resolution,
and reports problems with line and column.
"""

import re
from dataclasses import dataclass, field

from ..errors import SessionSyntaxError, UnknownOperation, UnresolvedName
from ..expr import parse_expr, split_top_level
from .ops import OPERATIONS, ASSERTIONS

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_SECTION = re.compile(r"\[\s*(ring|row|matrix|pipeline|assert)(?:\s+([A-Za-z_][A-Za-z0-9_]*))?\s*\]$")
_STEP = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$")
_CALL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\((.*?)\)\s*(?:==\s*(.+))?$")
_COMPARE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*==\s*(.+)$")


@dataclass(frozen=True)
class RingBlock:
    base: str = "Q"
    vars: tuple = ()
    relations: tuple = ()
    order: str = "degrevlex"


@dataclass(frozen=True)
class RowDecl:
    name: str
    entries: tuple
    witness: tuple = None


@dataclass(frozen=True)
class MatrixDecl:
    name: str
    rows: tuple


@dataclass(frozen=True)
class Step:
    out: str
    op: str
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Assertion:
    text: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SessionDocument:
    ring: RingBlock
    decls: tuple = ()
    steps: tuple = ()
    asserts: tuple = ()

    def names(self):
        return [d.name for d in self.decls] + [s.out for s in self.steps]


def _strip_comment(line):
    k = line.find("#")
    return line if k < 0 else line[:k]


def _list(text, line, col):
    """Items of ``[a, b, ...]`` with their 1-based columns."""
    t = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (t.startswith("[") and t.endswith("]")):
        raise SessionSyntaxError("expected a bracketed list", line, col + lead)
    inner = t[1:-1]
    if not inner.strip():
        return []
    out = []
    for part, off in split_top_level(inner, ","):
        item = part.strip()
        c = col + lead + 1 + off + (len(part) - len(part.lstrip()))
        if not item:
            raise SessionSyntaxError("empty list item", line, c)
        out.append((item, c))
    return out


def _check_expr(text, line, col):
    parse_expr(text, line, col)


class _Parser:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.ring = None
        self.decls = []
        self.steps = []
        self.asserts = []
        self.seen = set()

    def parse(self):
        section = None
        current = None
        for num, raw in enumerate(self.lines, 1):
            body = _strip_comment(raw)
            if not body.strip():
                continue
            col = len(body) - len(body.lstrip()) + 1
            text = body.strip()
            if text.startswith("["):
                m = _SECTION.match(text)
                if m is None:
                    raise SessionSyntaxError(f"bad section header {text!r}", num, col)
                self._close(current)
                section, name = m.group(1), m.group(2)
                current = None
                if section in ("row", "matrix"):
                    if name is None:
                        raise SessionSyntaxError(f"[{section}] needs a name", num, col)
                    self._declare(name, num, col)
                    current = {"kind": section, "name": name, "line": num}
                elif name is not None:
                    raise SessionSyntaxError(f"[{section}] takes no name", num, col)
                if section == "ring":
                    if self.ring is not None:
                        raise SessionSyntaxError("duplicate [ring] section", num, col)
                    self.ring = {}
                continue
            if section is None:
                raise SessionSyntaxError("content before any section", num, col)
            if section == "ring":
                self._ring_line(body, num)
            elif section in ("row", "matrix"):
                self._decl_line(current, body, num)
            elif section == "pipeline":
                self._step_line(body, num, col)
            else:
                self.asserts.append((text, num, col))
        self._close(current)
        if self.ring is None:
            raise SessionSyntaxError("missing [ring] section", 1, 1)
        ring = RingBlock(**self.ring)
        asserts = [self._assertion(t, n, c) for t, n, c in self.asserts]
        return SessionDocument(ring, tuple(self.decls), tuple(self.steps), tuple(asserts))

    def _declare(self, name, line, col):
        if name in self.seen:
            raise SessionSyntaxError(f"name {name!r} declared twice", line, col)
        self.seen.add(name)

    def _key_value(self, body, line):
        if "=" not in body:
            raise SessionSyntaxError("expected 'key = value'", line, len(body) - len(body.lstrip()) + 1)
        k, v = body.split("=", 1)
        key = k.strip()
        return key, v, len(k) + 2

    def _ring_line(self, body, line):
        key, value, vcol = self._key_value(body, line)
        if key in self.ring:
            raise SessionSyntaxError(f"duplicate ring key {key!r}", line, 1)
        if key == "base":
            v = value.strip()
            if not re.fullmatch(r"Q|Fp:\d+|Zmod:\d+", v):
                raise SessionSyntaxError(f"unknown base {v!r}", line, vcol)
            self.ring["base"] = v
        elif key == "vars":
            items = _list(value, line, vcol)
            for name, c in items:
                if not _IDENT.match(name):
                    raise SessionSyntaxError(f"bad variable name {name!r}", line, c)
            self.ring["vars"] = tuple(n for n, _ in items)
        elif key == "relations":
            items = _list(value, line, vcol)
            for expr, c in items:
                _check_expr(expr, line, c)
            self.ring["relations"] = tuple(e for e, _ in items)
        elif key == "order":
            v = value.strip()
            if v not in ("degrevlex", "lex"):
                raise SessionSyntaxError(f"unknown order {v!r}", line, vcol)
            self.ring["order"] = v
        else:
            raise SessionSyntaxError(f"unknown ring key {key!r}", line, 1)

    def _decl_line(self, cur, body, line):
        key, value, vcol = self._key_value(body, line)
        if key in cur:
            raise SessionSyntaxError(f"duplicate key {key!r}", line, 1)
        if cur["kind"] == "row" and key in ("entries", "witness"):
            items = _list(value, line, vcol)
            for expr, c in items:
                _check_expr(expr, line, c)
            cur[key] = tuple(e for e, _ in items)
        elif cur["kind"] == "matrix" and key == "rows":
            t = value.strip()
            lead = vcol + len(value) - len(value.lstrip())
            if not (t.startswith("[") and t.endswith("]")):
                raise SessionSyntaxError("expected [a, b; c, d]", line, lead)
            rows = []
            for rpart, roff in split_top_level(t[1:-1], ";"):
                items = _list("[" + rpart + "]", line, lead + roff)
                for expr, c in items:
                    _check_expr(expr, line, c)
                rows.append(tuple(e for e, _ in items))
            if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
                raise SessionSyntaxError("matrix rows must be non-empty and of equal length", line, lead)
            cur[key] = tuple(rows)
        else:
            raise SessionSyntaxError(f"unknown key {key!r} in [{cur['kind']}]", line, 1)

    def _close(self, cur):
        if cur is None:
            return
        if cur["kind"] == "row":
            if "entries" not in cur:
                raise SessionSyntaxError(f"row {cur['name']!r} has no entries", cur["line"], 1)
            w = cur.get("witness")
            if w is not None and len(w) != len(cur["entries"]):
                raise SessionSyntaxError(f"row {cur['name']!r}: witness length differs", cur["line"], 1)
            self.decls.append(RowDecl(cur["name"], cur["entries"], w))
        else:
            if "rows" not in cur:
                raise SessionSyntaxError(f"matrix {cur['name']!r} has no rows", cur["line"], 1)
            self.decls.append(MatrixDecl(cur["name"], cur["rows"]))

    def _step_line(self, body, line, col):
        text = body.strip()
        m = _STEP.match(text)
        if m is None:
            raise SessionSyntaxError("expected '<out> = <op>(<args>)'", line, col)
        out, op, argtext = m.group(1), m.group(2), m.group(3)
        if op not in OPERATIONS:
            raise UnknownOperation(f"line {line}: unknown operation {op!r}")
        argcol = col + m.start(3)
        args = []
        if argtext.strip():
            for part, off in split_top_level(argtext, ","):
                item = part.strip()
                c = argcol + off + (len(part) - len(part.lstrip()))
                if not item:
                    raise SessionSyntaxError("empty argument", line, c)
                args.append((item, c))
        kinds = OPERATIONS[op].kinds
        variadic = kinds and kinds[-1].endswith("*")
        fixed = kinds[:-1] if variadic else kinds
        if len(args) < len(fixed) or (not variadic and len(args) > len(fixed)):
            raise SessionSyntaxError(f"{op} takes {len(fixed)}{'+' if variadic else ''} arguments, "
                                     f"got {len(args)}", line, argcol)
        for k, (item, c) in enumerate(args):
            kind = kinds[min(k, len(kinds) - 1)].rstrip("*")
            if kind in ("row", "matrix", "form", "value"):
                if not _IDENT.match(item):
                    raise SessionSyntaxError(f"argument {k + 1} of {op} must be a name", line, c)
                if item not in self.seen:
                    raise UnresolvedName(f"line {line}, column {c}: unknown name {item!r}")
            elif kind == "int":
                if not re.fullmatch(r"-?\d+", item):
                    raise SessionSyntaxError(f"argument {k + 1} of {op} must be an integer", line, c)
            else:
                _check_expr(item, line, c)
        self._declare(out, line, col)
        self.steps.append(Step(out, op, tuple(a for a, _ in args), line))

    def _assertion(self, text, line, col):
        m = _CALL.match(text)
        if m and m.group(1) in ASSERTIONS:
            fn = m.group(1)
            names = [p.strip() for p, _ in split_top_level(m.group(2), ",")]
            for n in names:
                if n not in self.seen:
                    raise UnresolvedName(f"line {line}: unknown name {n!r}")
            needs_value = ASSERTIONS[fn]
            if needs_value and m.group(3) is None:
                raise SessionSyntaxError(f"{fn}(...) needs '== <expr>'", line, col)
            if not needs_value and m.group(3) is not None:
                raise SessionSyntaxError(f"{fn}(...) takes no comparison", line, col)
            if m.group(3) is not None:
                _check_expr(m.group(3).strip(), line, col + m.start(3))
            return Assertion(text, line)
        m = _COMPARE.match(text)
        if m:
            if m.group(1) not in self.seen:
                raise UnresolvedName(f"line {line}: unknown name {m.group(1)!r}")
            _check_expr(m.group(2).strip(), line, col + m.start(2))
            return Assertion(text, line)
        raise SessionSyntaxError(f"unrecognised assertion {text!r}", line, col)


def parse_session(text):
    return _Parser(text).parse()


def serialize_session(doc):
    r = doc.ring
    out = ["[ring]", f"base = {r.base}"]
    if r.vars:
        out.append("vars = [" + ", ".join(r.vars) + "]")
    if r.relations:
        out.append("relations = [" + ", ".join(r.relations) + "]")
    out.append(f"order = {r.order}")
    for d in doc.decls:
        out.append("")
        if isinstance(d, RowDecl):
            out.append(f"[row {d.name}]")
            out.append("entries = [" + ", ".join(d.entries) + "]")
            if d.witness is not None:
                out.append("witness = [" + ", ".join(d.witness) + "]")
        else:
            out.append(f"[matrix {d.name}]")
            out.append("rows = [" + "; ".join(", ".join(row) for row in d.rows) + "]")
    if doc.steps:
        out += ["", "[pipeline]"]
        out += [f"{s.out} = {s.op}(" + ", ".join(s.args) + ")" for s in doc.steps]
    if doc.asserts:
        out += ["", "[assert]"]
        out += [a.text for a in doc.asserts]
    return "\n".join(out) + "\n"
