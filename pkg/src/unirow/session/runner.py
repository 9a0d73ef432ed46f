"""Execute a parsed session and collect a report."""

import os
import re
from dataclasses import dataclass, field

from ..errors import SessionSyntaxError, UnirowError
from ..expr import split_top_level
from ..linear import ExactMatrix, determinant, pfaffian
from ..ring.context import RingDescriptor, RingElement, make_ring
from ..ring.groebner import DEFAULT_CAPS
from ..rows import UnimodularRow
from ..witt import SkewRepresentative
from .certfile import write_certificate
from .document import MatrixDecl, RowDecl
from .ops import OPERATIONS


@dataclass
class ReportLine:
    label: str
    ok: bool
    detail: str = ""

    def text(self):
        return f"{'PASS' if self.ok else 'FAIL'}  {self.label}" + (f"  {self.detail}" if self.detail else "")


@dataclass
class Report:
    lines: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)

    @property
    def ok(self):
        return all(line.ok for line in self.lines)

    def add(self, label, ok, detail=""):
        self.lines.append(ReportLine(label, bool(ok), detail))

    def text(self):
        body = "\n".join(line.text() for line in self.lines)
        verdict = "all checks passed" if self.ok else "some checks failed"
        return body + f"\n{verdict}\n"


@dataclass
class _Context:
    ring: object
    seed: object
    step: str


def describe(value):
    if isinstance(value, UnimodularRow):
        return str(value)
    if isinstance(value, SkewRepresentative):
        return f"[{value.matrix}] Pf = {value.pf}"
    if isinstance(value, ExactMatrix):
        return f"[{value}]"
    if isinstance(value, RingElement):
        return str(value)
    if isinstance(value, bool):
        return str(value).lower()
    if hasattr(value, "gens"):
        return f"word of {len(value)} generators"
    return repr(value)


def build_ring(doc, caps=DEFAULT_CAPS):
    r = doc.ring
    return make_ring(RingDescriptor(r.base, tuple(r.vars), tuple(r.relations), r.order), caps)


def run_pipeline(doc, seed=None, caps=DEFAULT_CAPS, emit_certs=None):
    """Run every step in order, then every assertion.  Never raises on a
    failing step; failures are recorded and later steps that need the
    missing value fail too."""
    report = Report()
    try:
        ring = build_ring(doc, caps)
    except UnirowError as exc:
        report.add("ring", False, f"{type(exc).__name__}: {exc}")
        return report
    values = report.values
    certs = {}
    scalars = {}

    def expr(text):
        return ring.parse(text, names=scalars)

    for d in doc.decls:
        try:
            if isinstance(d, RowDecl):
                ents = [expr(e) for e in d.entries]
                wit = [expr(w) for w in d.witness] if d.witness is not None else None
                values[d.name] = UnimodularRow(ring, ents, wit)
            else:
                values[d.name] = ExactMatrix(ring, [[expr(e) for e in row] for row in d.rows])
        except UnirowError as exc:
            report.add(f"declare {d.name}", False, f"{type(exc).__name__}: {exc}")

    for step in doc.steps:
        label = f"step {step.out} = {step.op}({', '.join(step.args)})"
        op = OPERATIONS[step.op]
        try:
            args = []
            for k, text in enumerate(step.args):
                kind = op.kinds[min(k, len(op.kinds) - 1)].rstrip("*")
                if kind in ("row", "matrix", "form", "value"):
                    if text not in values:
                        raise UnirowError(f"{text!r} is unavailable (an earlier step failed)")
                    v = values[text]
                    if kind == "row" and not isinstance(v, UnimodularRow):
                        raise UnirowError(f"{text!r} is not a row")
                    if kind in ("matrix", "form") and not isinstance(v, (ExactMatrix, SkewRepresentative)):
                        raise UnirowError(f"{text!r} is not a matrix")
                    args.append(v)
                elif kind == "int":
                    args.append(int(text))
                else:
                    args.append(expr(text))
            res = op.fn(_Context(ring, seed, step.out), *args)
        except UnirowError as exc:
            report.add(label, False, f"{type(exc).__name__}: {exc}")
            continue
        values[step.out] = res.value
        if isinstance(res.value, RingElement):
            scalars[step.out] = res.value
        if res.cert is not None:
            certs[step.out] = res.cert
            if emit_certs is not None:
                os.makedirs(emit_certs, exist_ok=True)
                path = os.path.join(emit_certs, f"{step.out}.cert")
                write_certificate(path, res.cert, step.op)
                report.certificates.append(path)
        failed = [name for name, ok in res.checks if not ok]
        detail = describe(res.value)
        if failed:
            detail += "  failed: " + "; ".join(failed)
        report.add(label, not failed, detail)

    for a in doc.asserts:
        label = f"assert {a.text}"
        try:
            ok, detail = _check(a.text, ring, values, certs, expr)
        except UnirowError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.add(label, ok, detail)
    return report


_CALL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\((.*?)\)\s*(?:==\s*(.+))?$")
_COMPARE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*==\s*(.+)$")


def _get(values, name):
    if name not in values:
        raise UnirowError(f"{name!r} is unavailable")
    return values[name]


def _matrix_of(v):
    if isinstance(v, SkewRepresentative):
        return v.matrix
    if isinstance(v, ExactMatrix):
        return v
    raise UnirowError("expected a matrix or form")


def _check(text, ring, values, certs, expr):
    m = _CALL.match(text)
    if m and m.group(1) in ("unimodular", "certified", "holds", "equal", "pf", "det"):
        fn = m.group(1)
        names = [p.strip() for p, _ in split_top_level(m.group(2), ",")]
        if fn == "unimodular":
            v = _get(values, names[0])
            if not isinstance(v, UnimodularRow):
                raise UnirowError(f"{names[0]!r} is not a row")
            return v.verify(), f"pairing = {v.pairing()}"
        if fn == "certified":
            if names[0] not in certs:
                raise UnirowError(f"{names[0]!r} has no certificate")
            return certs[names[0]].verify(), ""
        if fn == "holds":
            v = _get(values, names[0])
            return v is True, describe(v)
        if fn == "equal":
            a, b = (_get(values, n) for n in names[:2])
            if isinstance(a, UnimodularRow) and isinstance(b, UnimodularRow):
                return a.same_entries(b), f"{a} vs {b}"
            return a == b, ""
        M = _matrix_of(_get(values, names[0]))
        got = pfaffian(M) if fn == "pf" else determinant(M)
        want = expr(m.group(3).strip())
        return got == want, f"{fn} = {got}"
    m = _COMPARE.match(text)
    if m:
        got = _get(values, m.group(1))
        want = expr(m.group(2).strip())
        return got == want, f"{m.group(1)} = {describe(got)}"
    raise SessionSyntaxError(f"unrecognised assertion {text!r}")
