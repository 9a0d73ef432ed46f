"""Stand-alone certificate files.

Layout (ASCII, fixed key order)::

    unirow-certificate: 1
    kind: orbit | congruence | product
    operation: <name>
    base: <base>
    vars: [..]
    relations: [..]
    order: <order>
    size: <n>
    source: <row or matrix>
    target: <row or matrix>
    word:
    E i j <poly>
    ...
    end
    checksum: sha256:<hex digest of every line above>

Rows are written ``[a, b, c]`` and matrices ``[a, b; c, d]``.  The
verifier rebuilds the ring from the header and redoes the multiplication.
"""

import hashlib
from dataclasses import dataclass

from ..errors import ChecksumMismatch, MalformedCertificate, UnirowError
from ..expr import split_top_level
from ..linear import ElementaryWord, ExactMatrix, eval_word
from ..ring.context import RingDescriptor, make_ring
from ..ring.groebner import DEFAULT_CAPS

_KEYS = ("unirow-certificate", "kind", "operation", "base", "vars", "relations", "order",
         "size", "source", "target")


def _row_text(ring, entries):
    return "[" + ", ".join(ring.to_str(x) for x in entries) + "]"


def _matrix_text(M):
    return "[" + "; ".join(", ".join(M.ring.to_str(x) for x in r) for r in M.rows) + "]"


def format_certificate(cert, operation):
    """Text of a certificate file for an orbit, congruence or product certificate."""
    from ..rows import OrbitCertificate
    from ..witt import CongruenceCertificate
    from .ops import ProductCertificate

    if isinstance(cert, OrbitCertificate):
        ring = cert.ring
        kind = "orbit"
        src = _row_text(ring, cert.source.entries)
        tgt = _row_text(ring, cert.target.entries)
    elif isinstance(cert, CongruenceCertificate):
        ring = cert.G.ring
        kind = "congruence"
        src, tgt = _matrix_text(cert.G), _matrix_text(cert.G2)
    elif isinstance(cert, ProductCertificate):
        ring = cert.matrix.ring
        kind = "product"
        src, tgt = "-", _matrix_text(cert.matrix)
    else:
        raise UnirowError(f"cannot serialize {type(cert).__name__}")
    d = ring.descriptor
    lines = [
        "unirow-certificate: 1",
        f"kind: {kind}",
        f"operation: {operation}",
        f"base: {d.base}",
        "vars: [" + ", ".join(d.vars) + "]",
        "relations: [" + ", ".join(d.relations) + "]",
        f"order: {d.order}",
        f"size: {cert.word.n}",
        f"source: {src}",
        f"target: {tgt}",
        "word:",
    ]
    lines += [f"E {i} {j} {ring.to_str(ring.element(lam))}" for i, j, lam in cert.word.gens]
    lines.append("end")
    body = "\n".join(lines) + "\n"
    return body + f"checksum: sha256:{_digest(body)}\n"


def _digest(body):
    return hashlib.sha256(body.encode("ascii")).hexdigest()


def write_certificate(path, cert, operation):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_certificate(cert, operation))


def _items(text):
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise MalformedCertificate(f"expected a bracketed list, got {text!r}")
    inner = t[1:-1].strip()
    return [p.strip() for p, _ in split_top_level(inner, ",")] if inner else []


def _matrix(ring, text):
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise MalformedCertificate(f"expected a matrix, got {text!r}")
    rows = [[p.strip() for p, _ in split_top_level(r, ",")] for r, _ in split_top_level(t[1:-1], ";")]
    return ExactMatrix(ring, [[ring.element(x) for x in r] for r in rows])


@dataclass
class CertificateReport:
    ok: bool
    kind: str
    operation: str
    message: str


def parse_certificate(text):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[-1].startswith("checksum: "):
        raise MalformedCertificate("missing checksum footer")
    footer = lines[-1][len("checksum: "):]
    body = "\n".join(lines[:-1]) + "\n"
    if not footer.startswith("sha256:"):
        raise MalformedCertificate("unknown checksum scheme")
    if footer[len("sha256:"):] != _digest(body):
        raise ChecksumMismatch("checksum does not match the certificate body")
    header = {}
    for k, key in enumerate(_KEYS):
        if k >= len(lines) or not lines[k].startswith(key + ":"):
            raise MalformedCertificate(f"line {k + 1}: expected '{key}:'")
        header[key] = lines[k][len(key) + 1:].strip()
    if header["unirow-certificate"] != "1":
        raise MalformedCertificate("unsupported certificate version")
    if len(lines) < len(_KEYS) + 3 or lines[len(_KEYS)] != "word:" or lines[-2] != "end":
        raise MalformedCertificate("missing word section")
    gens = []
    for k, line in enumerate(lines[len(_KEYS) + 1:-2], len(_KEYS) + 2):
        parts = line.split(None, 3)
        if len(parts) != 4 or parts[0] != "E":
            raise MalformedCertificate(f"line {k}: expected 'E i j <poly>'")
        try:
            gens.append((int(parts[1]), int(parts[2]), parts[3]))
        except ValueError as exc:
            raise MalformedCertificate(f"line {k}: bad indices") from exc
    return header, gens


def verify_certificate_text(text, caps=DEFAULT_CAPS):
    header, raw = parse_certificate(text)
    try:
        ring = make_ring(RingDescriptor(header["base"], tuple(_items(header["vars"])),
                                        tuple(_items(header["relations"])), header["order"]), caps)
        n = int(header["size"])
        word = ElementaryWord(n, [(i, j, ring.element(p)) for i, j, p in raw], caps)
        kind = header["kind"]
        E = eval_word(word, ring)
        if kind == "orbit":
            src = ExactMatrix(ring, [[ring.element(x) for x in _items(header["source"])]])
            tgt = ExactMatrix(ring, [[ring.element(x) for x in _items(header["target"])]])
            ok = src * E == tgt
        elif kind == "congruence":
            G = _matrix(ring, header["source"])
            G2 = _matrix(ring, header["target"])
            ok = E.transpose() * G * E == G2
        elif kind == "product":
            ok = E == _matrix(ring, header["target"])
        else:
            raise MalformedCertificate(f"unknown kind {kind!r}")
    except (MalformedCertificate, ChecksumMismatch):
        raise
    except (UnirowError, ValueError) as exc:
        raise MalformedCertificate(str(exc)) from exc
    msg = "claim re-verified" if ok else "claim does not hold"
    return CertificateReport(ok, kind, header["operation"], msg)


def verify_certificate_file(path, caps=DEFAULT_CAPS):
    try:
        with open(path, encoding="ascii") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise MalformedCertificate(f"cannot read {path}: {exc}") from exc
    return verify_certificate_text(text, caps)
