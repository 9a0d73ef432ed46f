"""Command line entry point: ``unirow <subcommand> ...``."""

import argparse
import json
import sys

from ..errors import UnirowError
from ..linear import ExactMatrix
from ..oracle import orbit_bfs
from ..ring.context import RingDescriptor, make_ring
from ..ring.groebner import DEFAULT_CAPS, Caps
from ..rows import UnimodularRow, complete_from_certificate, factorial_completion, field_reduce_row
from ..witt import field_reduce_skew, vaserstein_symbol
from ..expr import split_top_level
from .certfile import verify_certificate_file, write_certificate
from .document import parse_session
from .runner import run_pipeline


def _caps(path):
    if not path:
        return DEFAULT_CAPS
    with open(path, encoding="utf-8") as fh:
        return Caps.from_mapping(json.load(fh))


def _ring(args, caps):
    names = tuple(v for v in (args.vars or "").replace(",", " ").split() if v)
    rels = tuple(p.strip() for p, _ in split_top_level(args.relations or "", ",") if p.strip())
    return make_ring(RingDescriptor(args.base, names, rels, args.order), caps)


def _row(ring, text, witness=None):
    ents = [p.strip() for p, _ in split_top_level(text, ",")]
    wit = [p.strip() for p, _ in split_top_level(witness, ",")] if witness else None
    return UnimodularRow(ring, ents, wit)


def _matrix(ring, text):
    rows = [[p.strip() for p, _ in split_top_level(r, ",")] for r, _ in split_top_level(text, ";")]
    return ExactMatrix(ring, rows)


def cmd_run(args, caps):
    with open(args.session, encoding="utf-8") as fh:
        doc = parse_session(fh.read())
    report = run_pipeline(doc, seed=args.seed, caps=caps, emit_certs=args.emit_certs)
    sys.stdout.write(report.text())
    for path in report.certificates:
        print(f"wrote {path}")
    return 0 if report.ok else 1


def cmd_verify(args, caps):
    status = 0
    for path in args.certificates:
        try:
            rep = verify_certificate_file(path, caps)
            print(f"{'PASS' if rep.ok else 'FAIL'}  {path}  {rep.kind} {rep.operation}: {rep.message}")
            status |= 0 if rep.ok else 1
        except UnirowError as exc:
            print(f"FAIL  {path}  {type(exc).__name__}: {exc}")
            status = 1
    return status


def cmd_orbit(args, caps):
    table = orbit_bfs(args.m, args.n, caps, seed=args.seed)
    print(f"Um_{args.n}(Z/{args.m}): {len(table.lookup)} rows, {len(table)} orbits")
    for k, rep in enumerate(table.reps):
        print(f"orbit {k}: representative {rep}")
    if args.export:
        with open(args.export, "w", encoding="ascii") as fh:
            fh.write(table.export())
    return 0


def _ring_args(p):
    p.add_argument("--base", default="Q")
    p.add_argument("--vars", default="")
    p.add_argument("--relations", default="")
    p.add_argument("--order", default="degrevlex")


def cmd_reduce_field(args, caps):
    ring = _ring(args, caps)
    if args.row:
        cert = field_reduce_row(_row(ring, args.row))
        print(f"{cert.source} -> {cert.target}")
        word = cert.word
    else:
        word = field_reduce_skew(_matrix(ring, args.form))
        print("E^t G E = psi")
    for i, j, lam in word.gens:
        print(f"E {i} {j} {ring.to_str(lam)}")
    if args.emit:
        if not args.row:
            from ..linear import psi
            from ..witt import CongruenceCertificate
            G = _matrix(ring, args.form)
            cert = CongruenceCertificate(G, psi(ring, G.nrows // 2), word)
        write_certificate(args.emit, cert, "reduce-field")
    return 0


def cmd_symbol(args, caps):
    ring = _ring(args, caps)
    G = vaserstein_symbol(_row(ring, args.row, args.witness))
    for r in G.matrix.rows:
        print("  ".join(ring.to_str(x) for x in r))
    print(f"Pf = {G.pf}")
    return 0 if G.pf.is_one() else 1


def cmd_complete(args, caps):
    ring = _ring(args, caps)
    row = _row(ring, args.row, args.witness)
    if args.rank:
        M = factorial_completion(row, args.rank, ring.element(args.a))
    else:
        M = complete_from_certificate(row, field_reduce_row(row)).inverse
    for r in M.rows:
        print("  ".join(ring.to_str(x) for x in r))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="unirow", description="Certified computations with "
                                "unimodular rows and skew forms.")
    p.add_argument("--caps", help="JSON file with resource caps")
    p.add_argument("--seed", type=int, help="seed for randomized steps")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a session file")
    r.add_argument("session")
    r.add_argument("--emit-certs", metavar="DIR")

    v = sub.add_parser("verify", help="re-verify certificate files")
    v.add_argument("certificates", nargs="+")

    o = sub.add_parser("orbit", help="elementary orbits of Um_n(Z/m)")
    o.add_argument("m", type=int)
    o.add_argument("n", type=int)
    o.add_argument("--export", metavar="FILE")

    f = sub.add_parser("reduce-field", help="reduce a row to e1 or a form to psi over a field")
    _ring_args(f)
    g = f.add_mutually_exclusive_group(required=True)
    g.add_argument("--row")
    g.add_argument("--form")
    f.add_argument("--emit", metavar="FILE")

    s = sub.add_parser("symbol", help="Vaserstein symbol of a unimodular triple")
    _ring_args(s)
    s.add_argument("--row", required=True)
    s.add_argument("--witness")

    c = sub.add_parser("complete", help="complete a unimodular row to an invertible matrix")
    _ring_args(c)
    c.add_argument("--row", required=True)
    c.add_argument("--witness")
    c.add_argument("--rank", type=int, help="use the factorial-power completion of this rank")
    c.add_argument("--a", default="1", help="base whose rank!-th power is the first entry")
    return p


COMMANDS = {"run": cmd_run, "verify": cmd_verify, "orbit": cmd_orbit,
            "reduce-field": cmd_reduce_field, "symbol": cmd_symbol, "complete": cmd_complete}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        caps = _caps(args.caps)
        return COMMANDS[args.command](args, caps)
    except UnirowError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
