"""Pipeline operations available in sessions.

Each operation declares the kinds of its arguments (used when parsing) and
returns a :class:`StepResult` holding the value, an optional certificate,
and the post-conditions that were checked.
"""

import random
from dataclasses import dataclass, field

from ..errors import UnirowError
from ..linear import ExactMatrix, determinant, eval_word, inverse, pfaffian, whitehead_factorization
from ..rows import (UnimodularRow, apply_transvection, complete_from_certificate, embed_row,
                    factorial_completion, field_reduce_row, negate_first, square_scale,
                    vaserstein_scale)
from ..witt import (CongruenceCertificate, SkewRepresentative, eta, field_reduce_skew, stabilize,
                    symbol_inverse, symbol_power, vaserstein_compose, vaserstein_symbol,
                    witt_inverse)
from ..linear import psi


@dataclass
class StepResult:
    value: object
    cert: object = None
    checks: list = field(default_factory=list)


class ProductCertificate:
    """Claim ``eval(word) == matrix``."""

    def __init__(self, word, matrix):
        self.word = word
        self.matrix = matrix

    def verify(self):
        return eval_word(self.word, self.matrix.ring) == self.matrix


@dataclass(frozen=True)
class Operation:
    kinds: tuple
    fn: object


def _as_form(x):
    return x if isinstance(x, SkewRepresentative) else SkewRepresentative(x)


def _as_matrix(x):
    return x.matrix if isinstance(x, SkewRepresentative) else x


def _moved(pair):
    row, cert = pair
    return StepResult(row, cert, [("certificate verifies", cert.verify()),
                                  ("row is unimodular", row.verify())])


def _completion_checks(M, row):
    return [("det = 1", determinant(M).is_one()),
            ("first row matches", all(a == b for a, b in zip(M.rows[0], row.entries)))]


def op_verify_row(ctx, r):
    ok = r.verify()
    return StepResult(ok, None, [("witness pairs to 1", ok)])


def op_apply_transvection(ctx, r, i, j, lam):
    return _moved(apply_transvection(r, i, j, lam))


def op_vaserstein_scale(ctx, r, u):
    return _moved(vaserstein_scale(r, u))


def op_square_scale(ctx, r, u):
    return _moved(square_scale(r, u))


def op_negate_first(ctx, r, i):
    return _moved(negate_first(r, i))


def op_field_reduce_row(ctx, r):
    cert = field_reduce_row(r)
    return StepResult(cert.target, cert, [("certificate verifies", cert.verify())])


def op_complete(ctx, r):
    cert = field_reduce_row(r)
    M = complete_from_certificate(r, cert).inverse
    return StepResult(M, cert, _completion_checks(M, r))


def op_factorial_completion(ctx, r, rank, base):
    M = factorial_completion(r, rank, base)
    return StepResult(M, None, _completion_checks(M, r))


def op_embed_row(ctx, r, *tail):
    ring = r.ring
    B = ring.quotient(list(tail))
    r3 = UnimodularRow(B, [B.reduce(x) for x in r.entries], [B.reduce(x) for x in r.witness])
    out = embed_row(r3, list(tail), ring)
    return StepResult(out, None, [("row is unimodular", out.verify())])


def op_vaserstein_symbol(ctx, r):
    G = vaserstein_symbol(r)
    return StepResult(G, None, [("Pf = 1", G.pf.is_one())])


def _compose(printed):
    def run(ctx, r1, r2, xp, yp):
        out = vaserstein_compose(r1, r2, xp, yp, printed=printed)
        return StepResult(out, None, [("row is unimodular", out.verify()),
                                      ("symbol Pf = 1", vaserstein_symbol(out).pf.is_one())])
    return run


def op_symbol_inverse(ctx, r, ap):
    out = symbol_inverse(r, ap)
    return StepResult(out, None, [("row is unimodular", out.verify())])


def op_symbol_power(ctx, r, n, i):
    out = symbol_power(r, n, i)
    return StepResult(out, None, [("row is unimodular", out.verify())])


def op_form(ctx, M):
    G = _as_form(M)
    return StepResult(G, None, [("Pfaffian is a unit", True)])


def op_stabilize(ctx, G, t):
    G = _as_form(G)
    out = stabilize(G, t)
    return StepResult(out, None, [("Pfaffian unchanged", out.pf == G.pf)])


def op_witt_inverse(ctx, G):
    G = _as_form(G)
    out = witt_inverse(G)
    return StepResult(out, None, [("Pf(G) Pf(inverse) = 1", (out.pf * G.pf).is_one())])


def op_eta(ctx, M):
    M = _as_matrix(M)
    out = eta(M)
    return StepResult(out, None, [("Pf = det", out.pf == determinant(M))])


def op_pfaffian(ctx, M):
    return StepResult(pfaffian(_as_matrix(M)))


def op_determinant(ctx, M):
    return StepResult(determinant(_as_matrix(M)))


def op_field_reduce_skew(ctx, G):
    M = _as_matrix(G)
    word = field_reduce_skew(M)
    cert = CongruenceCertificate(M, psi(M.ring, M.nrows // 2), word)
    return StepResult(word, cert, [("congruence verifies", cert.verify())])


def op_whitehead(ctx, M):
    M = _as_matrix(M)
    Minv = inverse(M)
    word = whitehead_factorization(M, Minv)
    cert = ProductCertificate(word, M.perp(Minv))
    return StepResult(word, cert, [("word evaluates to M ⊥ M^-1", cert.verify())])


def op_random_row(ctx, n):
    if ctx.seed is None:
        raise UnirowError("random_row is a randomized step; supply a seed")
    ring = ctx.ring
    rng = random.Random(f"{ctx.seed}:{ctx.step}")
    for _ in range(1000):
        ents = [ring.random_element(rng) for _ in range(n)]
        try:
            row = UnimodularRow(ring, ents)
        except UnirowError:
            continue
        return StepResult(row, None, [("row is unimodular", row.verify())])
    raise UnirowError("no unimodular row sampled")


OPERATIONS = {
    "verify_row": Operation(("row",), op_verify_row),
    "apply_transvection": Operation(("row", "int", "int", "expr"), op_apply_transvection),
    "vaserstein_scale": Operation(("row", "expr"), op_vaserstein_scale),
    "square_scale": Operation(("row", "expr"), op_square_scale),
    "negate_first": Operation(("row", "expr"), op_negate_first),
    "field_reduce_row": Operation(("row",), op_field_reduce_row),
    "complete": Operation(("row",), op_complete),
    "factorial_completion": Operation(("row", "int", "expr"), op_factorial_completion),
    "embed_row": Operation(("row", "expr*"), op_embed_row),
    "vaserstein_symbol": Operation(("row",), op_vaserstein_symbol),
    "vaserstein_compose": Operation(("row", "row", "expr", "expr"), _compose(False)),
    "vaserstein_compose_printed": Operation(("row", "row", "expr", "expr"), _compose(True)),
    "symbol_inverse": Operation(("row", "expr"), op_symbol_inverse),
    "symbol_power": Operation(("row", "int", "expr"), op_symbol_power),
    "form": Operation(("matrix",), op_form),
    "stabilize": Operation(("form", "int"), op_stabilize),
    "witt_inverse": Operation(("form",), op_witt_inverse),
    "eta": Operation(("matrix",), op_eta),
    "pfaffian": Operation(("matrix",), op_pfaffian),
    "determinant": Operation(("matrix",), op_determinant),
    "field_reduce_skew": Operation(("form",), op_field_reduce_skew),
    "whitehead": Operation(("matrix",), op_whitehead),
    "random_row": Operation(("int",), op_random_row),
}

# assertion name -> whether it takes '== <expr>'
ASSERTIONS = {
    "unimodular": False,
    "certified": False,
    "holds": False,
    "equal": False,
    "pf": True,
    "det": True,
}
