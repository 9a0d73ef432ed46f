"""Unimodular rows and certified moves in their elementary orbits.

A row always travels with a witness ``b`` satisfying ``sum(a_i * b_i) = 1``.
When a transvection acts on the row from the right, the witness moves by
the inverse transpose, so it stays exact without any ideal computation.

Every move returns an :class:`OrbitCertificate`, a word whose product
carries the source row to the target row.  Certificates are checked before
they leave this module.
"""

from collections import namedtuple
from math import factorial

from .errors import (CertificateMismatch, IndexOutOfRange, LiftFailed, MinusOneNotSquare,
                     NotAField, NotAUnit, NotComaximal, NotInIdeal, NotUnimodular,
                     NotUnitModulo, QuotientConstructionFailed, ResourceExceeded,
                     UnirowError, UnsupportedRank, WitnessInvalid, ZeroRow, DimensionMismatch)
from .linear import ElementaryWord, ExactMatrix, determinant, eval_word, whitehead_factorization


class UnimodularRow:
    """Entries ``a_1..a_n`` with a witness ``b_1..b_n``.

    The constructor does not insist that the witness is valid (``verify``
    answers that question); ``UnimodularRow.checked`` does.  Passing
    ``witness=None`` asks the ring for one.
    """

    __slots__ = ("ring", "entries", "witness")

    def __init__(self, ring, entries, witness=None):
        entries = tuple(ring.element(x) for x in entries)
        if len(entries) < 1:
            raise DimensionMismatch("rows need at least one entry")
        if witness is None:
            witness = ring.one_combination(list(entries))
        witness = tuple(ring.element(x) for x in witness)
        if len(witness) != len(entries):
            raise DimensionMismatch("witness length differs from row length")
        self.ring = ring
        self.entries = entries
        self.witness = witness

    @classmethod
    def checked(cls, ring, entries, witness=None):
        r = cls(ring, entries, witness)
        if not r.verify():
            raise WitnessInvalid(f"witness does not certify {r}")
        return r

    @classmethod
    def e1(cls, ring, n):
        e = [ring.one] + [ring.zero] * (n - 1)
        return cls(ring, e, e)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def pairing(self):
        acc = self.ring.zero
        for a, b in zip(self.entries, self.witness):
            acc = acc + a * b
        return acc

    def verify(self):
        return self.pairing().is_one()

    def same_entries(self, other):
        return len(self) == len(other) and all(a == b for a, b in zip(self.entries, other.entries))

    def __eq__(self, other):
        return (isinstance(other, UnimodularRow) and self.same_entries(other)
                and all(a == b for a, b in zip(self.witness, other.witness)))

    def __hash__(self):
        return hash(tuple(self.entries))

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.entries) + ")"

    def __repr__(self):
        w = ", ".join(str(b) for b in self.witness)
        return f"UnimodularRow{self} witness ({w})"


class OrbitCertificate:
    """Claim ``source * eval(word) == target`` on entries."""

    __slots__ = ("source", "target", "word")

    def __init__(self, source, target, word):
        if word.n != len(source) or len(source) != len(target):
            raise DimensionMismatch("certificate sizes disagree")
        self.source = source
        self.target = target
        self.word = word

    @property
    def ring(self):
        return self.source.ring

    def verify(self):
        """Recheck by a full matrix product (independent of the row action)."""
        ring = self.ring
        M = eval_word(self.word, ring)
        src = ExactMatrix(ring, [list(self.source.entries)])
        out = (src * M).rows[0]
        return all(a == b for a, b in zip(out, self.target.entries))

    def then(self, other):
        """Chain with a certificate starting where this one ends."""
        if not self.target.same_entries(other.source):
            raise CertificateMismatch("certificates do not chain")
        return OrbitCertificate(self.source, other.target, self.word + other.word)

    def inverse(self):
        return OrbitCertificate(self.target, self.source, self.word.inverse())

    def __repr__(self):
        return f"OrbitCertificate({self.source} -> {self.target}, {len(self.word)} generators)"


Completion = namedtuple("Completion", "matrix inverse")


def verify_row(r):
    return r.verify()


def _checked(cert):
    if not cert.verify():
        raise UnirowError("internal error: produced certificate failed verification")
    return cert


def _move(row, gens):
    """Act by transvections, moving the witness along."""
    a = list(row.entries)
    b = list(row.witness)
    n = len(a)
    for i, j, lam in gens:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise IndexOutOfRange(f"E_{i}{j} on a row of length {n}")
        if lam.is_zero():
            continue
        a[j - 1] = a[j - 1] + lam * a[i - 1]
        b[i - 1] = b[i - 1] - lam * b[j - 1]
    return UnimodularRow(row.ring, a, b)


def apply_word(row, word):
    """Row and certificate for ``row * eval(word)``."""
    target = _move(row, word.gens)
    return target, _checked(OrbitCertificate(row, target, word))


def apply_transvection(r, i, j, lam):
    lam = r.ring.element(lam)
    n = len(r)
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise IndexOutOfRange(f"E_{i}{j} on a row of length {n}")
    return apply_word(r, ElementaryWord(n, [(i, j, lam)]))


def _quotient(ring, gens):
    try:
        return ring.quotient(gens)
    except ResourceExceeded:
        raise
    except UnirowError as exc:
        raise QuotientConstructionFailed(str(exc)) from exc


def _correct_to(row, target_entries, modulus_index=1):
    """Transvections from position 1 fixing positions 2.. to ``target_entries``.

    The differences must be multiples of the first entry.
    """
    ring = row.ring
    a1 = row.entries[0]
    gens = []
    for j in range(1, len(row)):
        diff = ring.element(target_entries[j]) - row.entries[j]
        if diff.is_zero():
            continue
        try:
            (mu,) = ring.ideal_cofactors([a1], diff)
        except NotInIdeal as exc:
            raise UnirowError(f"position {j + 1} differs from the target by a non-multiple "
                              f"of {a1}") from exc
        gens.append((1, j + 1, mu))
    return gens


def lift_e2_mod_action(r, w2, target=None):
    """Act on positions 2, 3 of ``r = (a1, a2, a3)`` by a word over ``R/(a1)``.

    Each coefficient is lifted to ``R``.  When ``target`` is given (a row
    agreeing with the result modulo ``a1``), the leftover multiples of
    ``a1`` are cleared with transvections from position 1.
    """
    ring = r.ring
    if len(r) != 3:
        raise DimensionMismatch("lift_e2_mod_action works on rows of length 3")
    if w2.n != 2:
        raise DimensionMismatch("the quotient word must have size 2")
    _quotient(ring, [r.entries[0]])
    gens = [(i + 1, j + 1, ring.lift(lam)) for i, j, lam in w2.gens]
    mid = _move(r, gens)
    if target is not None:
        gens += _correct_to(mid, target)
    out, cert = apply_word(r, ElementaryWord(3, [g for g in gens if not g[2].is_zero()]))
    return out, cert


def _unit_mod(ring, a, u, q=None):
    """``(q, s)`` with ``u*q == 1 + a*s`` in ``ring``."""
    u = ring.element(u)
    if q is None:
        try:
            c = ring.one_combination([a, u])
        except NotUnimodular as exc:
            raise NotUnitModulo(f"{u} is not a unit modulo {a}") from exc
        q = c[1]
        s = -c[0]
        return q, s
    q = ring.element(q)
    try:
        (s,) = ring.ideal_cofactors([a], u * q - 1)
    except NotInIdeal as exc:
        raise NotUnitModulo(f"{u}*{q} is not 1 modulo {a}") from exc
    return q, s


def square_scale(r, u, q=None):
    """Certified move ``(a, u*b, u*c) -> (a, b, u^2*c)``.

    ``r = (a, b, c)`` carries a witness; the source row of the returned
    certificate is ``(a, u*b, u*c)`` with a witness derived from it.
    """
    ring = r.ring
    if len(r) != 3:
        raise DimensionMismatch("square_scale works on rows of length 3")
    a, b, c = r.entries
    x, y, z = r.witness
    q, s = _unit_mod(ring, a, u, q)
    u = ring.element(u)
    if u.is_one() and q.is_one():
        return r, _checked(OrbitCertificate(r, r, ElementaryWord(3)))
    source = UnimodularRow(ring, [a, u * b, u * c], [x - s + a * s * x, q * y, q * z])
    if not source.verify():
        raise WitnessInvalid("input row witness is invalid")
    Q = _quotient(ring, [a])
    W = whitehead_factorization(ExactMatrix(Q, [[Q.reduce(q)]]), ExactMatrix(Q, [[Q.reduce(u)]]))
    return lift_e2_mod_action(source, W, target=[a, b, u * u * c])


def _koszul_gens(ring, witness, lam):
    """Word for ``I + lam * v * w^t`` with ``v`` the witness and ``w = (0, -z, y)``.

    It equals A B A^-1 B^-1 C with A = E21(y) E31(z), B = E12(-lam z) E13(lam y)
    and C = E12(-lam x z) E13(lam x y); the identity holds for any x, y, z.
    """
    x, y, z = witness
    gens = [(2, 1, y), (3, 1, z),
            (1, 2, -lam * z), (1, 3, lam * y),
            (2, 1, -y), (3, 1, -z),
            (1, 2, lam * z), (1, 3, -lam * y),
            (1, 2, -lam * x * z), (1, 3, lam * x * y)]
    return [g for g in gens if not g[2].is_zero()]


def vaserstein_scale(r, u):
    """Certified move ``(a1, a2, a3) -> (a1, u*a2, u*a3)`` for ``u`` a unit mod ``a1``.

    The 2x2 state S = [[a2, a3], [-z, y]] (with (x, y, z) the witness) has
    determinant 1 modulo a1.  Left multiplication of S by diag(u, q) gives
    the desired first row; diag(u, q) is elementary over R/(a1).  A left
    E12 moves the row by a Koszul transvection of R^3, a left E21 only
    changes the witness.
    """
    ring = r.ring
    if len(r) != 3:
        raise DimensionMismatch("vaserstein_scale works on rows of length 3")
    if not r.verify():
        raise WitnessInvalid("input row witness is invalid")
    a = r.entries[0]
    u = ring.element(u)
    try:
        q, _ = _unit_mod(ring, a, u)
    except NotUnitModulo as exc:
        raise NotComaximal(str(exc)) from exc
    if u.is_one():
        return r, _checked(OrbitCertificate(r, r, ElementaryWord(3)))
    Q = _quotient(ring, [a])
    W = whitehead_factorization(ExactMatrix(Q, [[Q.reduce(u)]]), ExactMatrix(Q, [[Q.reduce(q)]]))
    gens = []
    cur = r
    for i, j, lam in reversed(W.gens):
        lam = ring.lift(lam)
        if lam.is_zero():
            continue
        if (i, j) == (1, 2):
            step = _koszul_gens(ring, cur.witness, lam)
            cur = _move(cur, step)
            gens += step
        else:
            x, y, z = cur.witness
            _, B, C = cur.entries
            cur = UnimodularRow(ring, cur.entries, [x, y + lam * C, z - lam * B])
    gens += _correct_to(cur, [a, u * r.entries[1], u * r.entries[2]])
    return apply_word(r, ElementaryWord(3, gens))


def _rotation13(ring, sign=1):
    one = ring.one if sign == 1 else -ring.one
    return ElementaryWord(3, [(1, 3, one), (3, 1, -one), (1, 3, one)])


def negate_first(r, i):
    """Certified move ``(a, b, c) -> (-a, b, c)`` when ``i^2 = -1``.

    Route: rotate to (-c, b, a), scale by i to (-c, ib, ia), trade the
    scaling for a square to reach (-c, b, -a), rotate back.
    """
    ring = r.ring
    i = ring.element(i)
    if i * i != -ring.one:
        raise MinusOneNotSquare(f"{i}^2 is not -1")
    if not r.verify():
        raise WitnessInvalid("input row witness is invalid")
    rot = _rotation13(ring)
    r1, c1 = apply_word(r, rot)
    r2, c2 = vaserstein_scale(r1, i)
    r3, c3 = square_scale(r1, i, -i)
    # square_scale's source has the same entries as r2
    c3 = OrbitCertificate(r2, r3, c3.word)
    r4, c4 = apply_word(r3, rot.inverse())
    cert = c1.then(c2).then(_checked(c3)).then(c4)
    return r4, _checked(cert)


def _is_field_row(r):
    ring = r.ring
    if ring.is_field():
        return True
    return getattr(ring, "is_domain", False) and all(ring.is_constant(a) for a in r.entries)


def field_reduce_row(r):
    """Certificate from ``r`` to ``e1`` over a field (at most n + 1 generators)."""
    ring = r.ring
    if not _is_field_row(r):
        raise NotAField("field_reduce_row needs a field (or constant entries over a domain)")
    a = list(r.entries)
    n = len(a)
    if all(x.is_zero() for x in a):
        raise ZeroRow("the zero row is not unimodular")
    gens = []

    def push(i, j, lam):
        gens.append((i, j, lam))
        a[j - 1] = a[j - 1] + lam * a[i - 1]

    if not a[0].is_one():
        k = next((k for k in range(1, n) if not a[k].is_zero()), None)
        if k is None:
            if n == 1:
                raise NotAField("a single unit entry other than 1 cannot be moved")
            push(1, 2, ring.one)
            k = 1
        push(k + 1, 1, (ring.one - a[0]) * ring.invert_unit(a[k]))
    for j in range(2, n + 1):
        if not a[j - 1].is_zero():
            push(1, j, -a[j - 1])
    if r.verify():
        target = _move(r, gens)
    else:
        e = [ring.one] + [ring.zero] * (n - 1)
        target = UnimodularRow(ring, e, e)
    return _checked(OrbitCertificate(r, target, ElementaryWord(n, gens)))


def complete_from_certificate(r, cert):
    """``(M, M^-1)`` with ``r * M = e1``; the first row of ``M^-1`` is ``r``."""
    ring = r.ring
    e1 = [ring.one] + [ring.zero] * (len(r) - 1)
    if not cert.source.same_entries(r):
        raise CertificateMismatch("certificate does not start at this row")
    if not all(a == b for a, b in zip(cert.target.entries, e1)):
        raise CertificateMismatch("certificate does not end at e1")
    if not cert.verify():
        raise CertificateMismatch("certificate fails verification")
    M = eval_word(cert.word, ring)
    Minv = eval_word(cert.word.inverse(), ring)
    return Completion(M, Minv)


# ----------------------------------------------------------------------
# completion of rows whose first entry is a factorial power

def _complete_square(ring, a, b, c, u, v, w):
    """3x3 matrix with first row (a^2, b, c) and det (a*u + b*v + c*w)^2."""
    return ExactMatrix(ring, [
        [a * a, b, c],
        [c - 2 * a * v, u + v * w, -v * v],
        [-b - 2 * a * w, w * w, u - v * w],
    ])


def _finish(ring, M, row):
    if not determinant(M).is_one():
        return None
    if not all(x == y for x, y in zip(M.rows[0], row.entries)):
        return None
    return M


def factorial_completion(row, r, base):
    """Square matrix of size r+1, determinant 1, first row ``row``.

    ``row[0]`` must equal ``base ** r!``.  Ranks 1 and 2 use closed forms;
    rank 3 tries a bordering of the rank 2 form and falls back to row
    reduction over fields.
    """
    ring = row.ring
    base = ring.element(base)
    if len(row) != r + 1:
        raise DimensionMismatch(f"rank {r} needs a row of length {r + 1}")
    if base ** factorial(r) != row.entries[0]:
        raise UnirowError(f"first entry is not {base}^{factorial(r)}")
    if not row.verify():
        row = UnimodularRow(ring, row.entries)  # raises NotUnimodular when there is none
    ents = row.entries
    wit = row.witness
    if r == 1:
        M = ExactMatrix(ring, [[ents[0], ents[1]], [-wit[1], wit[0]]])
    elif r == 2:
        M = _complete_square(ring, base, ents[1], ents[2], base * wit[0], wit[1], wit[2])
    elif r == 3:
        M = _complete_rank3(row, base)
    elif _is_field_row(row):
        M = complete_from_certificate(row, field_reduce_row(row)).inverse
    else:
        raise UnsupportedRank(f"rank {r} is only handled over fields")
    out = _finish(ring, M, row) if M is not None else None
    if out is None:
        raise UnsupportedRank(f"no completion found for {row}")
    return out


def _complete_rank3(row, base):
    """Border a rank 2 completion of ``(a^6, b, c)`` taken modulo the fourth entry.

    With M the 3x3 form, det M = (1 - d*s)^2.  For a column ``col`` whose
    first entry is d, det [[M, col], [rho, z]] = z*det M - rho*adj(M)*col, so
    a solution of ``z*det M - rho*(adj(M) col) = 1`` finishes the job.  A few
    small columns are tried; the first entry of col is pinned by the row.
    """
    ring = row.ring
    cube = base ** 3
    p = row.witness[0]
    one, zero = ring.one, ring.zero
    tails = [(zero, zero), (one, zero), (zero, one), (one, one), (one, -one)]
    for k in (3, 2, 1):
        rest = [t for t in (1, 2, 3) if t != k]
        b, c, d = row.entries[rest[0]], row.entries[rest[1]], row.entries[k]
        q, rr = row.witness[rest[0]], row.witness[rest[1]]
        M = _complete_square(ring, cube, b, c, cube * p, q, rr)
        A = _adjugate3(M)
        dm = determinant(M)
        for g2, g3 in tails:
            col = [d, g2, g3]
            Acol = [A[i][0] * col[0] + A[i][1] * col[1] + A[i][2] * col[2] for i in range(3)]
            try:
                coef = ring.ideal_cofactors([dm] + Acol, one)
            except (NotInIdeal, ResourceExceeded):
                continue
            z = coef[0]
            rho = [-x for x in coef[1:]]
            N = [list(M.rows[i]) + [col[i]] for i in range(3)] + [rho + [z]]
            perm = [0, rest[0], rest[1], k]
            Nm = ExactMatrix(ring, [[rw[perm.index(j)] for j in range(4)] for rw in N])
            if determinant(Nm) == -one:
                Nm = ExactMatrix(ring, Nm.to_lists()[:3] + [[-x for x in Nm.row(3)]])
            if _finish(ring, Nm, row) is not None:
                return Nm
    if _is_field_row(row):
        cert = field_reduce_row(row)
        return complete_from_certificate(row, cert).inverse
    return None


def _adjugate3(M):
    m = M.rows
    A = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != j]
            c = [x for x in range(3) if x != i]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            A[i][j] = minor if (i + j) % 2 == 0 else -minor
    return A


# ----------------------------------------------------------------------

def embed_row(r3, tail, parent):
    """Lift a row over ``B = parent/(tail)`` to ``(a1, a2, a3, tail...)`` over ``parent``."""
    tail = [parent.element(t) for t in tail]
    B = r3.ring
    if getattr(B, "zero_ring", False):
        raise LiftFailed("the quotient ring is zero; the row set over it is degenerate")
    ents = [parent.lift(x) for x in r3.entries]
    wit = [parent.lift(x) for x in r3.witness]
    acc = parent.zero
    for x, y in zip(ents, wit):
        acc = acc + x * y
    try:
        cs = parent.ideal_cofactors(tail, acc - 1)
    except (NotInIdeal, ResourceExceeded) as exc:
        raise LiftFailed(f"could not express the lifted pairing through the tail: {exc}") from exc
    out = UnimodularRow(parent, ents + tail, wit + [-c for c in cs])
    if not out.verify():
        raise LiftFailed("lifted witness failed verification")
    return out
