"""Skew forms, the maps eta and zeta, and the Vaserstein symbol.

Equality in the elementary symplectic Witt group is never decided here.
What the module offers is exact invariants (Pfaffians), explicit
congruence certificates where a construction is known, and reductions to
the standard form over fields.
"""

from math import comb

from .errors import (ComposeNotUnimodular, DimensionMismatch, FirstCoordinateMismatch,
                     MinusOneNotSquare, ModularInverseInvalid, NotAField, NotAUnit,
                     NotInIdeal, NotInverseModulo, NotInvertible, NotSkew, NotUnimodular,
                     OddSize, PfaffianNotOne, UnirowError, WitnessInvalid)
from .linear import (ElementaryWord, ExactMatrix, determinant, eval_word, h_matrix, inverse,
                     pfaffian, psi, sigma)
from .rows import UnimodularRow


class SkewRepresentative:
    """An invertible skew matrix with its Pfaffian and stabilization level."""

    __slots__ = ("matrix", "pf", "level")

    def __init__(self, matrix, level=0):
        if not matrix.is_square():
            raise NotSkew("skew forms are square")
        if matrix.nrows % 2:
            raise OddSize(f"skew form of odd size {matrix.nrows}")
        if not matrix.is_skew():
            raise NotSkew("matrix is not skew-symmetric")
        pf = pfaffian(matrix)
        try:
            matrix.ring.invert_unit(pf)
        except NotAUnit as exc:
            raise NotInvertible(f"Pfaffian {pf} is not a unit") from exc
        self.matrix = matrix
        self.pf = pf
        self.level = level

    @property
    def ring(self):
        return self.matrix.ring

    @property
    def size(self):
        return self.matrix.nrows

    def in_s(self):
        """Pfaffian exactly 1."""
        return self.pf.is_one()

    def __eq__(self, other):
        return isinstance(other, SkewRepresentative) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SkewRepresentative(size={self.size}, pf={self.pf}, level={self.level})"


class Triple:
    """A free module of rank 2n with two invertible skew forms."""

    __slots__ = ("f0", "f1")

    def __init__(self, f0, f1):
        f0 = f0 if isinstance(f0, SkewRepresentative) else SkewRepresentative(f0)
        f1 = f1 if isinstance(f1, SkewRepresentative) else SkewRepresentative(f1)
        if f0.size != f1.size:
            raise DimensionMismatch("forms of a triple share their size")
        self.f0 = f0
        self.f1 = f1

    @property
    def size(self):
        return self.f0.size


class CongruenceCertificate:
    """Claim ``E^t * G * E == G2`` with ``E`` the product of ``word``."""

    __slots__ = ("G", "G2", "word")

    def __init__(self, G, G2, word):
        self.G = G
        self.G2 = G2
        self.word = word

    def verify(self):
        E = eval_word(self.word, self.G.ring)
        return E.transpose() * self.G * E == self.G2


def _mat(G):
    return G.matrix if isinstance(G, SkewRepresentative) else G


def stabilize(G, t):
    if t < 0:
        raise DimensionMismatch("stabilization level must be non-negative")
    if t == 0:
        return G
    return SkewRepresentative(G.matrix.perp(psi(G.ring, t)), G.level + t)


def pad_to(G, size):
    """Stabilize ``G`` up to ``size`` (for comparing representatives)."""
    extra = size - G.size
    if extra < 0 or extra % 2:
        raise DimensionMismatch(f"cannot pad size {G.size} to {size}")
    return stabilize(G, extra // 2)


def eta(M):
    """``M^t psi M`` (even size) or ``(M ⊥ 1)^t psi (M ⊥ 1)`` (odd size)."""
    ring = M.ring
    if not M.is_square():
        raise DimensionMismatch("eta needs a square matrix")
    try:
        ring.invert_unit(determinant(M))
    except NotAUnit as exc:
        raise NotInvertible("eta needs an invertible matrix") from exc
    if M.nrows % 2:
        M = M.perp(ExactMatrix.identity(ring, 1))
    P = psi(ring, M.nrows // 2)
    return SkewRepresentative(M.transpose() * P * M)


def witt_inverse(G):
    """``sigma G^-1 sigma^t``."""
    ring = G.ring
    S = sigma(ring, G.size // 2)
    return SkewRepresentative(S * inverse(G.matrix) * S.transpose())


def zeta(triple, g):
    """``(g^t f1 g) ⊥ sigma (g^t f0 g)^-1 sigma^t``."""
    f0, f1 = triple.f0.matrix, triple.f1.matrix
    if g.shape != f0.shape:
        raise DimensionMismatch("change of basis has the wrong size")
    ring = g.ring
    S = sigma(ring, f0.nrows // 2)
    gt = g.transpose()
    left = gt * f1 * g
    right = S * inverse(gt * f0 * g) * S.transpose()
    return SkewRepresentative(left.perp(right))


def zeta_minus(triple, g):
    """The other normalization: ``(g^t f1 g) ⊥ (-g^t f0 g)^-1``."""
    f0, f1 = triple.f0.matrix, triple.f1.matrix
    gt = g.transpose()
    return SkewRepresentative((gt * f1 * g).perp(inverse(-(gt * f0 * g))))


def change_of_basis(g, h, variant="sigma"):
    """The matrix ``a`` relating the outputs for bases ``g`` and ``h``.

    ``sigma``: h^-1 g ⊥ sigma^t (g^-1 h)^t sigma^t.
    ``minus``: h^-1 g ⊥ (g^-1 h)^t.
    """
    ring = g.ring
    left = inverse(h) * g
    inner = (inverse(g) * h).transpose()
    if variant == "minus":
        return left.perp(inner)
    S = sigma(ring, g.nrows // 2).transpose()
    return left.perp(S * inner * S)


def change_of_basis_identity(triple, g, h, variant="sigma"):
    """Whether ``a^t * Z(h) * a == Z(g)`` holds exactly.

    ``variant`` picks the normalization on both sides: ``sigma`` uses
    :func:`zeta`, ``minus`` uses :func:`zeta_minus`.  ``printed`` takes the
    left side with the minus normalization and the right side and ``a``
    with sigma; it is exact only for forms of size 2.
    """
    if variant == "sigma":
        lhs, rhs, a = zeta(triple, g), zeta(triple, h), change_of_basis(g, h, "sigma")
    elif variant == "minus":
        lhs, rhs, a = zeta_minus(triple, g), zeta_minus(triple, h), change_of_basis(g, h, "minus")
    elif variant == "printed":
        lhs, rhs, a = zeta_minus(triple, g), zeta(triple, h), change_of_basis(g, h, "sigma")
    else:
        raise UnirowError(f"unknown variant {variant!r}")
    return a.transpose() * rhs.matrix * a == lhs.matrix


def h_conjugation_check(m):
    """``[[m^-t, 0], [0, sigma m sigma]] h [[m^-1, 0], [0, sigma^t m^t sigma^t]] == h``."""
    ring = m.ring
    if not m.is_square() or m.nrows % 2:
        raise DimensionMismatch("m must be square of even size")
    n = m.nrows // 2
    mi = inverse(m)
    S = sigma(ring, n)
    St = S.transpose()
    left = mi.transpose().perp(S * m * S)
    right = mi.perp(St * m.transpose() * St)
    H = h_matrix(ring, n)
    return left * H * right == H


# ----------------------------------------------------------------------
# the Vaserstein symbol

def _symbol_matrix(ring, v, w):
    v0, v1, v2 = v
    w0, w1, w2 = w
    z = ring.zero
    return ExactMatrix(ring, [[z, v0, v1, v2],
                              [-v0, z, w2, -w1],
                              [-v1, -w2, z, w0],
                              [-v2, w1, -w0, z]])


def vaserstein_symbol(v, w=None):
    """The 4x4 skew matrix of a unimodular triple; its Pfaffian is ``v . w = 1``."""
    ring = v.ring
    if len(v) != 3:
        raise DimensionMismatch("the symbol is defined for rows of length 3")
    w = v.witness if w is None else tuple(ring.element(x) for x in w)
    dot = sum((a * b for a, b in zip(v.entries, w)), ring.zero)
    if not dot.is_one():
        raise WitnessInvalid(f"v . w = {dot}, not 1")
    G = SkewRepresentative(_symbol_matrix(ring, v.entries, w))
    if not G.pf.is_one():
        raise UnirowError("internal error: symbol Pfaffian is not 1")
    return G


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def witness_change_certificate(v, w, w2):
    """Congruence between the symbols of ``v`` for witnesses ``w`` and ``w2``.

    With k = w2 - w (so v . k = 0) and x = w × k one has x × v = k, and
    E = I + e_1 (0, x)^t carries V(v, w) to V(v, w2).
    """
    ring = v.ring
    G = vaserstein_symbol(v, w)
    G2 = vaserstein_symbol(v, w2)
    w = [ring.element(t) for t in w]
    k = [ring.element(b) - a for a, b in zip(w, w2)]
    x = _cross(w, k)
    word = ElementaryWord(4, [(1, j + 2, x[j]) for j in range(3) if not x[j].is_zero()])
    cert = CongruenceCertificate(G.matrix, G2.matrix, word)
    if not cert.verify():
        raise UnirowError("internal error: witness change certificate failed")
    return cert


def vaserstein_compose(r1, r2, xp, yp, printed=False):
    """Vaserstein's rule: ``(a, (b, c) M)`` with ``M = [[x, y], [-y', x']]``.

    ``r2 = (a, x, y)``; ``x x' + y y'`` must be 1 modulo ``a``.  With
    ``printed=True`` the matrix is ``[[x, y], [-y', x]]``, which only works
    when ``x^2 + y y'`` happens to be 1 modulo ``a``; otherwise the result
    is tested for unimodularity and ComposeNotUnimodular is raised.
    """
    ring = r1.ring
    a, b, c = r1.entries
    a2, x, y = r2.entries
    if a != a2:
        raise FirstCoordinateMismatch(f"{a} vs {a2}")
    xp, yp = ring.element(xp), ring.element(yp)
    al, be, ga = r1.witness
    if not r1.verify():
        raise WitnessInvalid("first row witness is invalid")
    if printed:
        row = [a, b * x - c * yp, b * y + c * x]
        try:
            (s,) = ring.ideal_cofactors([a], x * x + y * yp - 1)
        except NotInIdeal:
            try:
                return UnimodularRow.checked(ring, row)
            except NotUnimodular as exc:
                raise ComposeNotUnimodular(f"{row[1]}, {row[2]} with {a} is not unimodular") from exc
        xp = x
    else:
        try:
            (s,) = ring.ideal_cofactors([a], x * xp + y * yp - 1)
        except NotInIdeal as exc:
            raise ModularInverseInvalid(f"x x' + y y' is not 1 modulo {a}") from exc
    out = UnimodularRow(ring, [a, b * x - c * yp, b * y + c * xp],
                        [al - s + s * a * al, xp * be - y * ga, yp * be + x * ga])
    if not out.verify():
        raise UnirowError("internal error: composed witness failed")
    return out


def symbol_inverse(r, ap):
    """``(-a', b, c)`` where ``a a' = 1`` modulo ``(b, c)``."""
    ring = r.ring
    a, b, c = r.entries
    ap = ring.element(ap)
    try:
        be, ga = ring.ideal_cofactors([b, c], a * ap - 1)
    except NotInIdeal as exc:
        raise NotInverseModulo(f"{a}*{ap} is not 1 modulo ({b}, {c})") from exc
    out = UnimodularRow(ring, [-ap, b, c], [-a, -be, -ga])
    if not out.verify():
        raise UnirowError("internal error: inverse witness failed")
    return out


def symbol_power(r, n, i):
    """``(a^n, b, c)`` with witness ``(x^n, y g, z g)``.

    From ``a x = 1 - t`` with ``t = b y + c z``: ``(a x)^n = 1 - t g`` where
    ``g = sum_{k>=1} C(n,k) (-1)^(k+1) t^(k-1)``.
    """
    ring = r.ring
    i = ring.element(i)
    if i * i != -ring.one:
        raise MinusOneNotSquare(f"{i}^2 is not -1")
    if n < 1:
        raise UnirowError("power must be positive")
    if not r.verify():
        raise WitnessInvalid("row witness is invalid")
    a, b, c = r.entries
    x, y, z = r.witness
    t = b * y + c * z
    g = ring.zero
    tp = ring.one
    for k in range(1, n + 1):
        term = tp * comb(n, k)
        g = g + term if k % 2 == 1 else g - term
        tp = tp * t
    out = UnimodularRow(ring, [a ** n, b, c], [x ** n, y * g, z * g])
    if not out.verify():
        raise UnirowError("internal error: power witness failed")
    return out


# ----------------------------------------------------------------------
# reduction over fields

def _field_check(G):
    ring = G.ring
    if ring.is_field():
        return
    if getattr(ring, "is_domain", False) and all(ring.is_constant(x) for r in G.rows for x in r):
        return
    raise NotAField("skew reduction needs field entries")


def symplectic_basis(G):
    """Columns ``e1, f1, e2, f2, ...`` with ``P^t G P = psi`` (skew Gram-Schmidt)."""
    ring = G.ring
    n = G.nrows
    rows = G.rows

    def B(u, v):
        acc = ring.zero
        for i in range(n):
            if u[i].is_zero():
                continue
            for j in range(n):
                if not v[j].is_zero() and not rows[i][j].is_zero():
                    acc = acc + u[i] * rows[i][j] * v[j]
        return acc

    pool = [[ring.one if i == j else ring.zero for i in range(n)] for j in range(n)]
    cols = []
    while pool:
        e = pool.pop(0)
        k = next((k for k, f in enumerate(pool) if not B(e, f).is_zero()), None)
        if k is None:
            raise NotInvertible("skew form is degenerate")
        f = pool.pop(k)
        inv = ring.invert_unit(B(e, f))
        f = [t * inv for t in f]
        new = []
        for zv in pool:
            bf, be = B(zv, f), B(zv, e)
            new.append([zz - bf * ee + be * ff for zz, ee, ff in zip(zv, e, f)])
        pool = new
        cols += [e, f]
    return ExactMatrix(ring, [[cols[j][i] for j in range(n)] for i in range(n)])


def sl_to_word(P):
    """Elementary word evaluating to ``P`` (``det P = 1``, field entries)."""
    ring = P.ring
    n = P.nrows
    M = [list(r) for r in P.rows]
    ops = []

    def left(i, j, lam):
        # row i += lam * row j
        if lam.is_zero():
            return
        ops.append((i + 1, j + 1, lam))
        M[i] = [x + lam * y for x, y in zip(M[i], M[j])]

    for k in range(n):
        if M[k][k].is_zero():
            piv = next((i for i in range(n) if i != k and not M[i][k].is_zero()
                        and (i > k or k == n - 1)), None)
            if piv is None:
                raise NotInvertible("matrix is singular")
            left(k, piv, ring.one)
        p = M[k][k]
        if not p.is_one():
            if k == n - 1:
                raise UnirowError(f"determinant is {p}, not 1")
            i = k + 1
            left(i, k, (ring.one - p - M[i][k]) * ring.invert_unit(p))
            left(k, i, ring.one)
        for i in range(n):
            if i != k:
                left(i, k, -M[i][k])
    # L_m ... L_1 P = I, so P = L_1^-1 ... L_m^-1
    return ElementaryWord(n, [(i, j, -lam) for i, j, lam in ops])


def field_reduce_skew(G):
    """Word ``E`` with ``E^t G E = psi`` for a Pfaffian-one form over a field."""
    M = _mat(G)
    _field_check(M)
    if not M.is_skew():
        raise NotSkew("matrix is not skew-symmetric")
    if not pfaffian(M).is_one():
        raise PfaffianNotOne(f"Pfaffian is {pfaffian(M)}")
    P = symplectic_basis(M)
    word = sl_to_word(P)
    cert = CongruenceCertificate(M, psi(M.ring, M.nrows // 2), word)
    if not cert.verify():
        raise UnirowError("internal error: skew reduction failed")
    return word


def field_congruence(G, G2):
    """Certificate ``E^t G E = G2`` for two Pfaffian-one forms over a field."""
    A, B = _mat(G), _mat(G2)
    if A.shape != B.shape:
        raise DimensionMismatch("forms must have the same size")
    word = field_reduce_skew(A) + field_reduce_skew(B).inverse()
    cert = CongruenceCertificate(A, B, word)
    if not cert.verify():
        raise UnirowError("internal error: congruence word failed")
    return cert
