"""Dense exact matrices, transvection words and the standard forms.

Indices of transvections are 1-based, as in ``E_ij(l) = I + l*e_ij``.  A
word ``[g1, g2, ...]`` stands for the ordered product ``g1 * g2 * ...``; a
row vector ``r`` is acted on from the right, so ``r * E_ij(l)`` adds
``l * r_i`` to ``r_j``.
"""

from .errors import (ContextMismatch, DimensionMismatch, IndexOutOfRange, NotInverse,
                     NotInvertible, NotSkew, NotSquare, OddSize, ResourceExceeded, UnirowError,
                     NotAUnit)
from .ring.groebner import DEFAULT_CAPS


class ExactMatrix:
    """An immutable matrix of ring elements."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        rows = tuple(tuple(ring.element(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have positive dimensions")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width

    # -- constructors --------------------------------------------------
    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one, ring.zero
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, r, c=None):
        c = r if c is None else c
        zero = ring.zero
        return cls(ring, [[zero] * c for _ in range(r)])

    @classmethod
    def diag(cls, ring, values):
        n = len(values)
        zero = ring.zero
        return cls(ring, [[values[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def _raw(cls, ring, rows):
        m = cls.__new__(cls)
        m.ring = ring
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = len(m.rows[0])
        return m

    # -- access --------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return list(self.rows[i])

    def col(self, j):
        return [r[j] for r in self.rows]

    def to_lists(self):
        return [list(r) for r in self.rows]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(tuple(hash(x) for r in self.rows for x in r))

    def __str__(self):
        return "; ".join(", ".join(str(x) for x in r) for r in self.rows)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}: {self})"

    # -- arithmetic ----------------------------------------------------
    def _same_ring(self, other):
        if other.ring is not self.ring and other.ring != self.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return self.scale(other)
        self._same_ring(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} * {other.shape}")
        cols = other.col_tuples()
        zero = self.ring.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix._raw(self.ring, out)

    def col_tuples(self):
        return list(zip(*self.rows))

    def __add__(self, other):
        self._same_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return ExactMatrix._raw(self.ring, [[a + b for a, b in zip(r, s)]
                                            for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix._raw(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, c):
        c = self.ring.element(c)
        return ExactMatrix._raw(self.ring, [[a * c for a in r] for r in self.rows])

    def transpose(self):
        return ExactMatrix._raw(self.ring, self.col_tuples())

    @property
    def T(self):
        return self.transpose()

    def perp(self, other):
        """Block diagonal ``self ⊥ other``."""
        self._same_ring(other)
        zero = self.ring.zero
        rows = [list(r) + [zero] * other.ncols for r in self.rows]
        rows += [[zero] * self.ncols + list(r) for r in other.rows]
        return ExactMatrix._raw(self.ring, rows)

    def block(self, r0, r1, c0, c1):
        return ExactMatrix._raw(self.ring, [r[c0:c1] for r in self.rows[r0:r1]])

    # -- predicates ----------------------------------------------------
    def is_square(self):
        return self.nrows == self.ncols

    def is_skew(self):
        if not self.is_square():
            return False
        n = self.nrows
        return all(self.rows[i][i].is_zero() for i in range(n)) and all(
            self.rows[i][j] == -self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def is_identity(self):
        return self.is_square() and self == ExactMatrix.identity(self.ring, self.nrows)

    # -- invariants ----------------------------------------------------
    def det(self):
        return determinant(self)

    def pf(self):
        return pfaffian(self)

    def inverse(self):
        return inverse(self)


def mat_ops(op, A, B=None):
    """Dispatch for mul / transpose / perp / add / scale."""
    if op == "mul":
        return A * B
    if op == "transpose":
        return A.transpose()
    if op == "perp":
        return A.perp(B)
    if op == "add":
        return A + B
    if op == "scale":
        return A.scale(B)
    raise UnirowError(f"unknown matrix operation {op!r}")


# ----------------------------------------------------------------------
# determinants and Pfaffians

def determinant(A, method=None):
    """Exact determinant.

    ``method`` is ``"bareiss"`` (fraction-free elimination, valid over
    integral domains) or ``"laplace"`` (memoised cofactor expansion, valid
    over any commutative ring).  By default the ring's ``is_domain`` flag
    picks one.
    """
    if not A.is_square():
        raise NotSquare(f"determinant of a {A.nrows}x{A.ncols} matrix")
    if method is None:
        method = "bareiss" if A.ring.is_domain else "laplace"
    if method == "bareiss":
        return _det_bareiss(A)
    return _det_laplace(A)


def _det_bareiss(A):
    ring = A.ring
    n = A.nrows
    M = [list(r) for r in A.rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = ring.divide_exact(num, prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def _det_laplace(A):
    ring = A.ring
    n = A.nrows
    rows = A.rows
    memo = {}

    def minor(k, mask):
        # determinant of rows k.. with the columns set in mask (|mask| = n-k)
        if k == n:
            return ring.one
        key = mask
        if key in memo:
            return memo[key]
        acc = ring.zero
        pos = 0
        for j in range(n):
            if mask >> j & 1:
                a = rows[k][j]
                if not a.is_zero():
                    term = a * minor(k + 1, mask & ~(1 << j))
                    acc = acc + term if pos % 2 == 0 else acc - term
                pos += 1
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def pfaffian(G):
    """Pfaffian by expansion along the first remaining index.

    Sign convention: ``Pf([[0, 1], [-1, 0]]) = 1``.
    """
    if not G.is_square():
        raise NotSquare("Pfaffian of a non-square matrix")
    if G.nrows % 2:
        raise OddSize(f"Pfaffian of odd size {G.nrows}")
    if not G.is_skew():
        raise NotSkew("matrix is not skew-symmetric")
    ring = G.ring
    n = G.nrows
    rows = G.rows
    memo = {}

    def pf(mask):
        if mask == 0:
            return ring.one
        if mask in memo:
            return memo[mask]
        idx = [k for k in range(n) if mask >> k & 1]
        i = idx[0]
        acc = ring.zero
        for pos, j in enumerate(idx[1:]):
            a = rows[i][j]
            if a.is_zero():
                continue
            term = a * pf(mask & ~(1 << i) & ~(1 << j))
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[mask] = acc
        return acc

    return pf((1 << n) - 1)


def adjugate(A):
    if not A.is_square():
        raise NotSquare("adjugate of a non-square matrix")
    n = A.nrows
    ring = A.ring
    if n == 1:
        return ExactMatrix.identity(ring, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = ExactMatrix._raw(ring, [r[:j] + r[j + 1:] for k, r in enumerate(A.rows) if k != i])
            c = determinant(minor)
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return ExactMatrix._raw(ring, out)


def inverse(A):
    """Exact inverse; raises NotInvertible when the determinant is not a unit."""
    if not A.is_square():
        raise NotSquare("inverse of a non-square matrix")
    ring = A.ring
    if ring.is_field():
        return _inverse_gauss(A)
    d = determinant(A)
    try:
        dinv = ring.invert_unit(d)
    except NotAUnit as exc:
        raise NotInvertible(f"determinant {d} is not a unit") from exc
    return adjugate(A).scale(dinv)


def _inverse_gauss(A):
    ring = A.ring
    n = A.nrows
    M = [list(r) + [ring.one if i == j else ring.zero for j in range(n)]
         for i, r in enumerate(A.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if piv is None:
            raise NotInvertible("singular matrix")
        M[k], M[piv] = M[piv], M[k]
        inv = ring.invert_unit(M[k][k])
        M[k] = [x * inv for x in M[k]]
        for i in range(n):
            if i != k and not M[i][k].is_zero():
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return ExactMatrix._raw(ring, [r[n:] for r in M])


# ----------------------------------------------------------------------
# standard forms

def psi(ring, r):
    """``psi_{2r} = psi_2 ⊥ ... ⊥ psi_2``."""
    return _blocks(ring, r, [[0, 1], [-1, 0]])


def sigma(ring, r):
    """``sigma_{2r} = sigma_2 ⊥ ... ⊥ sigma_2``; an involution."""
    return _blocks(ring, r, [[0, 1], [1, 0]])


def h_matrix(ring, n):
    """``h_{4n} = [[0, sigma_{2n}^t], [-sigma_{2n}, 0]]``."""
    s = sigma(ring, n)
    z = ExactMatrix.zeros(ring, 2 * n)
    top = [list(a) + list(b) for a, b in zip(z.rows, s.transpose().rows)]
    bottom = [list(a) + list(b) for a, b in zip((-s).rows, z.rows)]
    return ExactMatrix._raw(ring, top + bottom)


def _blocks(ring, r, block):
    if r < 1:
        raise DimensionMismatch("half size must be at least 1")
    m = ExactMatrix(ring, block)
    out = m
    for _ in range(r - 1):
        out = out.perp(m)
    return out


def standard_form(kind, half_size, ring):
    """``psi``/``sigma`` of size ``2*half_size``; ``h`` of size ``4*half_size``."""
    if kind == "psi":
        return psi(ring, half_size)
    if kind == "sigma":
        return sigma(ring, half_size)
    if kind == "h":
        return h_matrix(ring, half_size)
    raise UnirowError(f"unknown standard form {kind!r}")


# ----------------------------------------------------------------------
# transvection words

class ElementaryWord:
    """A sequence of transvections ``E_ij(l)`` of a fixed size ``n``."""

    __slots__ = ("n", "gens")

    def __init__(self, n, gens=(), caps=DEFAULT_CAPS):
        gens = tuple((int(i), int(j), lam) for i, j, lam in gens)
        for i, j, _ in gens:
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexOutOfRange(f"E_{i}{j} outside 1..{n}")
            if i == j:
                raise IndexOutOfRange(f"E_{i}{j} needs distinct indices")
        if len(gens) > caps.max_word:
            raise ResourceExceeded(f"word length {len(gens)} exceeds cap {caps.max_word}")
        self.n = n
        self.gens = gens

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __add__(self, other):
        if other.n != self.n:
            raise DimensionMismatch(f"word sizes {self.n} and {other.n}")
        return ElementaryWord(self.n, self.gens + other.gens)

    def __eq__(self, other):
        return isinstance(other, ElementaryWord) and self.n == other.n and self.gens == other.gens

    def __repr__(self):
        body = ", ".join(f"E{i}{j}({lam})" for i, j, lam in self.gens)
        return f"ElementaryWord(n={self.n}: [{body}])"

    def compact(self):
        """Drop generators with a zero coefficient."""
        return ElementaryWord(self.n, [(i, j, l) for i, j, l in self.gens if not l.is_zero()])

    def inverse(self):
        return ElementaryWord(self.n, [(i, j, -lam) for i, j, lam in reversed(self.gens)])

    def shifted(self, offset, n):
        """The same word acting on indices ``offset+1 .. offset+self.n`` of size n."""
        return ElementaryWord(n, [(i + offset, j + offset, l) for i, j, l in self.gens])

    def act_on_row(self, row):
        """Right action ``row * E_1 * E_2 * ...``."""
        r = list(row)
        if len(r) != self.n:
            raise DimensionMismatch(f"row of length {len(r)} vs word size {self.n}")
        for i, j, lam in self.gens:
            r[j - 1] = r[j - 1] + lam * r[i - 1]
        return r

    def evaluate(self, ring):
        M = [[ring.one if a == b else ring.zero for b in range(self.n)] for a in range(self.n)]
        for i, j, lam in self.gens:
            lam = ring.element(lam)
            for r in M:
                if not r[i - 1].is_zero():
                    r[j - 1] = r[j - 1] + lam * r[i - 1]
        return ExactMatrix._raw(ring, M)


def transvection(ring, n, i, j, lam):
    return ElementaryWord(n, [(i, j, ring.element(lam))]).evaluate(ring)


def eval_word(w, ring):
    return w.evaluate(ring)


def invert_word(w):
    return w.inverse()


def rotation_word(ring, n, i, j):
    """``E_ij(-1) E_ji(1) E_ij(-1)``: sends ``e_i -> e_j`` and ``e_j -> -e_i`` on columns."""
    one = ring.one
    return ElementaryWord(n, [(i, j, -one), (j, i, one), (i, j, -one)])


def whitehead_factorization(M, Minv):
    """Elementary word of size 2n evaluating exactly to ``M ⊥ Minv``.

    Uses diag(M, M^-1) = [I M; 0 I][I 0; -M^-1 I][I M; 0 I][0 -I; I 0].
    """
    ring = M.ring
    if not M.is_square() or M.shape != Minv.shape:
        raise DimensionMismatch("M and Minv must be square of the same size")
    n = M.nrows
    if not (M * Minv).is_identity():
        raise NotInverse("M * Minv is not the identity")
    N = 2 * n

    def upper(X):
        return [(i + 1, n + j + 1, X[i, j]) for i in range(n) for j in range(n) if not X[i, j].is_zero()]

    def lower(Y):
        return [(n + i + 1, j + 1, Y[i, j]) for i in range(n) for j in range(n) if not Y[i, j].is_zero()]

    gens = upper(M) + lower(-Minv) + upper(M)
    for k in range(1, n + 1):
        gens += list(rotation_word(ring, N, k, n + k).gens)
    return ElementaryWord(N, gens)
