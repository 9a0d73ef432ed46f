import pytest
import sympy as sp

from unirow import ring
from unirow.errors import (DimensionMismatch, IndexOutOfRange, NotInverse, NotSkew, OddSize,
                           ResourceExceeded)
from unirow.linear import (ElementaryWord, ExactMatrix, determinant, eval_word, invert_word,
                           mat_ops, pfaffian, psi, sigma, standard_form, whitehead_factorization)
from unirow.ring import Caps, ResidueRing


def rand_matrix(R, n, rng, m=None):
    m = m or n
    return ExactMatrix(R, [[R.random_element(rng) for _ in range(m)] for _ in range(n)])


def rand_skew(R, n, rng):
    A = rand_matrix(R, n, rng)
    return A - A.transpose()


def rand_word(R, n, length, rng):
    gens = []
    for _ in range(length):
        i, j = rng.sample(range(1, n + 1), 2)
        gens.append((i, j, R.random_element(rng)))
    return ElementaryWord(n, gens)


def test_standard_forms(qq):
    assert standard_form("psi", 1, qq) == ExactMatrix(qq, [[0, 1], [-1, 0]])
    assert standard_form("sigma", 1, qq) == ExactMatrix(qq, [[0, 1], [1, 0]])
    for n in range(1, 5):
        S = sigma(qq, n)
        assert (S * S).is_identity()
    assert mat_ops("perp", psi(qq, 1), psi(qq, 1)) == psi(qq, 2)
    assert psi(qq, 1) * psi(qq, 1) == -ExactMatrix.identity(qq, 2)
    H = standard_form("h", 1, qq)
    assert H == ExactMatrix(qq, [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])


def test_transpose_of_transvection(qq):
    E = eval_word(ElementaryWord(3, [(1, 2, qq.element(5))]), qq)
    assert E.transpose() == eval_word(ElementaryWord(3, [(2, 1, qq.element(5))]), qq)


def test_determinant_examples(qq):
    assert determinant(ExactMatrix.identity(qq, 4)).is_one()
    assert determinant(sigma(qq, 1)) == qq.element(-1)
    with pytest.raises(Exception):
        determinant(ExactMatrix(qq, [[1, 2, 3]]))


def test_bareiss_and_laplace_agree_with_sympy(rng):
    R = ring("Q", ["s", "t"])
    s, t = sp.symbols("s t")
    for n in (1, 2, 3, 4):
        A = rand_matrix(R, n, rng)
        d1, d2 = determinant(A, "bareiss"), determinant(A, "laplace")
        assert d1 == d2
        S = sp.Matrix([[sp.sympify(R.to_str(x).replace("^", "**")) for x in row] for row in A.rows])
        assert sp.expand(S.det() - sp.sympify(R.to_str(d1).replace("^", "**"))) == 0


def test_quotient_ring_determinant_uses_expansion(sphere, rng):
    x, y, z = sphere.gens()
    A = ExactMatrix(sphere, [[x, y], [-y, x]])
    assert determinant(A) == 1 - z * z


def test_pfaffian_generic_4x4():
    R = ring("Q", list("abcdef"))
    a, b, c, d, e, f = R.gens()
    G = ExactMatrix(R, [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]])
    assert pfaffian(G) == a * f - b * e + c * d
    assert pfaffian(G) ** 2 == determinant(G)


def test_pfaffian_errors(qq):
    with pytest.raises(OddSize):
        pfaffian(ExactMatrix(qq, [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]))
    with pytest.raises(NotSkew):
        pfaffian(ExactMatrix(qq, [[0, 1], [1, 0]]))


@pytest.mark.parametrize("base", ["Fp:7", "Q"])
def test_pfaffian_properties(base, rng):
    R = ring(base)
    for r in range(1, 5):
        assert pfaffian(psi(R, r)).is_one()
    for size in (2, 4, 6):
        G = rand_skew(R, size, rng)
        H = rand_skew(R, size, rng)
        E = eval_word(rand_word(R, size, 6, rng), R)
        assert pfaffian(G) ** 2 == determinant(G)
        assert pfaffian(E.transpose() * G * E) == pfaffian(G)
        assert pfaffian(G.perp(H)) == pfaffian(G) * pfaffian(H)


def test_pfaffian_numeric_sqrt_det(rng):
    Q = ring("Q")
    for _ in range(10):
        A = rand_skew(Q, 6, rng)
        pf = Q.scalar(pfaffian(A))
        M = sp.Matrix([[Q.scalar(x) for x in r] for r in A.rows])
        assert M.det() == pf ** 2


def test_words(f7, rng):
    lam = f7.element(3)
    assert eval_word(ElementaryWord(2), f7).is_identity()
    assert eval_word(ElementaryWord(2, [(1, 2, lam), (1, 2, -lam)]), f7).is_identity()
    Q = ring("Q")
    rot = ElementaryWord(2, [(1, 2, Q.one), (2, 1, -Q.one), (1, 2, Q.one)])
    assert eval_word(rot, Q) == ExactMatrix(Q, [[0, 1], [-1, 0]])
    assert invert_word(ElementaryWord(2, [(1, 2, lam)])).gens == ((1, 2, -lam),)
    for _ in range(20):
        w = rand_word(f7, 4, 6, rng)
        assert (eval_word(w, f7) * eval_word(invert_word(w), f7)).is_identity()
        assert determinant(eval_word(w, f7)).is_one()


def test_word_validation(f7):
    with pytest.raises(IndexOutOfRange):
        ElementaryWord(2, [(1, 1, f7.one)])
    with pytest.raises(IndexOutOfRange):
        ElementaryWord(2, [(1, 3, f7.one)])
    with pytest.raises(ResourceExceeded):
        ElementaryWord(2, [(1, 2, f7.one)] * 5, Caps(max_word=4))


def test_row_action_matches_matrix(f7, rng):
    for _ in range(10):
        w = rand_word(f7, 3, 5, rng)
        r = [f7.random_element(rng) for _ in range(3)]
        prod = (ExactMatrix(f7, [r]) * eval_word(w, f7)).rows[0]
        assert list(prod) == w.act_on_row(r)


def test_whitehead_examples(qq):
    I1 = ExactMatrix.identity(qq, 1)
    assert eval_word(whitehead_factorization(I1, I1), qq).is_identity()
    M = ExactMatrix(qq, [[2]])
    assert eval_word(whitehead_factorization(M, M.inverse()), qq) == \
        ExactMatrix(qq, [[2, 0], [0, "1/2"]])
    M = ExactMatrix(qq, [[1, 1], [0, 1]])
    Mi = M.inverse()
    assert eval_word(whitehead_factorization(M, Mi), qq) == M.perp(Mi)
    with pytest.raises(NotInverse):
        whitehead_factorization(M, M)


def test_whitehead_over_quotient_ring():
    K = ring("Q", ["x"], ["x^2 - 2"])
    M = ExactMatrix(K, [["x + 2", 1], [0, 1]])
    Mi = M.inverse()
    assert eval_word(whitehead_factorization(M, Mi), K) == M.perp(Mi)


def test_inverse_over_residue_ring():
    Z = ResidueRing(25)
    M = ExactMatrix(Z, [[2, 5], [3, 4]])
    assert (M * M.inverse()).is_identity()


def test_dimension_errors(qq):
    with pytest.raises(DimensionMismatch):
        ExactMatrix(qq, [[1, 2]]) * ExactMatrix(qq, [[1, 2]])
    with pytest.raises(DimensionMismatch):
        ExactMatrix(qq, [[1, 2], [3]])
