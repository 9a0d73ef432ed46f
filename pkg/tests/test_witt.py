import pytest

from unirow import ring
from unirow.errors import (ComposeNotUnimodular, FirstCoordinateMismatch, MinusOneNotSquare,
                           NotAField, NotInverseModulo, NotInvertible, NotSkew, OddSize,
                           PfaffianNotOne, WitnessInvalid)
from unirow.linear import ElementaryWord, ExactMatrix, eval_word, pfaffian, psi
from unirow.rows import UnimodularRow
from unirow.witt import (SkewRepresentative, Triple, change_of_basis_identity, eta,
                         field_congruence, field_reduce_skew, h_conjugation_check, stabilize,
                         symbol_inverse, symbol_power, vaserstein_compose, vaserstein_symbol,
                         witness_change_certificate, witt_inverse, zeta)


def rand_invertible(R, n, rng):
    while True:
        A = ExactMatrix(R, [[R.random_element(rng) for _ in range(n)] for _ in range(n)])
        if not A.det().is_zero():
            return A


def rand_nondegenerate_skew(R, n, rng):
    while True:
        A = ExactMatrix(R, [[R.random_element(rng) for _ in range(n)] for _ in range(n)])
        G = A - A.transpose()
        if not pfaffian(G).is_zero():
            return G


def rand_um3(R, rng):
    while True:
        try:
            return UnimodularRow(R, [R.random_element(rng) for _ in range(3)])
        except Exception:
            continue


def test_skew_representative_validation(qq):
    with pytest.raises(OddSize):
        SkewRepresentative(ExactMatrix.zeros(qq, 3, 3))
    with pytest.raises(NotSkew):
        SkewRepresentative(ExactMatrix(qq, [[0, 1], [2, 0]]))
    with pytest.raises(NotInvertible):
        SkewRepresentative(ExactMatrix.zeros(qq, 2, 2))
    G = SkewRepresentative(ExactMatrix(qq, [[0, 3], [-3, 0]]))
    assert not G.in_s()
    assert SkewRepresentative(psi(qq, 2)).in_s()


def test_stabilize(qq):
    G = SkewRepresentative(psi(qq, 1))
    S = stabilize(G, 2)
    assert S.size == 6 and S.level == 2
    assert S.matrix == psi(qq, 3)
    assert stabilize(G, 0) is G


def test_eta(qq, f7, rng):
    assert eta(ExactMatrix.identity(qq, 2)).matrix == psi(qq, 1)
    # odd size gets padded by a 1
    assert eta(ExactMatrix.identity(qq, 3)).matrix == psi(qq, 2)
    for n in (2, 3, 4):
        M = rand_invertible(f7, n, rng)
        G = eta(M)
        assert G.pf == M.det()


def test_witt_inverse(qq, f7, rng):
    assert witt_inverse(SkewRepresentative(psi(qq, 1))).matrix == psi(qq, 1)
    for _ in range(10):
        G = SkewRepresentative(rand_nondegenerate_skew(f7, 4, rng))
        inv = witt_inverse(G)
        assert (inv.pf * G.pf).is_one()


def test_zeta_identity_basis(f7, rng):
    f0 = SkewRepresentative(psi(f7, 2))
    f1 = SkewRepresentative(rand_nondegenerate_skew(f7, 4, rng))
    Z = zeta(Triple(f0, f1), ExactMatrix.identity(f7, 4))
    assert Z.size == 8
    assert Z.pf == f1.pf


@pytest.mark.parametrize("size", [2, 4, 6])
def test_change_of_basis_variants(size, f7, rng):
    for _ in range(5):
        T = Triple(rand_nondegenerate_skew(f7, size, rng), rand_nondegenerate_skew(f7, size, rng))
        g, h = rand_invertible(f7, size, rng), rand_invertible(f7, size, rng)
        assert change_of_basis_identity(T, g, h, "sigma")
        assert change_of_basis_identity(T, g, h, "minus")


def test_printed_variant_holds_only_at_size_two(f7, rng):
    T = Triple(rand_nondegenerate_skew(f7, 2, rng), rand_nondegenerate_skew(f7, 2, rng))
    g, h = rand_invertible(f7, 2, rng), rand_invertible(f7, 2, rng)
    assert change_of_basis_identity(T, g, h, "printed")
    failures = 0
    for _ in range(5):
        T = Triple(rand_nondegenerate_skew(f7, 4, rng), rand_nondegenerate_skew(f7, 4, rng))
        g, h = rand_invertible(f7, 4, rng), rand_invertible(f7, 4, rng)
        failures += not change_of_basis_identity(T, g, h, "printed")
    assert failures > 0


def test_h_conjugation(qq, f7, rng):
    for n in (2, 4):
        for _ in range(5):
            assert h_conjugation_check(rand_invertible(f7, n, rng))
    assert h_conjugation_check(ExactMatrix(qq, [[2, 1], [1, 1]]))


def test_symbol_of_e1_and_pfaffian(qq, sphere):
    G = vaserstein_symbol(UnimodularRow(qq, [1, 0, 0], [1, 0, 0]))
    assert G.in_s()
    assert G.matrix == ExactMatrix(qq, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    x, y, z = sphere.gens()
    assert vaserstein_symbol(UnimodularRow(sphere, [x, y, z], [x, y, z])).pf.is_one()
    with pytest.raises(WitnessInvalid):
        vaserstein_symbol(UnimodularRow(sphere, [x, y, z], [x, y, z]), [x, y, 0])


def test_witness_change_certificate(sphere, f13, rng):
    x, y, z = sphere.gens()
    v = UnimodularRow(sphere, [x, y, z], [x, y, z])
    # another witness: add a vector orthogonal to v
    k = [y, -x, sphere.zero]
    w2 = [a + b for a, b in zip(v.witness, k)]
    assert witness_change_certificate(v, v.witness, w2).verify()
    for _ in range(10):
        r = rand_um3(f13, rng)
        kk = [f13.random_element(rng) for _ in range(3)]
        # project kk onto the orthogonal complement of r
        dot = sum((a * b for a, b in zip(r.entries, kk)), f13.zero)
        kk = [b - dot * w for b, w in zip(kk, r.witness)]
        w2 = [a + b for a, b in zip(r.witness, kk)]
        assert witness_change_certificate(r, r.witness, w2).verify()


def test_compose_identity_and_unimodularity(qt):
    t = qt.var("t")
    r1 = UnimodularRow(qt, [t, 1, -1])
    out = vaserstein_compose(r1, UnimodularRow(qt, [t, 1, 0]), 1, 0)
    assert out.same_entries(r1) and out.verify()
    out = vaserstein_compose(r1, UnimodularRow(qt, [t, 1, 1]), 2, -1)
    assert out.verify()
    assert out.entries == (t, qt.zero, -qt.one)
    with pytest.raises(FirstCoordinateMismatch):
        vaserstein_compose(r1, UnimodularRow(qt, [t + 1, 1, 0]), 1, 0)


def test_compose_printed_rule_fails(qt):
    t = qt.var("t")
    with pytest.raises(ComposeNotUnimodular):
        vaserstein_compose(UnimodularRow(qt, [t, 1, -1]), UnimodularRow(qt, [t, 1, 1]), 2, -1,
                           printed=True)


def test_compose_symbols_have_pfaffian_one(f13, rng):
    for _ in range(20):
        r1 = rand_um3(f13, rng)
        a = r1.entries[0]
        if a.is_zero():
            continue
        x, y = f13.random_element(rng), f13.random_element(rng)
        try:
            r2 = UnimodularRow(f13, [a, x, y])
        except Exception:
            continue
        # over a field with a != 0 any x', y' work modulo a
        out = vaserstein_compose(r1, r2, f13.random_element(rng), f13.random_element(rng))
        assert vaserstein_symbol(out).in_s()


def test_symbol_inverse(qt):
    t = qt.var("t")
    r = UnimodularRow(qt, [t, 1 - t, 0])
    inv = symbol_inverse(r, 1)
    assert inv.verify() and inv.entries[0] == -qt.one
    with pytest.raises(NotInverseModulo):
        symbol_inverse(UnimodularRow(qt, [t, t - 1, t * t - 1]), 3)


def test_symbol_power(f13, rng):
    for _ in range(10):
        r = rand_um3(f13, rng)
        for n in (1, 2, 3, 5):
            out = symbol_power(r, n, 5)
            assert out.verify() and out.entries[0] == r.entries[0] ** n
    with pytest.raises(MinusOneNotSquare):
        symbol_power(rand_um3(f13, rng), 2, 3)


def test_field_reduce_skew(f7, qq, rng):
    for size in (2, 4, 6):
        for _ in range(5):
            G = rand_nondegenerate_skew(f7, size, rng)
            # rescale one pair so that the Pfaffian is 1
            inv = f7.invert_unit(pfaffian(G))
            D = ExactMatrix.diag(f7, [inv] + [f7.one] * (size - 1))
            G1 = D.transpose() * G * D
            word = field_reduce_skew(G1)
            E = eval_word(word, f7)
            assert E.transpose() * G1 * E == psi(f7, size // 2)
    with pytest.raises(PfaffianNotOne):
        field_reduce_skew(ExactMatrix(qq, [[0, 2], [-2, 0]]))
    T = ring("Q", ["t"])
    t = T.var("t")
    with pytest.raises(NotAField):
        field_reduce_skew(ExactMatrix(T, [[0, t], [-t, 0]]))


def test_field_congruence(f7, rng):
    G = vaserstein_symbol(rand_um3(f7, rng)).matrix
    G2 = vaserstein_symbol(rand_um3(f7, rng)).matrix
    assert field_congruence(G, G2).verify()
