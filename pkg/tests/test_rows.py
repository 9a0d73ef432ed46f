import pytest
import sympy as sp

from unirow import ring
from unirow.errors import (CertificateMismatch, IndexOutOfRange, LiftFailed, MinusOneNotSquare,
                           NotAField, NotComaximal, NotUnimodular, UnsupportedRank,
                           WitnessInvalid, ZeroRow)
from unirow.linear import ElementaryWord, determinant
from unirow.oracle import find_orbit_word, orbit_bfs, same_orbit
from unirow.ring import ResidueRing
from unirow.rows import (OrbitCertificate, UnimodularRow, apply_transvection, apply_word,
                         complete_from_certificate, embed_row, factorial_completion,
                         field_reduce_row, lift_e2_mod_action, negate_first, square_scale,
                         vaserstein_scale, verify_row)


def random_um(R, n, rng):
    """Random unimodular row over a finite ring (rejection sampling)."""
    while True:
        ents = [R.random_element(rng) for _ in range(n)]
        try:
            return UnimodularRow(R, ents)
        except NotUnimodular:
            continue


def entries_as(R, row, values):
    return all(a == R.element(v) for a, v in zip(row.entries, values))


def test_verify_row_examples(qq, sphere):
    assert verify_row(UnimodularRow(qq, [1, 0, 0], [1, 0, 0]))
    assert not verify_row(UnimodularRow(qq, [2, 0, 0], [1, 0, 0]))
    x, y, z = sphere.gens()
    assert verify_row(UnimodularRow(sphere, [x, y, z], [x, y, z]))
    with pytest.raises(WitnessInvalid):
        UnimodularRow.checked(sphere, [x, y, z], [x, y, 0])


def test_transvection_on_sphere(sphere):
    x, y, z = sphere.gens()
    r = UnimodularRow(sphere, [x, y, z], [x, y, z])
    out, cert = apply_transvection(r, 1, 2, z)
    assert out.entries == (x, y + z * x, z)
    assert out.verify() and cert.verify()
    same, cert0 = apply_transvection(r, 2, 3, 0)
    assert same.same_entries(r) and cert0.verify()
    with pytest.raises(IndexOutOfRange):
        apply_transvection(r, 2, 2, 1)
    with pytest.raises(IndexOutOfRange):
        apply_transvection(r, 1, 4, 1)


def test_certificate_chain_and_inverse(f7, rng):
    r = random_um(f7, 3, rng)
    w1 = ElementaryWord(3, [(1, 2, f7.element(3)), (3, 1, f7.element(2))])
    w2 = ElementaryWord(3, [(2, 3, f7.element(5))])
    r1, c1 = apply_word(r, w1)
    r2, c2 = apply_word(r1, w2)
    chain = c1.then(c2)
    assert chain.verify() and chain.target.same_entries(r2)
    assert chain.inverse().verify()
    with pytest.raises(CertificateMismatch):
        c2.then(c1)


def test_lift_e2_empty_word(sphere):
    x, y, z = sphere.gens()
    r = UnimodularRow(sphere, [x, y, z], [x, y, z])
    out, cert = lift_e2_mod_action(r, ElementaryWord(2))
    assert out.same_entries(r) and len(cert.word) == 0


def test_lift_e2_single_generator_with_target(qt):
    t = qt.var("t")
    r = UnimodularRow(qt, [t, 1, t + 1])
    Q = qt.quotient([t])
    w2 = ElementaryWord(2, [(1, 2, Q.reduce(qt.element(3)))])
    out, cert = lift_e2_mod_action(r, w2, target=[t, 1, 4 + 5 * t])
    assert cert.verify() and out.verify()
    assert entries_as(qt, out, [t, 1, 4 + 5 * t])


def test_lift_e2_over_z25_matches_bfs(rng):
    Z = ResidueRing(25)
    table = orbit_bfs(25, 3)
    Q = Z.quotient([Z.element(5)])
    done = 0
    while done < 10:
        try:
            r = UnimodularRow(Z, [5, rng.randrange(25), rng.randrange(25)])
        except NotUnimodular:
            continue
        w2 = ElementaryWord(2, [(rng.choice([(1, 2), (2, 1)])) + (Q.element(rng.randrange(1, 5)),)
                                for _ in range(3)])
        out, cert = lift_e2_mod_action(r, w2)
        assert cert.verify() and out.verify()
        assert same_orbit(table, r, out)
        done += 1


def test_square_scale_identity_and_polynomial(qt):
    t = qt.var("t")
    base = UnimodularRow(qt, [t, 1 - t, 0])
    same, cert = square_scale(base, 1)
    assert same.same_entries(base) and len(cert.word) == 0
    out, cert = square_scale(base, 2)
    assert cert.verify()
    assert entries_as(qt, cert.source, [t, 2 - 2 * t, 0])
    assert entries_as(qt, out, [t, 1 - t, 0])
    base = UnimodularRow(qt, [t, 1, t + 3])
    out, cert = square_scale(base, 2)
    assert cert.verify() and entries_as(qt, out, [t, 1, 4 * t + 12])


def test_vaserstein_scale_identity(qt):
    t = qt.var("t")
    r = UnimodularRow(qt, [t, 1 - t, 0])
    out, cert = vaserstein_scale(r, 1)
    assert out.same_entries(r) and len(cert.word) == 0


def test_vaserstein_scale_polynomial(qt):
    t = qt.var("t")
    r = UnimodularRow(qt, [t, 1 - t, 0])
    out, cert = vaserstein_scale(r, 1 + t)
    assert cert.verify() and out.verify()
    assert entries_as(qt, out, [t, (1 + t) * (1 - t), 0])
    with pytest.raises(NotComaximal):
        vaserstein_scale(r, t * t)


def test_vaserstein_scale_z13_against_bfs(f13, rng):
    table = orbit_bfs(13, 3)
    for _ in range(20):
        r = random_um(f13, 3, rng)
        u = f13.element(rng.randrange(1, 13))
        out, cert = vaserstein_scale(r, u)
        assert cert.verify()
        assert entries_as(f13, out, [r.entries[0], u * r.entries[1], u * r.entries[2]])
        assert same_orbit(table, r, out)


@pytest.mark.parametrize("p,i", [(13, 5), (5, 2)])
def test_negate_first(p, i, rng):
    F = ring(f"Fp:{p}")
    rows = [random_um(F, 3, rng) for _ in range(10)] + [UnimodularRow(F, [0, 1, 2])]
    for r in rows:
        out, cert = negate_first(r, i)
        assert cert.verify()
        assert entries_as(F, out, [-r.entries[0], r.entries[1], r.entries[2]])


def test_negate_first_needs_square_root(f7):
    with pytest.raises(MinusOneNotSquare):
        negate_first(UnimodularRow(f7, [1, 0, 0]), 3)


def test_field_reduce_row(qq, f7, rng):
    cert = field_reduce_row(UnimodularRow(qq, [1, 0, 0], [1, 0, 0]))
    assert len(cert.word) == 0
    cert = field_reduce_row(UnimodularRow(qq, [0, 1]))
    assert cert.verify() and len(cert.word) == 2
    for _ in range(20):
        r = random_um(f7, 4, rng)
        cert = field_reduce_row(r)
        assert cert.verify() and len(cert.word) <= 5
        assert entries_as(f7, cert.target, [1, 0, 0, 0])


def test_field_reduce_row_errors(qt, f7):
    t = qt.var("t")
    with pytest.raises(NotAField):
        field_reduce_row(UnimodularRow(qt, [t, 1 - t]))
    with pytest.raises(ZeroRow):
        field_reduce_row(UnimodularRow(f7, [0, 0], [0, 0]))


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_field_reduce_row_exhaustive(p, n):
    from unirow.oracle import enumerate_um
    F = ring(f"Fp:{p}")
    for ents in enumerate_um(p, n):
        cert = field_reduce_row(UnimodularRow(F, ents))
        assert cert.verify() and len(cert.word) <= n + 1


def test_complete_from_certificate(f7, rng):
    for _ in range(10):
        r = random_um(f7, 3, rng)
        M, Minv = complete_from_certificate(r, field_reduce_row(r))
        assert (M * Minv).is_identity()
        assert all(a == b for a, b in zip(Minv.rows[0], r.entries))
        assert determinant(Minv).is_one()


def test_complete_from_bfs_word_over_z9(rng):
    Z = ResidueRing(9)
    for _ in range(5):
        r = random_um(Z, 3, rng)
        e1 = UnimodularRow.e1(Z, 3)
        word = find_orbit_word(Z, r, e1)
        cert = OrbitCertificate(r, e1, word)
        M, Minv = complete_from_certificate(r, cert)
        assert all(a == b for a, b in zip(Minv.rows[0], r.entries))


def test_complete_rejects_wrong_certificate(f7, rng):
    r = random_um(f7, 3, rng)
    cert = field_reduce_row(r)
    other = random_um(f7, 3, rng)
    if not other.same_entries(r):
        with pytest.raises(CertificateMismatch):
            complete_from_certificate(other, cert)
    with pytest.raises(CertificateMismatch):
        complete_from_certificate(r, OrbitCertificate(r, r, ElementaryWord(3)))


def test_factorial_completion_trivial(qq):
    M = factorial_completion(UnimodularRow(qq, [1, 0, 0], [1, 0, 0]), 2, 1)
    assert M.is_identity()


def test_factorial_completion_generic_symbolic():
    G = ring("Q", ["a", "b", "c", "p", "q", "r"], ["p*a^2 + q*b + r*c - 1"])
    a, b, c, p, q, r = G.gens()
    row = UnimodularRow(G, [a * a, b, c], [p, q, r])
    M = factorial_completion(row, 2, a)
    assert determinant(M).is_one()
    # the same matrix over the polynomial ring has det (a*u + b*v + c*w)^2
    A, B, C, U, V, W = sp.symbols("a b c u v w")
    S = sp.Matrix([[A**2, B, C], [C - 2*A*V, U + V*W, -V**2], [-B - 2*A*W, W**2, U - V*W]])
    assert sp.expand(S.det() - (A*U + B*V + C*W)**2) == 0


def test_factorial_completion_surface():
    R = ring("Q", ["x", "y", "z"], ["x^2 + y^4 + z^4 - 1"])
    x, y, z = R.gens()
    row = UnimodularRow(R, [x * x, y, z], [1, y ** 3, z ** 3])
    M = factorial_completion(row, 2, x)
    assert determinant(M).is_one()
    assert all(u == v for u, v in zip(M.rows[0], row.entries))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_factorial_completion_finite_field(r, f13, rng):
    from math import factorial
    for _ in range(10):
        base = f13.element(rng.randrange(0, 13))
        while True:
            tail = [f13.random_element(rng) for _ in range(r)]
            ents = [base ** factorial(r)] + tail
            if any(not e.is_zero() for e in ents):
                break
        M = factorial_completion(UnimodularRow(f13, ents), r, base)
        assert determinant(M).is_one()
        assert all(u == v for u, v in zip(M.rows[0], ents))


def test_factorial_completion_unsupported_rank():
    R = ring("Q", ["t"])
    t = R.var("t")
    row = UnimodularRow(R, [1, t, t, t, t], [1, 0, 0, 0, 0])
    with pytest.raises(UnsupportedRank):
        factorial_completion(row, 4, 1)


def test_embed_row_e1(sphere):
    B = sphere.quotient([sphere.var("z")])
    e1 = UnimodularRow.e1(B, 3)
    out = embed_row(e1, [sphere.var("z")], sphere)
    assert out.verify() and len(out) == 4


def test_embed_row_sphere_tail():
    P = ring("Q", ["x", "y", "z", "w"], ["x^2 + y^2 + z^2 + w^2 - 1"])
    x, y, z, w = P.gens()
    B = P.quotient([w])
    r3 = UnimodularRow(B, [B.reduce(x), B.reduce(y), B.reduce(z)],
                       [B.reduce(x), B.reduce(y), B.reduce(z)])
    out = embed_row(r3, [w], P)
    assert out.verify()
    assert out.entries == (x, y, z, w)


def test_embed_row_zero_ring(qt):
    t = qt.var("t")
    B = qt.quotient([qt.one])
    with pytest.raises(LiftFailed):
        embed_row(UnimodularRow(B, [0, 0, 0], [0, 0, 0]), [qt.one], qt)
