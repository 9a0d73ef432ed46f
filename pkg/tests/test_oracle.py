from math import gcd
from itertools import product

import pytest

from unirow import ring
from unirow.errors import CharacteristicTwo, ResourceExceeded, RowNotUnimodular
from unirow.linear import ElementaryWord, ExactMatrix, eval_word
from unirow.oracle import (bounded_congruence_search, enumerate_um, find_orbit_word, orbit_bfs,
                           padded, same_orbit)
from unirow.ring import Caps, ResidueRing
from unirow.rows import UnimodularRow
from unirow.witt import vaserstein_symbol


def um_count(m, n):
    """|Um_n(Z/m)| = m^n * prod over primes p | m of (1 - p^-n)."""
    total = m ** n
    p, k = 2, m
    while k > 1:
        if k % p == 0:
            total = total * (p ** n - 1) // p ** n
            while k % p == 0:
                k //= p
        p += 1
    return total


def test_enumerate_fixture():
    rows = enumerate_um(3, 2)
    assert rows == [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]


def test_enumerate_rejects_even_and_large():
    with pytest.raises(CharacteristicTwo):
        enumerate_um(2, 2)
    with pytest.raises(ResourceExceeded):
        enumerate_um(25, 3, Caps(orbit_rows=100))


@pytest.mark.parametrize("m,n", [(5, 1), (3, 3), (9, 2), (15, 2), (25, 2), (7, 3)])
def test_counts_by_inclusion_exclusion(m, n):
    rows = enumerate_um(m, n)
    assert len(rows) == um_count(m, n)
    brute = sum(1 for r in product(range(m), repeat=n) if gcd(m, *r) == 1)
    assert len(rows) == brute


@pytest.mark.parametrize("m,n", [(3, 2), (5, 2), (9, 2), (15, 2), (3, 3), (9, 3)])
def test_single_orbit(m, n):
    table = orbit_bfs(m, n)
    assert len(table) == 1
    assert table.reps[0] == min(enumerate_um(m, n))


def test_seed_does_not_change_partition():
    a = orbit_bfs(9, 2)
    b = orbit_bfs(9, 2, seed=1)
    c = orbit_bfs(9, 2, seed=99)
    assert a.partition() == b.partition() == c.partition()
    assert a.export() == b.export()


def test_orbit_id_rejects_non_unimodular():
    table = orbit_bfs(9, 2)
    with pytest.raises(RowNotUnimodular):
        table.orbit_id((3, 6))
    assert same_orbit(table, (1, 0), (2, 7))


def test_export_format():
    text = orbit_bfs(3, 2).export()
    lines = text.splitlines()
    assert lines[0] == "0 1 0"
    assert len(lines) == 8


def test_find_orbit_word():
    Z = ResidueRing(15)
    src = UnimodularRow(Z, [3, 5])
    tgt = UnimodularRow.e1(Z, 2)
    word = find_orbit_word(Z, src, tgt)
    M = eval_word(word, Z)
    assert list((ExactMatrix(Z, [list(src.entries)]) * M).rows[0]) == list(tgt.entries)


def test_congruence_search_finds_planted_word(f7):
    v = UnimodularRow(f7, [1, 2, 3])
    G = vaserstein_symbol(v).matrix
    E = eval_word(ElementaryWord(4, [(1, 2, f7.element(3)), (3, 4, f7.element(5))]), f7)
    G2 = E.transpose() * G * E
    word = bounded_congruence_search(G, G2, max_stab=0, max_length=2)
    assert word
    F = eval_word(word, f7)
    assert F.transpose() * G * F == G2


def test_congruence_search_reports_not_found(f7):
    G = vaserstein_symbol(UnimodularRow(f7, [1, 0, 0], [1, 0, 0])).matrix
    G2 = ExactMatrix.diag(f7, [2, 1, 1, 1]).transpose() * G * ExactMatrix.diag(f7, [2, 1, 1, 1])
    # Pfaffian 2 versus 1: no elementary congruence exists, so the search must come back empty
    res = bounded_congruence_search(G, G2, max_stab=0, max_length=2)
    assert not res and res.explored > 0


def test_padded():
    F = ring("Fp:5")
    G = ExactMatrix(F, [[0, 1], [-1, 0]])
    assert padded(G, 1).shape == (4, 4)
