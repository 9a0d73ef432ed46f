"""Brute force over Z/m: unimodular rows, elementary orbits, congruences.

These are ground truth for small odd moduli.  Rows are plain tuples of
ints in ``range(m)``.  Elements of ``Z/m`` or of a prime field ring are
accepted wherever a row or matrix is expected and converted on entry.
"""

import random
from collections import deque
from dataclasses import dataclass
from itertools import product
from math import gcd

from .errors import CharacteristicTwo, DimensionMismatch, ResourceExceeded, RowNotUnimodular
from .linear import ElementaryWord, ExactMatrix
from .ring.groebner import DEFAULT_CAPS


def _check_modulus(m, caps):
    if m < 2:
        raise ResourceExceeded(f"modulus {m} is too small")
    if m % 2 == 0:
        raise CharacteristicTwo(f"even modulus {m} rejected")
    if m > caps.orbit_modulus:
        raise ResourceExceeded(f"modulus {m} exceeds cap {caps.orbit_modulus}")


def enumerate_um(m, n, caps=DEFAULT_CAPS):
    """All rows of length n over Z/m whose entries generate the unit ideal."""
    _check_modulus(m, caps)
    if m ** n > caps.orbit_rows:
        raise ResourceExceeded(f"{m}^{n} rows exceed cap {caps.orbit_rows}")
    out = []
    for row in product(range(m), repeat=n):
        g = m
        for a in row:
            g = gcd(g, a)
        if g == 1:
            out.append(row)
    return out


def _generators(m, n, seed=None):
    gens = [(i, j, lam) for i in range(n) for j in range(n) if i != j for lam in range(1, m)]
    if seed is not None:
        random.Random(seed).shuffle(gens)
    return gens


class OrbitTable:
    """Partition of Um_n(Z/m) into E_n-orbits."""

    def __init__(self, m, n, reps, lookup):
        self.m = m
        self.n = n
        self.reps = reps
        self.lookup = lookup

    def __len__(self):
        return len(self.reps)

    def orbit_id(self, row):
        key = as_int_row(row, self.m)
        if key not in self.lookup:
            raise RowNotUnimodular(f"{key} is not a unimodular row over Z/{self.m}")
        return self.lookup[key]

    def members(self, oid):
        return sorted(r for r, k in self.lookup.items() if k == oid)

    def partition(self):
        return frozenset(frozenset(self.members(k)) for k in range(len(self.reps)))

    def export(self):
        """One line per row: entries then orbit id."""
        return "".join(" ".join(map(str, r)) + f" {k}\n" for r, k in sorted(self.lookup.items()))


def orbit_bfs(m, n, caps=DEFAULT_CAPS, seed=None):
    """Orbits under right multiplication by all E_ij(l); ``seed`` shuffles generator order."""
    rows = enumerate_um(m, n, caps)
    gens = _generators(m, n, seed)
    comp = {}
    orbits = []
    for start in rows:
        if start in comp:
            continue
        tag = len(orbits)
        comp[start] = tag
        members = [start]
        queue = deque([start])
        while queue:
            r = queue.popleft()
            for i, j, lam in gens:
                s = list(r)
                s[j] = (s[j] + lam * s[i]) % m
                s = tuple(s)
                if s not in comp:
                    comp[s] = tag
                    members.append(s)
                    queue.append(s)
        orbits.append(min(members))
    # ids follow the order of canonical representatives
    order = sorted(range(len(orbits)), key=lambda k: orbits[k])
    renum = {old: new for new, old in enumerate(order)}
    reps = [orbits[k] for k in order]
    lookup = {r: renum[k] for r, k in comp.items()}
    return OrbitTable(m, n, reps, lookup)


def _modulus_of(ring):
    if hasattr(ring, "m"):
        return ring.m
    field = getattr(ring, "field", None)
    if field is not None and hasattr(field, "p") and not ring.names:
        return field.p
    raise DimensionMismatch(f"{ring} is not a finite ring Z/m")


def _int(x, m):
    if isinstance(x, int):
        return x % m
    return int(x.ring.scalar(x)) % m


def as_int_row(row, m):
    entries = row.entries if hasattr(row, "entries") else row
    return tuple(_int(x, m) for x in entries)


def same_orbit(table, r1, r2):
    return table.orbit_id(r1) == table.orbit_id(r2)


def find_orbit_word(ring, source, target, caps=DEFAULT_CAPS):
    """Shortest word carrying ``source`` to ``target`` over a finite ring, or None."""
    m = _modulus_of(ring)
    _check_modulus(m, caps)
    a, b = as_int_row(source, m), as_int_row(target, m)
    n = len(a)
    gens = _generators(m, n)
    parent = {a: None}
    queue = deque([a])
    while queue:
        r = queue.popleft()
        if r == b:
            path = []
            while parent[r] is not None:
                r, g = parent[r]
                path.append(g)
            path.reverse()
            return ElementaryWord(n, [(i + 1, j + 1, ring.element(lam)) for i, j, lam in path], caps)
        for i, j, lam in gens:
            s = list(r)
            s[j] = (s[j] + lam * s[i]) % m
            s = tuple(s)
            if s not in parent:
                parent[s] = (r, (i, j, lam))
                if len(parent) > caps.orbit_rows:
                    raise ResourceExceeded("orbit search exceeded its row cap")
                queue.append(s)
    return None


# ----------------------------------------------------------------------
# congruence search

@dataclass(frozen=True)
class NotFound:
    """Result of a congruence search that exhausted its bounds."""

    explored: int
    max_stab: int
    max_length: int

    def __bool__(self):
        return False


def _psi_pad(M, t):
    size = len(M) + 2 * t
    out = [[0] * size for _ in range(size)]
    for i, r in enumerate(M):
        out[i][:len(r)] = list(r)
    for k in range(t):
        a = len(M) + 2 * k
        out[a][a + 1] = 1
        out[a + 1][a] = -1
    return out


def _congruence(A, i, j, lam, m):
    """E^t A E for E = E_ij(lam) on a flat tuple matrix."""
    N = int(len(A) ** 0.5)
    B = list(A)
    for r in range(N):  # column j += lam * column i
        B[r * N + j] = (B[r * N + j] + lam * B[r * N + i]) % m
    for c in range(N):  # row j += lam * row i
        B[j * N + c] = (B[j * N + c] + lam * B[i * N + c]) % m
    return tuple(B)


def bounded_congruence_search(G, G2, max_stab=1, max_length=4, caps=DEFAULT_CAPS):
    """Word ``E`` with ``E^t (G ⊥ psi) E = G2 ⊥ psi``, or a :class:`NotFound`.

    Tries stabilization levels 0..max_stab in turn, each with a
    meet-in-the-middle search over words of length at most ``max_length``.
    """
    ring = G.ring
    m = _modulus_of(ring)
    if G.shape != G2.shape:
        raise DimensionMismatch("forms must have the same size")
    A0 = [[_int(x, m) for x in r] for r in G.rows]
    B0 = [[_int(x, m) for x in r] for r in G2.rows]
    explored = 0
    for t in range(max_stab + 1):
        A = _psi_pad(A0, t)
        B = _psi_pad(B0, t)
        N = len(A)
        fa = tuple(x % m for r in A for x in r)
        fb = tuple(x % m for r in B for x in r)
        gens = [(i, j, lam) for i in range(N) for j in range(N) if i != j for lam in range(1, m)]
        fwd = {fa: ()}
        bwd = {fb: ()}
        if fa == fb:
            return ElementaryWord(N, [])
        front_f, front_b = [fa], [fb]
        depth_f = depth_b = 0
        while depth_f + depth_b < max_length:
            grow_fwd = depth_f <= depth_b
            front, seen, other = (front_f, fwd, bwd) if grow_fwd else (front_b, bwd, fwd)
            nxt = []
            for state in front:
                path = seen[state]
                for g in gens:
                    s = _congruence(state, g[0], g[1], g[2], m)
                    if s in seen:
                        continue
                    seen[s] = path + (g,)
                    explored += 1
                    if explored > caps.orbit_rows:
                        raise ResourceExceeded("congruence search exceeded its state cap")
                    if s in other:
                        pf, pb = (seen[s], other[s]) if grow_fwd else (other[s], seen[s])
                        return _assemble(ring, N, pf, pb)
                    nxt.append(s)
            if grow_fwd:
                front_f, depth_f = nxt, depth_f + 1
            else:
                front_b, depth_b = nxt, depth_b + 1
            if not nxt:
                break
    return NotFound(explored, max_stab, max_length)


def _assemble(ring, N, pf, pb):
    gens = [(i + 1, j + 1, ring.element(lam)) for i, j, lam in pf]
    gens += [(i + 1, j + 1, -ring.element(lam)) for i, j, lam in reversed(pb)]
    return ElementaryWord(N, gens)


def padded(G, t):
    """``G ⊥ psi_{2t}`` as an ExactMatrix over G's ring."""
    ring = G.ring
    rows = _psi_pad([list(r) for r in G.rows], t) if t else [list(r) for r in G.rows]
    return ExactMatrix(ring, [[x if not isinstance(x, int) else ring.element(x) for x in r]
                              for r in rows])
