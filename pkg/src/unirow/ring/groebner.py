"""Buchberger's algorithm with cofactor tracking.

Each basis element carries a vector of cofactors expressing it as a
combination of the *tracked* generators.  Elements that come from an
already known basis of the relation ideal may be passed as ``fixed``: they
carry the zero vector, which is correct in the quotient ring because they
vanish there.  Cofactors can then be kept short by reducing them modulo the
relations (``cof_reducer``).

Pair selection follows the sugar strategy; useless pairs are discarded with
the Gebauer-Moeller criteria.
"""

from dataclasses import dataclass

from ..errors import ResourceExceeded
from .poly import divides, lcm, mono_div


@dataclass(frozen=True)
class Caps:
    """Resource limits.  Exceeding any of them raises ResourceExceeded."""

    max_degree: int = 24
    max_basis: int = 512
    max_pairs: int = 200000
    max_word: int = 10000
    orbit_modulus: int = 25
    orbit_rows: int = 1000000

    @classmethod
    def from_mapping(cls, data):
        known = {k: int(v) for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)


DEFAULT_CAPS = Caps()


class GroebnerResult:
    """A reduced Groebner basis together with cofactor vectors.

    ``polys[i] == sum(cofs[i][k] * gens[k])`` modulo whatever the fixed
    part of the computation vanished on.  ``unit`` is True when the ideal is
    the whole ring, in which case ``polys == [1]``.
    """

    def __init__(self, ring, polys, cofs, ngens):
        self.ring = ring
        self.polys = polys
        self.cofs = cofs
        self.ngens = ngens
        self.lead_exps = [ring.lead_exp(g) for g in polys]

    @property
    def unit(self):
        return len(self.polys) == 1 and self.ring.is_constant(self.polys[0])

    def reduce(self, f, track=False, cof_reducer=None):
        """Full reduction of ``f``.

        Returns the remainder, or ``(remainder, combination)`` when ``track``
        is set, where ``f - remainder == sum(combination[k] * gens[k])``.
        """
        R = self.ring
        zero_cof = [{} for _ in range(self.ngens)] if track else None
        r, cof = _reduce(R, f, zero_cof, self.polys, self.lead_exps,
                         self.cofs if track else None)
        if not track:
            return r
        # starting from the zero vector, cof accumulated minus the quotients
        cof = [R.neg(c) for c in cof]
        if cof_reducer is not None:
            cof = [cof_reducer(c) for c in cof]
        return r, cof


def _reduce(R, f, fcof, basis, leads, bcofs):
    """Fully reduce ``f`` by ``basis``.

    If ``f`` equals the combination ``fcof`` of the generators, the returned
    remainder equals the returned combination.  ``bcofs=None`` disables the
    bookkeeping.
    """
    F = R.field
    p = dict(f)
    r = {}
    cof = None if fcof is None else [dict(c) for c in fcof]
    while p:
        e, c = R.lead(p)
        for idx, le in enumerate(leads):
            if divides(le, e):
                g = basis[idx]
                t = F.mul(c, F.inv(g[le]))
                m = mono_div(e, le)
                p = R.sub_mul_term(p, g, m, t)
                if cof is not None:
                    gc = bcofs[idx]
                    for k in range(len(cof)):
                        if gc[k]:
                            cof[k] = R.sub_mul_term(cof[k], gc[k], m, t)
                break
        else:
            r[e] = c
            del p[e]
    return r, cof


def buchberger(R, tracked, fixed=(), caps=DEFAULT_CAPS, cof_reducer=None, track=True):
    """Reduced Groebner basis of ``fixed + tracked`` under ``R``'s order.

    ``fixed`` must already be a Groebner basis; its members carry zero
    cofactors.  ``tracked`` members get unit cofactor vectors.  Returns a
    :class:`GroebnerResult` whose cofactors refer to ``tracked`` only.
    """
    F = R.field
    ng = len(tracked)

    def zero_vec():
        return [{} for _ in range(ng)]

    polys, cofs, leads, sugars = [], [], [], []
    active = []
    pairs = []

    def unit_result(r, rc):
        c = F.inv(R.constant_value(r))
        vec = [R.scale(x, c) for x in rc] if rc is not None else zero_vec()
        if cof_reducer is not None:
            vec = [cof_reducer(x) for x in vec]
        return GroebnerResult(R, [R.const(1)], [vec], ng)

    def add_element(h, hc, sugar):
        idx = len(polys)
        polys.append(h)
        cofs.append(hc)
        leads.append(R.lead_exp(h))
        sugars.append(sugar)
        _update(idx)
        if len(active) > caps.max_basis:
            raise ResourceExceeded(f"Groebner basis exceeded {caps.max_basis} elements")
        if sum(leads[idx]) > caps.max_degree:
            raise ResourceExceeded(f"Groebner basis degree exceeded {caps.max_degree}")

    def _update(h):
        lh = leads[h]
        C = [g for g in active]
        D = []
        while C:
            g1 = C.pop(0)
            l1 = lcm(lh, leads[g1])
            if _coprime(lh, leads[g1]):
                D.append(g1)
                continue
            redundant = False
            for g2 in C + D:
                if divides(lcm(lh, leads[g2]), l1):
                    redundant = True
                    break
            if not redundant:
                D.append(g1)
        E = [g for g in D if not _coprime(lh, leads[g])]
        keep = []
        for (a, b, s, L) in pairs:
            if divides(lh, L) and lcm(leads[a], lh) != L and lcm(lh, leads[b]) != L:
                continue
            keep.append((a, b, s, L))
        for g in E:
            L = lcm(leads[g], lh)
            deg = sum(L)
            s = max(sugars[g] + deg - sum(leads[g]), sugars[h] + deg - sum(lh))
            keep.append((g, h, s, L))
        pairs[:] = keep
        active[:] = [g for g in active if not divides(lh, leads[g])] + [h]

    for g in fixed:
        if not g:
            continue
        idx = len(polys)
        polys.append(R.monic(g))
        cofs.append(zero_vec())
        leads.append(R.lead_exp(g))
        sugars.append(R.degree(g))
        active.append(idx)

    for k, g in enumerate(tracked):
        vec = zero_vec()
        vec[k] = R.const(1)
        cur = [polys[i] for i in active]
        r, rc = _reduce(R, g, vec if track else None, cur, [leads[i] for i in active],
                        [cofs[i] for i in active] if track else None)
        if not r:
            continue
        if R.is_constant(r):
            return unit_result(r, rc)
        _, lc = R.lead(r)
        inv = F.inv(lc)
        r = R.scale(r, inv)
        rc = [R.scale(x, inv) for x in rc] if track else zero_vec()
        if cof_reducer is not None and track:
            rc = [cof_reducer(x) for x in rc]
        add_element(r, rc, R.degree(g))

    handled = 0
    while pairs:
        handled += 1
        if handled > caps.max_pairs:
            raise ResourceExceeded(f"more than {caps.max_pairs} critical pairs processed")
        best = min(range(len(pairs)), key=lambda i: (pairs[i][2], R.key(pairs[i][3])))
        a, b, sugar, L = pairs.pop(best)
        # S-polynomial with cofactors
        fa, fb = polys[a], polys[b]
        ma, mb = mono_div(L, leads[a]), mono_div(L, leads[b])
        ca, cb = F.inv(fa[leads[a]]), F.inv(fb[leads[b]])
        s = R.sub(R.mul_term(fa, ma, ca), R.mul_term(fb, mb, cb))
        sc = None
        if track:
            sc = [R.sub(R.mul_term(x, ma, ca), R.mul_term(y, mb, cb))
                  for x, y in zip(cofs[a], cofs[b])]
        cur = [polys[i] for i in active]
        r, rc = _reduce(R, s, sc, cur, [leads[i] for i in active],
                        [cofs[i] for i in active] if track else None)
        if not r:
            continue
        if R.is_constant(r):
            return unit_result(r, rc)
        _, lc = R.lead(r)
        inv = F.inv(lc)
        r = R.scale(r, inv)
        rc = [R.scale(x, inv) for x in rc] if track else zero_vec()
        if cof_reducer is not None and track:
            rc = [cof_reducer(x) for x in rc]
        add_element(r, rc, sugar)

    # interreduce the active elements into the reduced basis
    idxs = sorted(active, key=lambda i: R.key(leads[i]))
    final_p, final_c = [], []
    for i in idxs:
        others = [j for j in idxs if j != i]
        g = polys[i]
        le = leads[i]
        tail = {e: c for e, c in g.items() if e != le}
        tr, tc = _reduce(R, tail, cofs[i] if track else None, [polys[j] for j in others],
                         [leads[j] for j in others], [cofs[j] for j in others] if track else None)
        red = dict(tr)
        red[le] = g[le]
        inv = F.inv(g[le])
        red = R.scale(red, inv)
        vec = [R.scale(x, inv) for x in tc] if track else zero_vec()
        if cof_reducer is not None and track:
            vec = [cof_reducer(x) for x in vec]
        final_p.append(red)
        final_c.append(vec)
    order = sorted(range(len(final_p)), key=lambda k: R.key(R.lead_exp(final_p[k])))
    return GroebnerResult(R, [final_p[k] for k in order], [final_c[k] for k in order], ng)


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))
