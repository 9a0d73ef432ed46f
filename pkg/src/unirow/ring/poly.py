"""Sparse multivariate polynomials over a coefficient field.

A polynomial is a plain ``dict`` mapping exponent tuples to nonzero field
coefficients.  :class:`PolyRing` bundles the field, the number of variables
and the monomial order, and provides the arithmetic.  Nothing here knows
about ideals; see :mod:`unirow.ring.groebner` for that.
"""

from ..errors import ArityMismatch


def degrevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp):
    return exp


ORDERS = {"degrevlex": degrevlex_key, "lex": lex_key}


def divides(a, b):
    """True if monomial ``a`` divides monomial ``b``."""
    return all(x <= y for x, y in zip(a, b))


def lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class PolyRing:
    def __init__(self, field, nvars, order="degrevlex"):
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.field = field
        self.nvars = nvars
        self.order = order
        self._keyfn = ORDERS[order]
        self._keys = {}
        self.unit_exp = (0,) * nvars

    # -- order ---------------------------------------------------------
    def key(self, exp):
        k = self._keys.get(exp)
        if k is None:
            k = self._keyfn(exp)
            if len(self._keys) < 200000:
                self._keys[exp] = k
        return k

    def lead_exp(self, f):
        return max(f, key=self.key)

    def lead(self, f):
        e = max(f, key=self.key)
        return e, f[e]

    def sorted_terms(self, f):
        return sorted(f.items(), key=lambda t: self.key(t[0]), reverse=True)

    # -- constructors --------------------------------------------------
    def const(self, c):
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return {}
        return {self.unit_exp: c}

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): self.field.one}

    def monomial(self, exp, c=None):
        if len(exp) != self.nvars:
            raise ArityMismatch(f"exponent {exp} has wrong arity")
        return {tuple(exp): self.field.one if c is None else c}

    # -- arithmetic ----------------------------------------------------
    def add(self, f, g):
        F = self.field
        if len(f) < len(g):
            f, g = g, f
        h = dict(f)
        for e, c in g.items():
            if e in h:
                s = F.add(h[e], c)
                if F.is_zero(s):
                    del h[e]
                else:
                    h[e] = s
            else:
                h[e] = c
        return h

    def neg(self, f):
        F = self.field
        return {e: F.neg(c) for e, c in f.items()}

    def sub(self, f, g):
        F = self.field
        h = dict(f)
        for e, c in g.items():
            if e in h:
                s = F.sub(h[e], c)
                if F.is_zero(s):
                    del h[e]
                else:
                    h[e] = s
            else:
                h[e] = F.neg(c)
        return h

    def scale(self, f, c):
        F = self.field
        if F.is_zero(c):
            return {}
        return {e: F.mul(v, c) for e, v in f.items()}

    def mul_term(self, f, exp, c):
        F = self.field
        if F.is_zero(c):
            return {}
        return {mono_mul(e, exp): F.mul(v, c) for e, v in f.items()}

    def sub_mul_term(self, f, g, exp, c):
        """``f - c*x^exp*g`` computed in place on a copy of ``f``."""
        F = self.field
        h = dict(f)
        for e, v in g.items():
            m = mono_mul(e, exp)
            t = F.mul(v, c)
            if m in h:
                s = F.sub(h[m], t)
                if F.is_zero(s):
                    del h[m]
                else:
                    h[m] = s
            else:
                h[m] = F.neg(t)
        return h

    def mul(self, f, g):
        F = self.field
        if not f or not g:
            return {}
        if len(f) < len(g):
            f, g = g, f
        h = {}
        for e2, c2 in g.items():
            for e1, c1 in f.items():
                m = tuple(x + y for x, y in zip(e1, e2))
                t = F.mul(c1, c2)
                if m in h:
                    s = F.add(h[m], t)
                    if F.is_zero(s):
                        del h[m]
                    else:
                        h[m] = s
                elif not F.is_zero(t):
                    h[m] = t
        return h

    def pow(self, f, n):
        result = self.const(1)
        base = f
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def monic(self, f):
        _, c = self.lead(f)
        return self.scale(f, self.field.inv(c))

    # -- queries -------------------------------------------------------
    def degree(self, f):
        if not f:
            return -1
        return max(sum(e) for e in f)

    def is_constant(self, f):
        return not f or (len(f) == 1 and self.unit_exp in f)

    def constant_value(self, f):
        return f.get(self.unit_exp, self.field.zero)

    def divide_exact(self, f, g):
        """Quotient ``f / g`` when ``g`` divides ``f``; ``None`` otherwise."""
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        ge, gc = self.lead(g)
        ginv = F.inv(gc)
        q = {}
        r = dict(f)
        while r:
            e, c = self.lead(r)
            if not divides(ge, e):
                return None
            m = mono_div(e, ge)
            t = F.mul(c, ginv)
            q[m] = t
            r = self.sub_mul_term(r, g, m, t)
        return q
