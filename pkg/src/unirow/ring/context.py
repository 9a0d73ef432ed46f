"""Exact rings ``k[x_1..x_v]/I`` with canonical normal forms.

:func:`make_ring` turns a :class:`RingDescriptor` into an immutable
:class:`RingContext` holding a reduced Groebner basis of the relations.
Elements (:class:`RingElement`) always store their normal form, so equality
is a dictionary comparison.

Ideal membership with witnesses (:meth:`RingContext.ideal_cofactors`) runs
Buchberger on ``relations + gens`` tracking cofactors of ``gens`` only;
relation elements vanish in the quotient, so their cofactors are dropped.
"""

import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from ..errors import (ArityMismatch, ContextMismatch, DuplicateVariable, NotAUnit,
                      NotInIdeal, NotUnimodular, SessionSyntaxError, UnirowError)
from ..expr import evaluate, parse_expr
from .fields import PrimeField, RationalField, field_from_tag
from .groebner import DEFAULT_CAPS, buchberger
from .poly import PolyRing


class RingElement:
    """An element of a ring, stored in canonical form."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.ring.element(other).value
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return RingElement(self.ring, self.ring._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return RingElement(self.ring, self.ring._sub(self.value, v))

    def __rsub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return RingElement(self.ring, self.ring._sub(v, self.value))

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return RingElement(self.ring, self.ring._mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.value))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                return False
            return self.ring._eq(self.value, other.value)
        if isinstance(other, (int, Fraction)):
            return self.ring._eq(self.value, self.ring.element(other).value)
        return NotImplemented

    def __hash__(self):
        return hash(self.ring._key(self.value))

    def is_zero(self):
        return self.ring._is_zero(self.value)

    def is_one(self):
        return self.ring._eq(self.value, self.ring.one.value)

    @property
    def poly(self):
        return self.ring._poly(self.value)

    def __str__(self):
        return self.ring.to_str(self)

    def __repr__(self):
        return f"<{self.ring.short_name()}: {self.ring.to_str(self)}>"


class BaseRing:
    """Shared behaviour of polynomial quotient rings and residue rings."""

    def _wrap(self, v):
        return RingElement(self, v)

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def parse(self, text, names=None):
        return evaluate(parse_expr(text), self, names)

    def one_combination(self, gens):
        """Coefficients ``b`` with ``sum(g_i * b_i) == 1``."""
        if not gens:
            raise NotUnimodular("empty generator list")
        try:
            return self.ideal_cofactors(gens, self.one)
        except NotInIdeal as exc:
            raise NotUnimodular(f"1 is not in the ideal generated by {[str(g) for g in gens]}") from exc

    def invert_unit(self, u):
        try:
            (q,) = self.ideal_cofactors([u], self.one)
        except NotInIdeal as exc:
            raise NotAUnit(f"{u} is not a unit") from exc
        return q

    def in_ideal(self, gens, f):
        try:
            self.ideal_cofactors(gens, f)
            return True
        except NotInIdeal:
            return False

    def _check_combination(self, gens, coeffs, f):
        total = self.zero
        for g, c in zip(gens, coeffs):
            total = total + g * c
        if total != f:
            raise UnirowError("internal error: cofactor identity failed re-verification")


@dataclass(frozen=True)
class RingDescriptor:
    base: str
    vars: tuple = ()
    relations: tuple = ()
    order: str = "degrevlex"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "relations", tuple(self.relations))


class RingContext(BaseRing):
    """``k[vars]/(relations)`` with a reduced Groebner basis of the relations."""

    def __init__(self, descriptor, caps=DEFAULT_CAPS):
        d = descriptor
        if d.base.startswith("Zmod:"):
            raise UnirowError("use ResidueRing for Zmod bases")
        self.field = field_from_tag(d.base)
        names = list(d.vars)
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise DuplicateVariable(f"duplicate variable(s) {dup}")
        if d.order not in ("degrevlex", "lex"):
            raise UnirowError(f"unknown monomial order {d.order!r}")
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(names)}
        self.R = PolyRing(self.field, len(names), d.order)
        self.caps = caps
        self._scalar = len(names) == 0
        # parse relations in the free polynomial ring
        rels = []
        for text in d.relations:
            p = self._parse_free(text) if isinstance(text, str) else dict(text)
            if p:
                rels.append(p)
        self.relation_polys = rels
        self.descriptor = RingDescriptor(d.base, self.names,
                                         tuple(self._poly_str(p) for p in rels), d.order)
        self._lock = threading.Lock()
        self._cache = {}
        if rels:
            self.gb = buchberger(self.R, rels, caps=caps)
        else:
            self.gb = None
        self.zero_ring = self.gb is not None and self.gb.unit
        self.is_domain = not rels

    # -- identity ------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, RingContext) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def short_name(self):
        base = self.descriptor.base
        if not self.names:
            return base
        s = f"{base}[{','.join(self.names)}]"
        if self.descriptor.relations:
            s += "/(" + ", ".join(self.descriptor.relations) + ")"
        return s

    __repr__ = short_name

    # -- value primitives ----------------------------------------------
    def _nf_poly(self, p):
        if self.gb is None or not p:
            return p
        return self.gb.reduce(p)

    def _from_poly(self, p):
        p = self._nf_poly(p)
        if self._scalar:
            return self.R.constant_value(p)
        return p

    def _poly(self, v):
        if self._scalar:
            return {} if self.field.is_zero(v) else {(): v}
        return v

    def _add(self, a, b):
        if self._scalar:
            return self.field.add(a, b)
        return self.R.add(a, b)

    def _sub(self, a, b):
        if self._scalar:
            return self.field.sub(a, b)
        return self.R.sub(a, b)

    def _neg(self, a):
        if self._scalar:
            return self.field.neg(a)
        return self.R.neg(a)

    def _mul(self, a, b):
        if self._scalar:
            return self.field.mul(a, b) if not self.zero_ring else self.field.zero
        return self._nf_poly(self.R.mul(a, b))

    def _is_zero(self, a):
        if self._scalar:
            return self.field.is_zero(a)
        return not a

    def _eq(self, a, b):
        return a == b

    def _key(self, a):
        if self._scalar:
            return a
        return frozenset(a.items())

    # -- construction --------------------------------------------------
    def element(self, x):
        if isinstance(x, RingElement):
            if x.ring is self or x.ring == self:
                return x
            raise ContextMismatch(f"element of {x.ring} used in {self}")
        if isinstance(x, (int, Fraction)):
            return self._wrap(self._from_poly(self.R.const(x)))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, dict):
            return self.normal_form(x)
        raise TypeError(f"cannot build a ring element from {x!r}")

    def var(self, name):
        if name not in self._index:
            raise SessionSyntaxError(f"unknown variable {name!r}")
        return self._wrap(self._from_poly(self.R.var(self._index[name])))

    def gens(self):
        return [self.var(n) for n in self.names]

    def normal_form(self, f):
        """Remainder of the polynomial ``f`` against the relation basis."""
        for e in f:
            if len(e) != self.R.nvars:
                raise ArityMismatch(f"exponent {e} does not match {self.R.nvars} variables")
        return self._wrap(self._from_poly({e: self.field.coerce(c) for e, c in f.items()
                                            if not self.field.is_zero(self.field.coerce(c))}))

    def divide_by_constant(self, a, b):
        p = b.poly
        if not self.R.is_constant(p) or not p:
            raise SessionSyntaxError("division is only allowed by a nonzero constant")
        inv = self.field.inv(self.R.constant_value(p))
        return a * self._wrap(self._from_poly({self.R.unit_exp: inv}))

    def _parse_free(self, text):
        """Parse ``text`` as a polynomial without reducing modulo relations."""
        return evaluate(parse_expr(text), _FreeView(self)).p

    # -- queries -------------------------------------------------------
    def is_field(self):
        return self._scalar and not self.zero_ring

    def is_constant(self, x):
        return self.R.is_constant(x.poly)

    def scalar(self, x):
        """Field value of a constant element."""
        p = x.poly
        if not self.R.is_constant(p):
            raise UnirowError(f"{x} is not a constant")
        return self.R.constant_value(p)

    def divide_exact(self, a, b):
        """``a / b`` in a domain when ``b`` divides ``a`` (Bareiss support)."""
        if self._scalar:
            return self._wrap(self.field.mul(a.value, self.field.inv(b.value)))
        q = self.R.divide_exact(a.poly, b.poly)
        if q is None:
            raise UnirowError("inexact division")
        return self._wrap(self._from_poly(q))

    def elements(self):
        """All elements of a finite prime field with no variables."""
        if not self._scalar or not isinstance(self.field, PrimeField):
            raise UnirowError("ring is not a finite field")
        return [self._wrap(v) for v in range(self.field.p)]

    def random_element(self, rng, degree=2, terms=3, coeff_range=5):
        if self._scalar:
            if isinstance(self.field, PrimeField):
                return self._wrap(rng.randrange(self.field.p))
            num = rng.randint(-coeff_range, coeff_range)
            den = rng.randint(1, 3)
            return self._wrap(Fraction(num, den))
        p = {}
        n = self.R.nvars
        for _ in range(terms):
            e = [0] * n
            for _ in range(rng.randint(0, degree)):
                e[rng.randrange(n)] += 1
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                p = self.R.add(p, {tuple(e): self.field.coerce(c)})
        return self._wrap(self._from_poly(p))

    # -- ideals --------------------------------------------------------
    def _ideal_basis(self, gens):
        key = tuple(self._key(g.value) for g in gens)
        with self._lock:
            hit = self._cache.get(("ideal", key))
        if hit is not None:
            return hit
        polys = [g.poly for g in gens]
        fixed = self.gb.polys if self.gb is not None else ()
        res = buchberger(self.R, polys, fixed=fixed, caps=self.caps,
                         cof_reducer=self._nf_poly if self.gb is not None else None)
        with self._lock:
            self._cache[("ideal", key)] = res
        return res

    def ideal_cofactors(self, gens, f):
        """Coefficients ``c`` with ``sum(c_i * gens_i) == f`` in this ring.

        Raises NotInIdeal when ``f`` is not in the ideal generated by gens.
        The identity is re-verified exactly before returning.
        """
        gens = [self.element(g) for g in gens]
        f = self.element(f)
        if f.is_zero():
            return [self.zero for _ in gens]
        if not gens:
            raise NotInIdeal(f"{f} is not in the zero ideal")
        if self._scalar:
            for k, g in enumerate(gens):
                if not g.is_zero():
                    out = [self.zero] * len(gens)
                    out[k] = self._wrap(self.field.mul(f.value, self.field.inv(g.value)))
                    return out
            raise NotInIdeal(f"{f} is not in the zero ideal")
        res = self._ideal_basis(gens)
        r, comb = res.reduce(f.poly, track=True,
                             cof_reducer=self._nf_poly if self.gb is not None else None)
        if r:
            raise NotInIdeal(f"{f} is not in the ideal")
        coeffs = [self._wrap(self._from_poly(c)) for c in comb]
        self._check_combination(gens, coeffs, f)
        return coeffs

    def quotient(self, gens):
        """The ring ``self / (gens)``, sharing variables and field."""
        gens = [self.element(g) for g in gens]
        key = tuple(self._key(g.value) for g in gens)
        with self._lock:
            hit = self._cache.get(("quotient", key))
        if hit is not None:
            return hit
        extra = tuple(self._poly_str(g.poly) for g in gens if not g.is_zero())
        d = self.descriptor
        q = RingContext(RingDescriptor(d.base, d.vars, d.relations + extra, d.order), self.caps)
        with self._lock:
            self._cache[("quotient", key)] = q
        return q

    def lift(self, x):
        """Reinterpret an element of a quotient of this ring (or of this ring)."""
        return self._wrap(self._from_poly(x.poly))

    def reduce(self, x):
        """Image of an element of a ring this one is a quotient of."""
        return self._wrap(self._from_poly(x.poly))

    # -- printing ------------------------------------------------------
    def _poly_str(self, p):
        if not p:
            return "0"
        F = self.field
        parts = []
        for e, c in self.R.sorted_terms(p):
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k)
            if isinstance(F, RationalField):
                neg = c < 0
                mag = -c if neg else c
            else:
                neg = False
                mag = c
            cs = F.to_str(mag)
            if mono:
                term = mono if cs == "1" else f"{cs}*{mono}"
            else:
                term = cs
            parts.append(("-" if neg else "+", term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, term in parts[1:]:
            out += f" {sgn} {term}"
        return out

    def to_str(self, x):
        return self._poly_str(x.poly)

    def relation_basis(self):
        """The reduced Groebner basis of the relations, as strings."""
        return [] if self.gb is None else [self._poly_str(g) for g in self.gb.polys]


class _FreePoly:
    """Minimal element wrapper used to parse relations before the basis exists."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v
        self.p = p

    def __add__(self, o):
        return _FreePoly(self.v, self.v.R.add(self.p, o.p))

    def __sub__(self, o):
        return _FreePoly(self.v, self.v.R.sub(self.p, o.p))

    def __mul__(self, o):
        return _FreePoly(self.v, self.v.R.mul(self.p, o.p))

    def __neg__(self):
        return _FreePoly(self.v, self.v.R.neg(self.p))

    def __pow__(self, n):
        return _FreePoly(self.v, self.v.R.pow(self.p, n))


class _FreeView:
    def __init__(self, ctx):
        self.ctx = ctx
        self.R = ctx.R

    def element(self, n):
        return _FreePoly(self, self.R.const(n))

    def var(self, name):
        if name not in self.ctx._index:
            raise SessionSyntaxError(f"unknown variable {name!r}")
        return _FreePoly(self, self.R.var(self.ctx._index[name]))

    def divide_by_constant(self, a, b):
        if not self.R.is_constant(b.p) or not b.p:
            raise SessionSyntaxError("division is only allowed by a nonzero constant")
        inv = self.R.field.inv(self.R.constant_value(b.p))
        return _FreePoly(self, self.R.scale(a.p, inv))


def make_ring(descriptor, caps=DEFAULT_CAPS):
    """Build a ring context (or a residue ring for ``Zmod:<m>`` bases)."""
    if descriptor.base.startswith("Zmod:"):
        from .residue import ResidueRing
        if descriptor.vars or descriptor.relations:
            raise UnirowError("Zmod bases take no variables or relations")
        return ResidueRing(int(descriptor.base[5:]))
    return RingContext(descriptor, caps)


def ring(base="Q", vars=(), relations=(), order="degrevlex", caps=DEFAULT_CAPS):
    """Convenience wrapper: ``ring("Q", ["x","y"], ["x^2+y^2-1"])``."""
    if isinstance(vars, str):
        vars = [v.strip() for v in vars.split(",") if v.strip()]
    return make_ring(RingDescriptor(base, tuple(vars), tuple(relations), order), caps)
