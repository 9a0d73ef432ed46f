"""The finite rings Z/m used as ground-truth test surrogates.

Z/m is not an algebra over a field when m is not prime, so it gets its own
small implementation of the ring interface.  Ideal membership reduces to
gcd arithmetic: an ideal of Z/m is generated by a divisor of m.
"""

from math import gcd

from ..errors import CharacteristicTwo, NotInIdeal, SessionSyntaxError, UnirowError
from .context import BaseRing, RingDescriptor, RingElement
from .fields import _is_prime


def _xgcd(a, b):
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class ResidueRing(BaseRing):
    """Z/m for odd m (m = 1 gives the zero ring, used for degenerate quotients)."""

    def __init__(self, m):
        m = int(m)
        if m < 1:
            raise UnirowError("modulus must be positive")
        if m % 2 == 0:
            raise CharacteristicTwo(f"even modulus {m} rejected")
        self.m = m
        self.names = ()
        self.zero_ring = m == 1
        self.is_domain = _is_prime(m)
        self.descriptor = RingDescriptor(f"Zmod:{m}", (), (), "degrevlex")
        self._quotients = {}

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and other.m == self.m

    def __hash__(self):
        return hash(("Zmod", self.m))

    def short_name(self):
        return f"Z/{self.m}"

    __repr__ = short_name

    # primitives
    def _add(self, a, b):
        return (a + b) % self.m

    def _sub(self, a, b):
        return (a - b) % self.m

    def _neg(self, a):
        return (-a) % self.m

    def _mul(self, a, b):
        return (a * b) % self.m

    def _is_zero(self, a):
        return a == 0

    def _eq(self, a, b):
        return a == b

    def _key(self, a):
        return a

    def _poly(self, a):
        return {} if a == 0 else {(): a}

    def element(self, x):
        if isinstance(x, RingElement):
            if x.ring == self:
                return x
            if isinstance(x.ring, ResidueRing):
                return self._wrap(x.value % self.m)
            raise UnirowError(f"cannot move {x!r} into Z/{self.m}")
        if isinstance(x, int):
            return self._wrap(x % self.m)
        if isinstance(x, str):
            return self.parse(x)
        from fractions import Fraction
        if isinstance(x, Fraction):
            return self.element(x.numerator) * self.invert_unit(self.element(x.denominator))
        raise TypeError(f"cannot build an element of Z/{self.m} from {x!r}")

    def var(self, name):
        raise SessionSyntaxError(f"Z/{self.m} has no variables (got {name!r})")

    def divide_by_constant(self, a, b):
        return a * self.invert_unit(b)

    def to_str(self, x):
        return str(x.value)

    # queries
    def is_field(self):
        return _is_prime(self.m)

    def is_constant(self, x):
        return True

    def scalar(self, x):
        return x.value

    def divide_exact(self, a, b):
        return a * self.invert_unit(b)

    def elements(self):
        return [self._wrap(v) for v in range(self.m)]

    def random_element(self, rng, **_):
        return self._wrap(rng.randrange(self.m))

    # ideals
    def ideal_cofactors(self, gens, f):
        gens = [self.element(g) for g in gens]
        f = self.element(f)
        if f.is_zero():
            return [self.zero for _ in gens]
        # invariant: g == sum(coeffs_i * gens_i) (mod m), and g divides m
        g, coeffs = self.m, [0] * len(gens)
        for k, x in enumerate(gens):
            d, s, t = _xgcd(g, x.value)
            coeffs = [(c * s) % self.m for c in coeffs]
            coeffs[k] = t % self.m
            g = d
        if f.value % g:
            raise NotInIdeal(f"{f.value} is not in the ideal of Z/{self.m}")
        scale = f.value // g
        out = [self._wrap((c * scale) % self.m) for c in coeffs]
        self._check_combination(gens, out, f)
        return out

    def quotient(self, gens):
        g = self.m
        for x in gens:
            g = gcd(g, self.element(x).value)
        if g not in self._quotients:
            self._quotients[g] = ResidueRing(g)
        return self._quotients[g]

    def lift(self, x):
        return self._wrap(x.value % self.m)

    def reduce(self, x):
        return self._wrap(x.value % self.m)
