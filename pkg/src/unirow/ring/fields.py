"""Coefficient fields: the rationals and prime fields of odd characteristic."""

from fractions import Fraction

from ..errors import CharacteristicTwo, UnirowError


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class RationalField:
    """Arbitrary-precision rationals backed by :class:`fractions.Fraction`."""

    characteristic = 0
    tag = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def to_str(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def elements(self):
        raise UnirowError("Q is infinite")


class PrimeField:
    """Residues modulo an odd prime, stored as ints in ``[0, p)``."""

    def __init__(self, p):
        p = int(p)
        if p == 2:
            raise CharacteristicTwo("characteristic 2 is not supported")
        if not _is_prime(p):
            raise UnirowError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"
        self.zero = 0
        self.one = 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into F{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def to_str(self, a):
        return str(a)

    def elements(self):
        return range(self.p)


def field_from_tag(tag):
    """``"Q"`` or ``"Fp:<p>"`` to a field object."""
    tag = tag.strip()
    if tag == "Q":
        return RationalField()
    if tag.startswith("Fp:"):
        return PrimeField(int(tag[3:]))
    raise UnirowError(f"unknown base field {tag!r}")
