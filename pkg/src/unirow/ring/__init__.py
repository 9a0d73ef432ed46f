"""Exact commutative rings: fields, polynomials, Groebner bases, quotients."""

from .context import BaseRing, RingContext, RingDescriptor, RingElement, make_ring, ring
from .fields import PrimeField, RationalField
from .groebner import DEFAULT_CAPS, Caps, buchberger
from .poly import PolyRing
from .residue import ResidueRing

__all__ = [
    "BaseRing", "Caps", "DEFAULT_CAPS", "PolyRing", "PrimeField", "RationalField",
    "ResidueRing", "RingContext", "RingDescriptor", "RingElement", "buchberger",
    "make_ring", "ring",
]
