"""Exact unimodular-row calculus, Vaserstein symbols and certificates.

Typical use::

    from unirow import ring, UnimodularRow, vaserstein_symbol
    S = ring("Q", ["x", "y", "z"], ["x^2 + y^2 + z^2 - 1"])
    v = UnimodularRow(S, ["x", "y", "z"], ["x", "y", "z"])
    vaserstein_symbol(v).pf      # 1
"""

from .errors import UnirowError
from .linear import (ElementaryWord, ExactMatrix, determinant, eval_word, invert_word, mat_ops,
                     pfaffian, standard_form, whitehead_factorization)
from .oracle import bounded_congruence_search, enumerate_um, find_orbit_word, orbit_bfs, same_orbit
from .ring import Caps, RingContext, RingDescriptor, ResidueRing, make_ring, ring
from .rows import (OrbitCertificate, UnimodularRow, apply_transvection, complete_from_certificate,
                   embed_row, factorial_completion, field_reduce_row, lift_e2_mod_action,
                   negate_first, square_scale, vaserstein_scale, verify_row)
from .witt import (CongruenceCertificate, SkewRepresentative, Triple, eta, field_reduce_skew,
                   h_conjugation_check, stabilize, symbol_inverse, symbol_power,
                   vaserstein_compose, vaserstein_symbol, witt_inverse, zeta)

__version__ = "0.1.0"
