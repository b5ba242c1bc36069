"""Truncated big Witt vectors over commutative rings.

Witt vectors are indexed by truncation sets (finite divisor-closed sets of
positive integers).  Besides ring arithmetic the package provides
restriction, Frobenius, Verschiebung, the multiplicative norm ``N_d`` and
``theta_p``, each computed through ghost coordinates over torsion-free rings
and through derived universal integer polynomials over rings with torsion.
"""

from .errors import WittError
from .ghost import (
    ghost_frobenius,
    ghost_inverse,
    ghost_inverse_batch,
    ghost_map,
    ghost_map_batch,
    ghost_norm,
    ghost_theta,
    ghost_verschiebung,
)
from .identities import IDENTITIES, check_identity
from .ring import ZZ, CyclotomicRing, IntegerRing, ModularRing, PolynomialRing, RingElement, make_ring, primitive_root
from .trunc import TruncationSet, all_truncation_sets, divisor_set, from_elements, p_typical, quotient, scale
from .universal import PolyCache, PolyCacheKey, SizeLimits, cache_load, cache_store, canonical_vector, derive
from .vectors import GhostVector, WittVector
from .witt import (
    frobenius,
    norm,
    norm_via_definition,
    restrict,
    teichmuller,
    theta,
    verschiebung,
    witt_add,
    witt_int,
    witt_mul,
    witt_neg,
    witt_one,
    witt_pow,
    witt_scalar,
    witt_sub,
    witt_zero,
)

__version__ = "0.1.0"
