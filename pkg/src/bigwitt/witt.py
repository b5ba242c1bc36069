"""Arithmetic and structure maps on truncated big Witt vectors.

Every operation has two routes.  Over torsion-free rings the ghost map is
injective, so we compute on ghost coordinates and invert.  Over rings with
torsion that is impossible and we evaluate the universal integer polynomials
from :mod:`bigwitt.universal` instead.  ``method="auto"`` picks the ghost
route exactly when the ring is torsion-free; ``"ghost"`` and ``"universal"``
force a route, which is how the two are checked against each other.
"""

from functools import lru_cache
from math import comb

from . import universal
from .errors import IdentityFailure, NotSubset, TargetMismatch, TorsionRing
from .ghost import (
    ghost_constant,
    ghost_frobenius,
    ghost_inverse,
    ghost_map,
    ghost_norm,
    ghost_theta,
)
from .ring import ZZ, RingElement
from .trunc import TruncationSet, quotient, require_prime, scale
from .vectors import WittVector

__all__ = [
    "WittVector",
    "witt_zero",
    "witt_one",
    "witt_int",
    "witt_add",
    "witt_sub",
    "witt_neg",
    "witt_mul",
    "witt_pow",
    "witt_scalar",
    "restrict",
    "frobenius",
    "verschiebung",
    "norm",
    "norm_via_definition",
    "theta",
    "teichmuller",
    "addition_defect_coefficient",
]


def _route(R, method):
    if method == "auto":
        return "ghost" if R.torsion_free else "universal"
    if method == "ghost":
        if not R.torsion_free:
            raise TorsionRing(f"the ghost route is not available over {R}")
        return method
    if method == "universal":
        return method
    raise ValueError(f"unknown method {method!r}")


def _apply_universal(op, param, vectors, cache=None, limits=None):
    cache = cache or universal.default_cache()
    a = vectors[0]
    R = a.ring
    polys = cache.vector(op, param, a.set, limits)
    values = [v for vec in vectors for v in vec.coords]
    out = [p.poly.evaluate(R, values) for p in polys]
    return WittVector(universal.output_set(op, param, a.set), R, out)


def _check_pair(a, b):
    a._check_compatible(b)


def witt_zero(S: TruncationSet, R) -> WittVector:
    z = R.embed(0)
    return WittVector(S, R, [z] * len(S))


def witt_one(S: TruncationSet, R) -> WittVector:
    return witt_int(1, S, R)


@lru_cache(maxsize=1024)
def _integer_coords(n, S):
    return ghost_inverse(ghost_constant(S, ZZ, n)).coords


def witt_int(n: int, S: TruncationSet, R) -> WittVector:
    """The image of the integer ``n`` under ``Z -> W_S(R)``.

    Its coordinates are those of ``n`` in ``W_S(Z)`` (ghost ``<n, n, ...>``)
    pushed through ``Z -> R``.
    """
    return WittVector(S, R, [R.embed(c) for c in _integer_coords(n, S)])


def _lift(x, like):
    if isinstance(x, WittVector):
        return x
    if isinstance(x, int):
        return witt_int(x, like.set, like.ring)
    return NotImplemented


def witt_add(a: WittVector, b: WittVector, method="auto", cache=None) -> WittVector:
    _check_pair(a, b)
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_map(a) + ghost_map(b))
    return _apply_universal("sum", None, [a, b], cache)


def witt_neg(a: WittVector, method="auto", cache=None) -> WittVector:
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(-ghost_map(a))
    return _apply_universal("neg", None, [a], cache)


def witt_sub(a: WittVector, b: WittVector, method="auto", cache=None) -> WittVector:
    _check_pair(a, b)
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_map(a) - ghost_map(b))
    return witt_add(a, witt_neg(b, method, cache), method, cache)


def witt_mul(a: WittVector, b: WittVector, method="auto", cache=None) -> WittVector:
    _check_pair(a, b)
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_map(a) * ghost_map(b))
    return _apply_universal("prod", None, [a, b], cache)


def witt_pow(a: WittVector, n: int, method="auto", cache=None) -> WittVector:
    if not isinstance(n, int) or n < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_map(a) ** n)
    result = witt_one(a.set, a.ring)
    base = a
    while n:
        if n & 1:
            result = witt_mul(result, base, method, cache)
        n >>= 1
        if n:
            base = witt_mul(base, base, method, cache)
    return result


def witt_scalar(a: WittVector, n: int, method="auto", cache=None) -> WittVector:
    """``n * a`` for an integer ``n``.

    Off the ghost route this is double-and-add on the sum polynomials, which
    are far smaller than the product polynomials ``witt_int(n) * a`` needs.
    """
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_map(a) * n)
    if n < 0:
        return witt_neg(witt_scalar(a, -n, method, cache), method, cache)
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else witt_add(result, base, method, cache)
        n >>= 1
        if n:
            base = witt_add(base, base, method, cache)
    return witt_zero(a.set, a.ring) if result is None else result


def restrict(a: WittVector, T: TruncationSet) -> WittVector:
    if not T <= a.set:
        raise NotSubset(f"{T} is not contained in {a.set}")
    return WittVector(T, a.ring, [a.raw(t) for t in T])


def frobenius(a: WittVector, d: int, method="auto", cache=None) -> WittVector:
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_frobenius(ghost_map(a), d))
    return _apply_universal("frobenius", d, [a], cache)


def verschiebung(a: WittVector, d: int, T: TruncationSet) -> WittVector:
    """``V_d`` into ``T``; needs ``T/d == a.set``.  Exact in every ring."""
    if quotient(T, d) != a.set:
        raise TargetMismatch(f"{T}/{d} is {quotient(T, d)}, not {a.set}")
    R = a.ring
    zero = R.embed(0)
    return WittVector(T, R, [a.raw(t // d) if t % d == 0 else zero for t in T])


def norm(a: WittVector, d: int, method="auto", cache=None) -> WittVector:
    """The multiplicative norm ``N_d : W_S(k) -> W_<d>S(k)``."""
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_norm(ghost_map(a), d))
    return _apply_universal("norm", d, [a], cache)


def theta(a: WittVector, p: int, method="auto", cache=None) -> WittVector:
    """``theta_p : W_S(k) -> W_{S/p}(k)``, defined by ``F_p(a) = a^p + p*theta_p(a)``."""
    require_prime(p)
    if _route(a.ring, method) == "ghost":
        return ghost_inverse(ghost_theta(ghost_map(a), p))
    return _apply_universal("theta", p, [a], cache)


def teichmuller(r: RingElement, S: TruncationSet) -> WittVector:
    R = r.ring
    zero = R.embed(0)
    return WittVector(S, R, [r.value if s == 1 else zero for s in S])


def norm_via_definition(a: WittVector, p: int, S: TruncationSet | None = None) -> WittVector:
    """``a - V_p(theta_p(a))`` on ``U = a.set``, checked against :func:`norm`.

    The comparison runs on ``<p>S`` where ``S`` defaults to ``U/p``, the
    largest set whose scaled image fits in ``U``; a mismatch raises
    :class:`IdentityFailure`.
    """
    require_prime(p)
    if not a.ring.torsion_free:
        raise TorsionRing(f"norm_via_definition needs a torsion-free ring, not {a.ring}")
    U = a.set
    S = quotient(U, p) if S is None else S
    target = scale(S, p)
    if not target <= U:
        raise NotSubset(f"<{p}>{S} = {target} is not contained in {U}")
    result = witt_sub(a, verschiebung(theta(a, p), p, U))
    got = restrict(result, target)
    expected = norm(restrict(a, S), p)
    if got != expected:
        raise IdentityFailure(
            f"a - V_{p} theta_{p}(a) disagrees with N_{p}", witness={"a": a, "got": got, "expected": expected}
        )
    return result


def addition_defect_coefficient(p: int, i: int) -> int:
    """The integer ``binomial(p, i) / p`` for ``0 < i < p``."""
    q, r = divmod(comb(p, i), p)
    if r:
        raise ValueError(f"binomial({p}, {i}) is not divisible by {p}")
    return q

