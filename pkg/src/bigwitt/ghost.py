"""The ghost map, its inverse over torsion-free rings, and ghost-side structure maps.

On ghost coordinates every structure map is elementary:

* Frobenius       ``(F_d x)_n = x_{dn}``
* Verschiebung    ``(V_d x)_s = d * x_{s/d}`` if ``d | s``, else 0
* norm            ``(N_d x)_t = x_{t/g} ** g`` with ``g = gcd(d, t)``
* theta           ``(theta_p x)_s = (x_{ps} - x_s ** p) / p``
"""

from functools import lru_cache
from math import gcd

import numpy as np
from numba import njit

from .errors import NotDivisible, NotInGhostImage, NotSubset, TargetMismatch, TorsionRing
from .ring import ZZ, IntegerRing
from .trunc import TruncationSet, divisors, quotient, require_prime, scale
from .vectors import GhostVector, WittVector


@lru_cache(maxsize=8192)
def _plan(S: TruncationSet):
    """For each s in S: the triples (position of d, d, s // d) over proper divisors d of s."""
    idx = S.index
    return tuple(tuple((idx(d), d, s // d) for d in divisors(s)[:-1]) for s in S.elements)


def ghost_map(a: WittVector) -> GhostVector:
    """``x_s = sum over d | s of d * a_d ** (s/d)``."""
    S, R = a.set, a.ring
    coords = a.coords
    plan = _plan(S)
    out = []
    if isinstance(R, IntegerRing):
        for i, s in enumerate(S.elements):
            acc = s * coords[i]
            for j, d, e in plan[i]:
                acc += d * coords[j] ** e
            out.append(acc)
    else:
        for i, s in enumerate(S.elements):
            acc = R.times(coords[i], s)
            for j, d, e in plan[i]:
                acc = R.add(acc, R.times(R.pow(coords[j], e), d))
            out.append(acc)
    return GhostVector(S, R, out)


def ghost_inverse(x: GhostVector) -> WittVector:
    """The unique Witt vector with ghost coordinates ``x``.

    Solves for ``a_s`` in ascending ``s``; every ``a_d`` with ``d | s`` is
    known by then.  Raises :class:`NotInGhostImage` at the first ``s`` where
    the division by ``s`` is inexact.
    """
    S, R = x.set, x.ring
    if not R.torsion_free:
        raise TorsionRing(f"ghost coordinates do not determine Witt vectors over {R}")
    plan = _plan(S)
    a = []
    if isinstance(R, IntegerRing):
        for i, s in enumerate(S.elements):
            rest = x.coords[i]
            for j, d, e in plan[i]:
                rest -= d * a[j] ** e
            q, r = divmod(rest, s)
            if r:
                raise NotInGhostImage(s)
            a.append(q)
        return WittVector(S, R, a)
    for i, s in enumerate(S.elements):
        rest = x.coords[i]
        for j, d, e in plan[i]:
            rest = R.sub(rest, R.times(R.pow(a[j], e), d))
        try:
            a.append(R.divide_exact(rest, s))
        except NotDivisible:
            raise NotInGhostImage(s) from None
    return WittVector(S, R, a)


def ghost_frobenius(x: GhostVector, d: int) -> GhostVector:
    target = quotient(x.set, d)
    return GhostVector(target, x.ring, [x.raw(d * n) for n in target])


def ghost_verschiebung(x: GhostVector, d: int, T: TruncationSet) -> GhostVector:
    """``V_d`` into the caller's target ``T``, which must satisfy ``T/d == x.set``."""
    if quotient(T, d) != x.set:
        raise TargetMismatch(f"{T}/{d} is not {x.set}")
    R = x.ring
    zero = R.embed(0)
    out = [R.times(x.raw(t // d), d) if t % d == 0 else zero for t in T]
    return GhostVector(T, R, out)


def ghost_norm(x: GhostVector, d: int) -> GhostVector:
    target = scale(x.set, d)
    R = x.ring
    out = []
    for t in target:
        g = gcd(d, t)
        assert t // g in x.set
        out.append(R.pow(x.raw(t // g), g))
    return GhostVector(target, R, out)


def ghost_theta(x: GhostVector, p: int) -> GhostVector:
    require_prime(p)
    R = x.ring
    if not R.torsion_free:
        raise TorsionRing(f"theta on ghost coordinates needs a torsion-free ring, not {R}")
    target = quotient(x.set, p)
    out = []
    for s in target:
        diff = R.sub(x.raw(p * s), R.pow(x.raw(s), p))
        try:
            out.append(R.divide_exact(diff, p))
        except NotDivisible:
            raise NotInGhostImage(s, f"theta coordinate {s}: x_{p * s} - x_{s}^{p} is not divisible by {p}") from None
    return GhostVector(target, R, out)


def ghost_restrict(x: GhostVector, T: TruncationSet) -> GhostVector:
    if not T <= x.set:
        raise NotSubset(f"{T} is not contained in {x.set}")
    return GhostVector(T, x.ring, [x.raw(t) for t in T])


def ghost_constant(S: TruncationSet, R, n: int) -> GhostVector:
    """Ghost coordinates of the integer ``n`` in ``W_S``: every coordinate is ``n``."""
    v = R.embed(n)
    return GhostVector(S, R, [v] * len(S))


# -- batched integer path -------------------------------------------------

# magnitude bounds below this guarantee int64 arithmetic is exact
_INT64_SAFE = float(1 << 62)
_FLOAT_EXACT = 1 << 52


class _BatchPlan:
    """Divisor terms of every ``s`` in ``S`` as flat arrays for the compiled kernels.

    Terms ``ptr[i]:ptr[i+1]`` are the ``d | s`` in ascending order, so the last
    one of each run is ``d = s``.  Each term stores ``d`` and the slot of
    ``a_d ** (s/d)`` in a per-row power table, where column ``j`` owns
    ``top[j] = max(S/d)`` slots starting at ``off[j]``.
    """

    def __init__(self, S: TruncationSet):
        elems = S.elements
        m = len(elems)
        self.size = m
        self.svals = np.array(elems, dtype=np.int64)
        counts = np.array([len(divisors(s)) for s in elems], dtype=np.int64)
        dv = np.array([d for s in elems for d in divisors(s)], dtype=np.int64)
        pos = np.zeros(S.max + 1, dtype=np.int64)
        pos[self.svals] = np.arange(m)
        ev = np.repeat(self.svals, counts) // dv
        src = pos[dv]
        top = np.zeros(m, dtype=np.int64)
        np.maximum.at(top, src, ev)
        off = np.zeros(m + 1, dtype=np.int64)
        np.cumsum(top, out=off[1:])
        ptr = np.zeros(m + 1, dtype=np.int64)
        np.cumsum(counts, out=ptr[1:])
        self.terms = (ptr, dv, ev, off[src] + ev - 1, off, top)


@lru_cache(maxsize=4096)
def _batch_plan(S: TruncationSet) -> _BatchPlan:
    return _BatchPlan(S)


# Kernels work on transposed (column-major per coordinate) arrays so the
# innermost loops run over contiguous rows.


@njit(cache=True)
def _powers(buf, start, count, a):
    """Rows ``start + k`` of ``buf`` become ``a ** (k + 1)`` for ``k < count``."""
    n = a.shape[0]
    first = buf[start]
    for r in range(n):
        first[r] = a[r]
    for k in range(1, count):
        prev = buf[start + k - 1]
        cur = buf[start + k]
        for r in range(n):
            cur[r] = prev[r] * a[r]


@njit(cache=True)
def _ghost_cols(A, ptr, dv, ev, slot, off, top, X):
    """Fill ``X`` (shape m x n); returns False, untouched, when int64 exactness cannot be guaranteed."""
    m, n = A.shape
    big = 0.0
    for i in range(m):
        for r in range(n):
            big = max(big, abs(float(A[i, r])))
    # every coordinate is bounded by sum d * big^(s/d)
    for i in range(m):
        mag = 0.0
        for t in range(ptr[i], ptr[i + 1]):
            mag += dv[t] * big ** ev[t]
        if mag >= _INT64_SAFE:
            return False
    buf = np.empty((off[m], n), dtype=np.int64)
    for j in range(m):
        _powers(buf, off[j], top[j], A[j])
    for i in range(m):
        acc = X[i]
        for r in range(n):
            acc[r] = 0
        for t in range(ptr[i], ptr[i + 1]):
            d = dv[t]
            row = buf[slot[t]]
            for r in range(n):
                acc[r] += d * row[r]
    return True


@njit(cache=True)
def _unghost_cols(X, ptr, dv, ev, slot, off, top, svals, A):
    """Fill ``A`` (shape m x n); returns -1 on possible overflow, else the smallest s failing exact division (0 if none)."""
    m, n = X.shape
    # with |x_s| and every stored d * a_d^e below SAFE / (terms + 1), no partial sum overflows
    terms = 1
    for i in range(m):
        terms = max(terms, ptr[i + 1] - ptr[i])
    cap = _INT64_SAFE / (terms + 1)
    for i in range(m):
        for r in range(n):
            if abs(float(X[i, r])) >= cap:
                return -1
    buf = np.empty((off[m], n), dtype=np.int64)
    rest = np.empty(n, dtype=np.int64)
    for i in range(m):
        src = X[i]
        for r in range(n):
            rest[r] = src[r]
        # the last term of the run is d = s, solved for below
        for t in range(ptr[i], ptr[i + 1] - 1):
            d = dv[t]
            row = buf[slot[t]]
            for r in range(n):
                rest[r] -= d * row[r]
        s = svals[i]
        # |a_i| <= limit keeps s * a_i^top[i] under the cap
        limit = (cap / s) ** (1.0 / top[i]) * (1 - 1e-9)
        out = A[i]
        fs = float(s)
        for r in range(n):
            v = rest[r]
            # below 2^52 a float quotient is exact whenever the true one is an integer
            q = np.int64(float(v) / fs) if abs(v) < _FLOAT_EXACT else v // s
            if q * s != v:
                return s
            if abs(q) > limit:
                return -1
            out[r] = q
        _powers(buf, off[i], top[i], out)
    return 0


def _integer_array(M, size):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[1] != size:
        raise ValueError(f"expected a two-dimensional array with {size} columns")
    if M.dtype.kind not in "iuO":
        raise TypeError(f"expected an integer array, not {M.dtype}")
    return M


def _int64_ready(M):
    # uint64 could wrap when cast; object arrays may hold unbounded ints
    return M.size and (M.dtype.kind == "i" or (M.dtype.kind == "u" and M.dtype.itemsize < 8))


def ghost_map_batch(S: TruncationSet, A) -> np.ndarray:
    """Ghost coordinates of the integer Witt vectors in the rows of ``A``.

    ``A`` has one column per element of ``S``.  Runs in compiled int64 code
    when an a priori bound proves that exact, else falls back to Python
    integers (the result then has ``dtype=object``).  Agrees row by row with
    :func:`ghost_map` over the integers.
    """
    plan = _batch_plan(S)
    A = _integer_array(A, plan.size)
    if _int64_ready(A):
        At = np.ascontiguousarray(A.T, dtype=np.int64)
        Xt = np.empty_like(At)
        if _ghost_cols(At, *plan.terms, Xt):
            return Xt.T
    rows = [list(ghost_map(WittVector(S, ZZ, [int(v) for v in row])).coords) for row in A]
    return np.array(rows, dtype=object).reshape(A.shape)


def ghost_inverse_batch(S: TruncationSet, X) -> np.ndarray:
    """Integer Witt coordinates whose ghost coordinates are the rows of ``X``.

    Raises :class:`NotInGhostImage` at the smallest ``s`` where some row
    fails exact division.
    """
    plan = _batch_plan(S)
    X = _integer_array(X, plan.size)
    if _int64_ready(X):
        Xt = np.ascontiguousarray(X.T, dtype=np.int64)
        At = np.empty_like(Xt)
        status = _unghost_cols(Xt, *plan.terms, plan.svals, At)
        if status > 0:
            raise NotInGhostImage(int(status))
        if status == 0:
            return At.T
    rows = []
    bad = []
    for row in X:
        try:
            rows.append(list(ghost_inverse(GhostVector(S, ZZ, [int(v) for v in row])).coords))
        except NotInGhostImage as exc:
            bad.append(exc.s)
    if bad:
        raise NotInGhostImage(min(bad))
    return np.array(rows, dtype=object).reshape(X.shape)
