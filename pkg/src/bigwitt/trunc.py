"""Truncation sets: finite subsets of {1, 2, ...} closed under taking divisors."""

from functools import lru_cache

from sympy.ntheory import divisors as _sympy_divisors
from sympy.ntheory import isprime

from .errors import CeilingExceeded, NonPositiveEntry, NotDivisorClosed, NotPrime

DEFAULT_CEILING = 10**6


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple:
    """Ascending positive divisors of ``n``."""
    return tuple(_sympy_divisors(n))


def require_prime(p):
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p!r} is not prime")
    return p


class TruncationSet:
    """A finite divisor-closed set of positive integers.

    Instances are immutable; ``elements`` is strictly ascending.  Construct
    them with :func:`from_elements`, :func:`divisor_set`, :func:`p_typical`,
    :func:`quotient` or :func:`scale` rather than directly.
    """

    __slots__ = ("elements", "_members", "_index")

    def __init__(self, elements):
        elements = tuple(elements)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_members", frozenset(elements))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(elements)})

    def __setattr__(self, name, value):
        raise AttributeError("TruncationSet is immutable")

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, s):
        return s in self._members

    def __eq__(self, other):
        if isinstance(other, TruncationSet):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other):
        return self._members <= other._members

    def __repr__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"

    def index(self, s):
        return self._index[s]

    @property
    def max(self):
        return self.elements[-1] if self.elements else 0

    def to_csv(self):
        return ",".join(map(str, self.elements))


def _check_ceiling(values, ceiling):
    if values and max(values) > ceiling:
        raise CeilingExceeded(f"element {max(values)} exceeds the ceiling {ceiling}")


def from_elements(raw, ceiling=DEFAULT_CEILING) -> TruncationSet:
    """Validate ``raw`` and return it as a sorted, deduplicated truncation set.

    Missing divisors are reported, never filled in.
    """
    values = set()
    for v in raw:
        if isinstance(v, bool) or int(v) != v:
            raise NonPositiveEntry(f"{v!r} is not a positive integer")
        v = int(v)
        if v < 1:
            raise NonPositiveEntry(f"{v} is not a positive integer")
        values.add(v)
    _check_ceiling(values, ceiling)
    for t in sorted(values):
        for e in divisors(t):
            if e not in values:
                raise NotDivisorClosed(t, e)
    return TruncationSet(sorted(values))


def _require_positive(d):
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise NonPositiveEntry(f"{d!r} is not a positive integer")


def divisor_set(d: int) -> TruncationSet:
    _require_positive(d)
    _check_ceiling([d], DEFAULT_CEILING)
    return TruncationSet(divisors(d))


def p_typical(p: int, n: int) -> TruncationSet:
    """The set {1, p, ..., p^(n-1)}."""
    require_prime(p)
    _require_positive(n)
    _check_ceiling([p ** (n - 1)], DEFAULT_CEILING)
    return TruncationSet(p**i for i in range(n))


@lru_cache(maxsize=4096)
def quotient(S: TruncationSet, d: int) -> TruncationSet:
    """``S/d = {n : d*n in S}``."""
    _require_positive(d)
    return TruncationSet(s // d for s in S.elements if s % d == 0)


@lru_cache(maxsize=4096)
def scale(S: TruncationSet, d: int) -> TruncationSet:
    """``<d>S = {e*s : e | d, s in S}``; always satisfies ``quotient(scale(S, d), d) == S``."""
    _require_positive(d)
    result = TruncationSet(sorted({e * s for e in divisors(d) for s in S.elements}))
    assert quotient(result, d) == S
    return result


def is_divisor_closed(values) -> bool:
    members = set(values)
    return all(e in members for t in members for e in divisors(t))


def sub_truncation_sets(S: TruncationSet, limit=None):
    """Divisor-closed subsets of ``S`` in a deterministic order.

    With ``limit`` set, stops after that many; the principal sets ``<s>`` and
    ``S`` itself are always produced first.
    """
    seen = set()
    ordered = [S] + [divisor_set(s) for s in S.elements] + [TruncationSet(())]
    for T in ordered:
        if T not in seen:
            seen.add(T)
            yield T
            if limit is not None and len(seen) >= limit:
                return
    for T in _down_sets(S.elements):
        if T not in seen:
            seen.add(T)
            yield T
            if limit is not None and len(seen) >= limit:
                return


def _down_sets(elements):
    chosen = []
    members = set()

    def rec(i):
        if i == len(elements):
            yield TruncationSet(chosen)
            return
        yield from rec(i + 1)
        t = elements[i]
        if all(e in members for e in divisors(t)[:-1]):
            chosen.append(t)
            members.add(t)
            yield from rec(i + 1)
            chosen.pop()
            members.discard(t)

    yield from rec(0)


def all_truncation_sets(max_element: int):
    """Every truncation set whose elements are at most ``max_element``."""
    return _down_sets(tuple(range(1, max_element + 1)))
