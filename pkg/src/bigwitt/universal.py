"""Universal integer polynomials for Witt-coordinate operations.

Each operation (sum, product, negation, ``F_d``, ``N_d``, ``theta_p``) is
computed once on canonical Witt vectors over ``Z[a_s, b_s]``: map to ghost
coordinates, apply the ghost-side formula, and invert the ghost map.  The
resulting polynomials have integer coefficients and can be evaluated in any
commutative ring, torsion or not.
"""

import contextlib
import gc
import hashlib
import os
import threading
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CorruptFile,
    MissingBinding,
    NonIntegralCoefficient,
    NotInGhostImage,
    SizeBound,
    VersionMismatch,
)
from .ghost import ghost_frobenius, ghost_inverse, ghost_map, ghost_norm, ghost_theta
from .poly import Poly
from .ring import ZZ, PolynomialRing, RingElement
from .trunc import TruncationSet, from_elements, quotient, require_prime, scale
from .vectors import WittVector

CACHE_VERSION = "wittpoly v1"

UNARY_OPS = ("neg", "frobenius", "norm", "theta")
BINARY_OPS = ("sum", "prod")
PARAM_OPS = ("frobenius", "norm", "theta")
OPS = BINARY_OPS + UNARY_OPS


@dataclass(frozen=True)
class SizeLimits:
    """Refuse symbolic work on sets larger than this; term counts grow combinatorially."""

    max_element: int = 30
    max_size: int = 16


DEFAULT_LIMITS = SizeLimits()


@dataclass(frozen=True)
class PolyCacheKey:
    op: str
    param: int | None
    set: TruncationSet
    t: int

    def __post_init__(self):
        _check_op(self.op, self.param)


def _check_op(op, param):
    if op not in OPS:
        raise ValueError(f"unknown operation {op!r}; expected one of {', '.join(OPS)}")
    if op in PARAM_OPS:
        if isinstance(param, bool) or not isinstance(param, int) or param < 1:
            raise ValueError(f"{op} needs a positive integer parameter, got {param!r}")
        if op == "theta":
            require_prime(param)
    elif param is not None:
        raise ValueError(f"{op} takes no parameter")


def output_set(op, param, S: TruncationSet) -> TruncationSet:
    if op == "norm":
        return scale(S, param)
    if op in ("frobenius", "theta"):
        return quotient(S, param)
    return S


@lru_cache(maxsize=8192)
def variable_names(op, S: TruncationSet) -> tuple:
    names = tuple(f"a{s}" for s in S)
    if op in BINARY_OPS:
        names += tuple(f"b{s}" for s in S)
    return names


def check_limits(S: TruncationSet, limits: SizeLimits | None = None, what="set"):
    limits = limits or DEFAULT_LIMITS
    if S.max > limits.max_element or len(S) > limits.max_size:
        raise SizeBound(
            f"{what} {S} exceeds the symbolic bound "
            f"(max element {limits.max_element}, size {limits.max_size})"
        )


class UniversalPolynomial:
    """An integer polynomial together with the names of its variables."""

    __slots__ = ("poly", "variables")

    def __init__(self, poly: Poly, variables):
        self.poly = poly
        self.variables = tuple(variables)

    def to_text(self):
        return self.poly.to_text(self.variables)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"UniversalPolynomial({self.to_text()!r})"

    def __eq__(self, other):
        if isinstance(other, UniversalPolynomial):
            return self.variables == other.variables and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.poly))

    def evaluate(self, R, bindings) -> RingElement:
        """Substitute ``bindings[name]`` for each variable and evaluate in ``R``."""
        values = []
        for name in self.variables:
            if name not in bindings:
                raise MissingBinding(f"no value bound to {name}")
            values.append(R(bindings[name]).value)
        return RingElement(R, self.poly.evaluate(R, values))

    @classmethod
    def parse(cls, text, variables):
        return cls(Poly.parse(text, variables), variables)


def canonical_vector(S: TruncationSet, prefix="a") -> WittVector:
    """The Witt vector over ``Z[prefix_s : s in S]`` whose s-coordinate is ``prefix_s``."""
    R = PolynomialRing(ZZ, [f"{prefix}{s}" for s in S])
    return WittVector(S, R, [Poly.variable(len(S), i) for i in range(len(S))])


def _canonical_inputs(op, S):
    names = variable_names(op, S)
    R = PolynomialRing(ZZ, names)
    n = len(names)
    a = WittVector(S, R, [Poly.variable(n, i) for i in range(len(S))])
    if op not in BINARY_OPS:
        return R, a, None
    b = WittVector(S, R, [Poly.variable(n, len(S) + i) for i in range(len(S))])
    return R, a, b


def derive_vector(op, param, S: TruncationSet, limits=None) -> list:
    """All output coordinates of ``op`` on canonical inputs over ``S``, in output-set order."""
    _check_op(op, param)
    check_limits(output_set(op, param, S) if op == "norm" else S, limits)
    R, a, b = _canonical_inputs(op, S)
    x = ghost_map(a)
    try:
        if op == "sum":
            y = x + ghost_map(b)
        elif op == "prod":
            y = x * ghost_map(b)
        elif op == "neg":
            y = -x
        elif op == "frobenius":
            y = ghost_frobenius(x, param)
        elif op == "norm":
            y = ghost_norm(x, param)
        else:
            y = ghost_theta(x, param)
        result = ghost_inverse(y)
    except NotInGhostImage as exc:
        raise NonIntegralCoefficient(
            f"{op}({param}) over {S}: coordinate {exc.s} has a non-integral coefficient"
        ) from exc
    return [UniversalPolynomial(p, R.variables) for p in result.coords]


def derive(key: PolyCacheKey, limits=None) -> UniversalPolynomial:
    """The ``key.t`` coordinate of ``key.op`` applied to canonical vector(s)."""
    target = output_set(key.op, key.param, key.set)
    if key.t not in target:
        raise ValueError(f"coordinate {key.t} is not in the output set {target}")
    return derive_vector(key.op, key.param, key.set, limits)[target.index(key.t)]


@contextlib.contextmanager
def _gc_paused():
    # bulk text work allocates millions of short-lived tuples; cycle scans only cost time
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


class PolyCache:
    """Thread-safe memo of derived polynomials with optional text-file persistence."""

    def __init__(self, path=None, limits=None):
        self.path = path
        self.limits = limits
        self.version = CACHE_VERSION
        self._entries = {}
        self._lock = threading.Lock()

    def __len__(self):
        with self._lock:
            return len(self._entries)

    def __contains__(self, key):
        with self._lock:
            return key in self._entries

    def keys(self):
        with self._lock:
            return sorted(self._entries, key=_sort_key)

    def put(self, key: PolyCacheKey, poly: UniversalPolynomial):
        with self._lock:
            self._entries[key] = poly

    def vector(self, op, param, S: TruncationSet, limits=None) -> list:
        target = output_set(op, param, S)
        keys = [PolyCacheKey(op, param, S, t) for t in target]
        with self._lock:
            found = [self._entries.get(k) for k in keys]
        if all(p is not None for p in found):
            return found
        polys = derive_vector(op, param, S, limits or self.limits)
        with self._lock:
            for k, p in zip(keys, polys):
                self._entries.setdefault(k, p)
            return [self._entries[k] for k in keys]

    def get(self, key: PolyCacheKey, limits=None) -> UniversalPolynomial:
        with self._lock:
            hit = self._entries.get(key)
        if hit is not None:
            return hit
        target = output_set(key.op, key.param, key.set)
        if key.t not in target:
            raise ValueError(f"coordinate {key.t} is not in the output set {target}")
        return self.vector(key.op, key.param, key.set, limits)[target.index(key.t)]

    def to_text(self):
        lines = [self.version]
        with self._lock:
            items = sorted(self._entries.items(), key=lambda kv: _sort_key(kv[0]))
        with _gc_paused():
            for key, poly in items:
                param = "-" if key.param is None else str(key.param)
                lines.append(f"op={key.op};d={param};S={key.set.to_csv()};t={key.t};poly={poly.to_text()}")
        body = "\n".join(lines) + "\n"
        digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
        return body + f"checksum=sha256:{digest}\n"

    def store(self, path=None):
        path = path or self.path
        if not path:
            raise ValueError("no cache path given")
        tmp = f"{path}.tmp{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())
        os.replace(tmp, path)

    @classmethod
    def from_text(cls, text, path=None, verify=False):
        cache = cls(path)
        lines = text.split("\n")
        if not lines or not lines[0]:
            raise CorruptFile("missing header")
        header = lines[0]
        if header != CACHE_VERSION:
            if header.startswith("wittpoly "):
                raise VersionMismatch(f"cache version {header!r}, expected {CACHE_VERSION!r}")
            raise CorruptFile(f"bad header {header!r}")
        if len(lines) < 3 or lines[-1] != "" or not lines[-2].startswith("checksum=sha256:"):
            raise CorruptFile("missing checksum line (truncated file?)")
        body = "\n".join(lines[:-2]) + "\n"
        digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
        if lines[-2] != f"checksum=sha256:{digest}":
            raise CorruptFile("checksum mismatch")
        sets = {}
        with _gc_paused():
            for line in lines[1:-2]:
                try:
                    key, poly = _parse_record(line, sets)
                except (ValueError, KeyError) as exc:
                    raise CorruptFile(f"bad record {line!r}: {exc}") from None
                cache._entries[key] = poly
        if verify:
            cache.verify()
        return cache

    def verify(self):
        """Re-derive every entry and raise :class:`CorruptFile` on any difference."""
        for key in self.keys():
            fresh = derive(key, SizeLimits(10**9, 10**9))
            if fresh != self._entries[key]:
                raise CorruptFile(f"entry {key} differs from a fresh derivation")


def _sort_key(key):
    return (key.op, key.param or 0, key.set.elements, key.t)


def _parse_record(line, sets=None):
    fields = {}
    for part in line.split(";", 4):
        name, sep, value = part.partition("=")
        if not sep:
            raise ValueError("field without '='")
        fields[name] = value
    op = fields["op"]
    param = None if fields["d"] == "-" else int(fields["d"])
    S = sets.get(fields["S"]) if sets is not None else None
    if S is None:
        S = from_elements([int(v) for v in fields["S"].split(",") if v])
        if sets is not None:
            sets[fields["S"]] = S
    key = PolyCacheKey(op, param, S, int(fields["t"]))
    names = variable_names(op, S)
    return key, UniversalPolynomial(Poly.parse(fields["poly"], names), names)


def cache_store(cache: PolyCache, path=None):
    cache.store(path)


def cache_load(path, verify=False) -> PolyCache:
    """Load a cache file; a missing or empty path gives an empty cache."""
    if not path or not os.path.exists(path):
        return PolyCache(path or None)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return PolyCache.from_text(text, path, verify=verify)


_default = PolyCache()


def default_cache() -> PolyCache:
    return _default


def set_default_cache(cache: PolyCache):
    global _default
    _default = cache


@contextlib.contextmanager
def default_limits(limits: SizeLimits | None):
    """Temporarily apply ``limits`` to derivations through the default cache."""
    cache = _default
    saved = cache.limits
    if limits is not None:
        cache.limits = limits
    try:
        yield cache
    finally:
        cache.limits = saved
