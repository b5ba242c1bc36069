"""Commutative rings the Witt functor is applied to.

A :class:`Ring` does arithmetic on *raw* values (plain ints, residues,
:class:`~bigwitt.poly.Poly` objects, coefficient tuples).  Kernels in
:mod:`bigwitt.ghost` and :mod:`bigwitt.witt` work on raw values for speed;
users normally handle :class:`RingElement`, which pairs a raw value with its
ring and supports the usual operators.

Supported rings::

    ZZ                          Integers
    ModularRing(m)              Z/m for any m >= 2
    PolynomialRing(ZZ, names)   Z[names], also over Z/m
    CyclotomicRing(p)           Z[xi]/(1 + xi + ... + xi^(p-1)), p prime
"""

import re

from .errors import InvalidModulus, InvalidRing, NotDivisible, RingMismatch, TorsionRing
from .poly import Poly
from .trunc import require_prime

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Ring:
    torsion_free = True
    descriptor = "?"

    # raw-value interface, overridden by subclasses
    def canon(self, v):
        return v

    def embed(self, n):
        raise NotImplementedError

    def add(self, x, y):
        return self.canon(x + y)

    def sub(self, x, y):
        return self.canon(x - y)

    def neg(self, x):
        return self.canon(-x)

    def mul(self, x, y):
        return self.canon(x * y)

    def pow(self, x, n):
        return self.canon(x**n)

    def times(self, x, n):
        """``n * x`` for an integer ``n``."""
        return self.canon(x * n)

    def is_zero(self, x):
        return not x

    def divide_exact(self, x, n):
        """The unique ``u`` with ``n * u == x``; raw-value form of :meth:`exact_div_int`."""
        raise TorsionRing(f"{self} has torsion; division by {n} is not well defined")

    def random(self, rng, bound=5):
        raise NotImplementedError

    def to_json(self, x):
        raise NotImplementedError

    def from_json(self, obj):
        raise NotImplementedError

    # element interface
    def __call__(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} element used where {self} was expected")
            return value
        if isinstance(value, int):
            return RingElement(self, self.embed(value))
        return RingElement(self, self.coerce_raw(value))

    def coerce_raw(self, value):
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, raw):
        return RingElement(self, raw)

    @property
    def zero(self):
        return RingElement(self, self.embed(0))

    @property
    def one(self):
        return RingElement(self, self.embed(1))

    def int_embed(self, n: int) -> "RingElement":
        return RingElement(self, self.embed(n))

    def exact_div_int(self, v: "RingElement", n: int) -> "RingElement":
        if n == 0:
            raise ZeroDivisionError("division by zero")
        if not self.torsion_free:
            raise TorsionRing(f"{self} has torsion; exact division is not unique")
        return RingElement(self, self.divide_exact(self(v).value, n))

    def random_element(self, rng, bound=5):
        return RingElement(self, self.random(rng, bound))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return self.descriptor


class IntegerRing(Ring):
    descriptor = "Z"
    int_modulus = None

    def canon(self, v):
        return v

    def embed(self, n):
        return n

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def pow(self, x, n):
        return x**n

    def times(self, x, n):
        return x * n

    def divide_exact(self, x, n):
        q, r = divmod(x, n)
        if r:
            raise NotDivisible(f"{x} is not divisible by {n}")
        return q

    def random(self, rng, bound=5):
        return rng.randint(-bound, bound)

    def to_json(self, x):
        return str(x)

    def from_json(self, obj):
        return int(obj)


ZZ = IntegerRing()


class ModularRing(Ring):
    torsion_free = False

    def __init__(self, m):
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise InvalidModulus(f"modulus must be an integer >= 2, got {m!r}")
        self.m = m
        self.int_modulus = m
        self.descriptor = f"Zmod:{m}"

    def canon(self, v):
        return v % self.m

    def embed(self, n):
        return n % self.m

    def add(self, x, y):
        return (x + y) % self.m

    def sub(self, x, y):
        return (x - y) % self.m

    def mul(self, x, y):
        return (x * y) % self.m

    def neg(self, x):
        return -x % self.m

    def pow(self, x, n):
        return pow(x, n, self.m)

    def times(self, x, n):
        return (x * n) % self.m

    def random(self, rng, bound=5):
        return rng.randrange(self.m)

    def to_json(self, x):
        return str(x)

    def from_json(self, obj):
        return int(obj) % self.m


class PolynomialRing(Ring):
    """``base[names]`` for a base ring of integers or integers modulo m."""

    def __init__(self, base, variables):
        variables = tuple(variables)
        if not isinstance(base, (IntegerRing, ModularRing)):
            raise InvalidRing("polynomial rings are supported over Z and Z/m only")
        if len(set(variables)) != len(variables):
            raise InvalidRing(f"variable names must be unique: {variables}")
        for name in variables:
            if not _NAME.match(name):
                raise InvalidRing(f"bad variable name {name!r}")
        self.base = base
        self.variables = variables
        self.nvars = len(variables)
        self.modulus = getattr(base, "m", None)
        self.torsion_free = base.torsion_free
        self.descriptor = "poly:" + ",".join(variables)
        if base != ZZ:
            self.descriptor += "@" + base.descriptor

    def canon(self, v):
        return v.reduce_mod(self.modulus) if self.modulus else v

    def embed(self, n):
        if self.modulus:
            n %= self.modulus
        return Poly.constant(self.nvars, n)

    def add(self, x, y):
        return self.canon(x + y) if self.modulus else x + y

    def sub(self, x, y):
        return self.canon(x - y) if self.modulus else x - y

    def mul(self, x, y):
        return self.canon(x * y) if self.modulus else x * y

    def neg(self, x):
        return self.canon(-x) if self.modulus else -x

    def pow(self, x, n):
        return self.canon(x**n) if self.modulus else x**n

    def times(self, x, n):
        return self.canon(x.scale(n)) if self.modulus else x.scale(n)

    def divide_exact(self, x, n):
        if self.modulus:
            return super().divide_exact(x, n)
        q = x.exact_div(n)
        if q is None:
            raise NotDivisible(f"{self.to_text(x)} is not divisible by {n}")
        return q

    def gen(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        return RingElement(self, Poly.variable(self.nvars, i))

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def coerce_raw(self, value):
        if isinstance(value, Poly):
            if value.nvars != self.nvars:
                raise RingMismatch("polynomial has the wrong number of variables")
            return self.canon(value)
        if isinstance(value, str):
            return self.canon(Poly.parse(value, self.variables))
        return super().coerce_raw(value)

    def to_text(self, x):
        return x.to_text(self.variables)

    def random(self, rng, bound=5):
        terms = []
        for _ in range(rng.randint(0, 3)):
            exps = [rng.randint(0, 2) if rng.random() < 0.4 else 0 for _ in range(self.nvars)]
            terms.append((exps, rng.randint(-bound, bound)))
        return self.canon(Poly.from_exponents(self.nvars, terms))

    def to_json(self, x):
        out = {}
        for exps, c in x.items():
            key = x.monomial_text(exps, self.variables) or "1"
            out[key] = str(c)
        return out

    def from_json(self, obj):
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            text = str(obj)
            try:
                return self.embed(int(text))
            except ValueError:
                return self.canon(Poly.parse(text, self.variables))
        terms = {}
        for key, c in obj.items():
            mono = Poly.parse(key, self.variables) if key != "1" else Poly.constant(self.nvars, 1)
            ((k, _),) = mono.terms.items()
            terms[k] = terms.get(k, 0) + int(c)
        return self.canon(Poly(self.nvars, {k: c for k, c in terms.items() if c}))


class CyclotomicRing(Ring):
    """``Z[xi]/(1 + xi + ... + xi^(p-1))`` with values as coefficient tuples of length p-1."""

    def __init__(self, p):
        require_prime(p)
        self.p = p
        self.n = p - 1
        self.descriptor = f"cyclo:{p}"

    def canon(self, v):
        return tuple(v)

    def embed(self, n):
        return (n,) + (0,) * (self.n - 1)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def times(self, x, n):
        return tuple(a * n for a in x)

    def mul(self, x, y):
        p = self.p
        acc = [0] * p
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        acc[(i + j) % p] += a * b
        top = acc[p - 1]
        return tuple(c - top for c in acc[: p - 1])

    def pow(self, x, n):
        result = self.embed(1)
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def is_zero(self, x):
        return not any(x)

    def divide_exact(self, x, n):
        out = []
        for a in x:
            q, r = divmod(a, n)
            if r:
                raise NotDivisible(f"{x} is not divisible by {n}")
            out.append(q)
        return tuple(out)

    def xi(self):
        """Raw value of the primitive root ``xi``."""
        if self.p == 2:
            return (-1,)
        return (0, 1) + (0,) * (self.n - 2)

    def coerce_raw(self, value):
        if isinstance(value, (list, tuple)) and len(value) == self.n:
            return tuple(int(a) for a in value)
        return super().coerce_raw(value)

    def random(self, rng, bound=5):
        return tuple(rng.randint(-bound, bound) for _ in range(self.n))

    def to_json(self, x):
        return [str(a) for a in x]

    def from_json(self, obj):
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return self.embed(int(obj))
        if len(obj) != self.n:
            raise ValueError(f"cyclotomic value needs {self.n} coefficients")
        return tuple(int(a) for a in obj)


def primitive_root(R) -> "RingElement":
    """A primitive p-th root of unity.

    ``CyclotomicRing(p)`` yields the class of ``xi``; over the integers the
    only primitive root available is ``-1`` for p = 2.
    """
    if isinstance(R, CyclotomicRing):
        return RingElement(R, R.xi())
    if isinstance(R, IntegerRing):
        return RingElement(R, -1)
    raise InvalidRing(f"{R} has no designated primitive root of unity")


def make_ring(descriptor) -> Ring:
    """Build a ring from its descriptor string.

    >>> make_ring("Zmod:4")
    Zmod:4
    >>> make_ring("poly:a1,a2")
    poly:a1,a2
    """
    if isinstance(descriptor, Ring):
        return descriptor
    text = descriptor.strip()
    if text in ("Z", "ZZ"):
        return ZZ
    kind, sep, arg = text.partition(":")
    if not sep:
        raise InvalidRing(f"unknown ring {descriptor!r}")
    if kind == "Zmod":
        try:
            m = int(arg)
        except ValueError:
            raise InvalidModulus(f"bad modulus {arg!r}") from None
        return ModularRing(m)
    if kind == "cyclo":
        try:
            p = int(arg)
        except ValueError:
            raise InvalidRing(f"bad prime {arg!r}") from None
        return CyclotomicRing(p)
    if kind == "poly":
        names, _, base = arg.partition("@")
        names = [n.strip() for n in names.split(",") if n.strip()]
        return PolynomialRing(make_ring(base) if base else ZZ, names)
    raise InvalidRing(f"unknown ring {descriptor!r}")


class RingElement:
    """A canonical value together with the ring it lives in."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine {self.ring} and {other.ring} elements")
            return other.value
        if isinstance(other, int):
            return self.ring.embed(other)
        return None

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else RingElement(self.ring, self.ring.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else RingElement(self.ring, self.ring.sub(self.value, v))

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else RingElement(self.ring, self.ring.sub(v, self.value))

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else RingElement(self.ring, self.ring.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return RingElement(self.ring, self.ring.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.embed(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def is_zero(self):
        return self.ring.is_zero(self.value)

    def to_json(self):
        return self.ring.to_json(self.value)

    def __repr__(self):
        if isinstance(self.ring, PolynomialRing):
            return self.ring.to_text(self.value)
        if isinstance(self.ring, CyclotomicRing):
            terms = []
            for i, c in enumerate(self.value):
                if c:
                    terms.append(f"{c}" if i == 0 else f"{c}*xi^{i}")
            return " + ".join(terms) or "0"
        return str(self.value)


__all__ = [
    "Ring",
    "IntegerRing",
    "ModularRing",
    "PolynomialRing",
    "CyclotomicRing",
    "RingElement",
    "ZZ",
    "make_ring",
    "primitive_root",
]
