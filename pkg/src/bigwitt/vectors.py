"""Coordinate containers shared by :mod:`bigwitt.ghost` and :mod:`bigwitt.witt`."""

from .errors import RingMismatch, SetMismatch
from .ring import RingElement, make_ring
from .trunc import TruncationSet, from_elements


class _Indexed:
    __slots__ = ("set", "ring", "coords")

    def __init__(self, S: TruncationSet, ring, coords):
        coords = tuple(coords)
        if len(coords) != len(S):
            raise SetMismatch(f"{len(coords)} coordinates given for a set of size {len(S)}")
        self.set = S
        self.ring = ring
        self.coords = coords

    @classmethod
    def from_values(cls, S, ring, values):
        """Build from RingElements, ints or ring-coercible values, or a ``{s: value}`` map."""
        if isinstance(values, dict):
            missing = [s for s in S if s not in values]
            if missing or len(values) != len(S):
                raise SetMismatch(f"coordinates {sorted(values)} do not match {S}")
            values = [values[s] for s in S]
        return cls(S, ring, [ring(v).value for v in values])

    def __getitem__(self, s) -> RingElement:
        return RingElement(self.ring, self.coords[self.set.index(s)])

    def raw(self, s):
        return self.coords[self.set.index(s)]

    def items(self):
        return zip(self.set.elements, self.coords)

    def elements(self):
        return [RingElement(self.ring, v) for v in self.coords]

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.set == other.set and self.ring == other.ring and self.coords == other.coords

    def __hash__(self):
        return hash((self.set, self.ring, self.coords))

    def _check_compatible(self, other):
        if self.set != other.set:
            raise SetMismatch(f"vectors over {self.set} and {other.set}")
        if self.ring != other.ring:
            raise RingMismatch(f"vectors over {self.ring} and {other.ring}")

    def to_json(self):
        return {
            "set": list(self.set.elements),
            "ring": self.ring.descriptor,
            "coords": {str(s): self.ring.to_json(v) for s, v in self.items()},
        }

    @classmethod
    def from_json(cls, obj, ring=None, S=None):
        ring = make_ring(ring if ring is not None else obj["ring"])
        S = S if S is not None else from_elements(obj["set"])
        coords = obj["coords"] if "coords" in obj else obj
        values = {int(k): v for k, v in coords.items()}
        if sorted(values) != list(S.elements):
            raise SetMismatch(f"coordinates {sorted(values)} do not match {S}")
        return cls(S, ring, [ring.from_json(values[s]) for s in S])

    def __repr__(self):
        body = ", ".join(repr(RingElement(self.ring, v)) for v in self.coords)
        return f"{self._open}{body}{self._close} over {self.set}"


class GhostVector(_Indexed):
    """Ghost coordinates ``<x_s>``; ring operations act pointwise."""

    __slots__ = ()
    _open, _close = "<", ">"

    def __add__(self, other):
        self._check_compatible(other)
        R = self.ring
        return GhostVector(self.set, R, [R.add(x, y) for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check_compatible(other)
        R = self.ring
        return GhostVector(self.set, R, [R.sub(x, y) for x, y in zip(self.coords, other.coords)])

    def __mul__(self, other):
        R = self.ring
        if isinstance(other, int):
            return GhostVector(self.set, R, [R.times(x, other) for x in self.coords])
        self._check_compatible(other)
        return GhostVector(self.set, R, [R.mul(x, y) for x, y in zip(self.coords, other.coords)])

    __rmul__ = __mul__

    def __neg__(self):
        R = self.ring
        return GhostVector(self.set, R, [R.neg(x) for x in self.coords])

    def __pow__(self, n):
        R = self.ring
        return GhostVector(self.set, R, [R.pow(x, n) for x in self.coords])


class WittVector(_Indexed):
    """An element ``(a_s)`` of ``W_S(k)``.

    Operators route through :mod:`bigwitt.witt`; an ``int`` operand stands
    for its image under ``Z -> W_S(k)``.
    """

    __slots__ = ()
    _open, _close = "(", ")"

    def __add__(self, other):
        from . import witt

        return witt.witt_add(self, witt._lift(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        from . import witt

        return witt.witt_sub(self, witt._lift(other, self))

    def __rsub__(self, other):
        from . import witt

        return witt.witt_sub(witt._lift(other, self), self)

    def __mul__(self, other):
        from . import witt

        if isinstance(other, int):
            return witt.witt_scalar(self, other)
        return witt.witt_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        from . import witt

        return witt.witt_neg(self)

    def __pow__(self, n):
        from . import witt

        return witt.witt_pow(self, n)
