"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

A monomial is packed into a single Python int, one 32-bit field per
variable (variable 0 in the lowest field), so multiplying monomials is one
integer addition.  Terms live in a dict ``{packed_exponents: coefficient}``
that never stores a zero coefficient.
"""

import re

import numpy as np
from numba import njit

_BITS = 32
_MASK = (1 << _BITS) - 1
_EXP_LIMIT = 1 << (_BITS - 1)
# residues below this keep every product inside int64
_KERNEL_MODULUS = 1 << 31
# smaller polynomials are cheaper in the plain loop
_KERNEL_TERMS = 64
# below this many terms a Python sort beats the numpy set-up cost
_VECTOR_SORT = 48


def pack(exponents) -> int:
    key = 0
    for i, e in enumerate(exponents):
        if e:
            key |= e << (_BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


class Poly:
    """Immutable polynomial in ``nvars`` anonymous variables over the integers.

    Variable names are supplied only when printing or parsing, which keeps
    arithmetic free of name bookkeeping.
    """

    __slots__ = ("nvars", "terms", "_hash", "_compiled", "_flat")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}
        self._hash = None
        self._compiled = None
        self._flat = None

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {0: c} if c else {})

    @classmethod
    def variable(cls, nvars, i, power=1):
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        return cls(nvars, {power << (_BITS * i): 1})

    @classmethod
    def from_exponents(cls, nvars, items):
        terms = {}
        for exps, c in items:
            if len(exps) != nvars:
                raise ValueError("exponent vector has the wrong length")
            k = pack(exps)
            terms[k] = terms.get(k, 0) + c
        return cls(nvars, {k: c for k, c in terms.items() if c})

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable counts")
            return other
        if isinstance(other, int):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            self, other = other, self
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                del terms[k]
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) - c
            if v:
                terms[k] = v
            else:
                del terms[k]
        return Poly(self.nvars, terms)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, n):
        if not n:
            return Poly(self.nvars)
        if n == 1:
            return self
        return Poly(self.nvars, {k: c * n for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((kb, cb),) = b.items()
            return Poly(self.nvars, {k + kb: c * cb for k, c in a.items()})
        res = {}
        get = res.get
        for k2, c2 in b.items():
            for k1, c1 in a.items():
                k = k1 + k2
                res[k] = get(k, 0) + c1 * c2
        return Poly(self.nvars, {k: c for k, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if n == 0:
            return Poly.constant(self.nvars, 1)
        if n == 1 or not self.terms:
            return self
        if self.max_exponent() * n >= _EXP_LIMIT:
            raise OverflowError("exponent exceeds the packed-monomial range")
        if len(self.terms) == 1:
            ((k, c),) = self.terms.items()
            return Poly(self.nvars, {k * n: c**n})
        result = None
        base = self
        while True:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if not n:
                return result
            base = base * base

    def exact_div(self, n):
        """Coefficient-wise division by the integer ``n``; ``None`` if inexact."""
        out = {}
        for k, c in self.terms.items():
            q, r = divmod(c, n)
            if r:
                return None
            out[k] = q
        return Poly(self.nvars, out)

    def reduce_mod(self, m):
        out = {}
        for k, c in self.terms.items():
            c %= m
            if c:
                out[k] = c
        return Poly(self.nvars, out)

    # -- inspection -------------------------------------------------------

    def max_exponent(self):
        n = self.nvars
        return max((e for k in self.terms for e in unpack(k, n)), default=0)

    def total_degree(self):
        n = self.nvars
        return max((sum(unpack(k, n)) for k in self.terms), default=-1)

    def _sorted_sparse(self):
        """Terms in graded-lex order, largest first, as flat sparse factors.

        Returns ``(vars, exps, counts, coefs)``: term j owns the next
        ``counts[j]`` entries of ``vars``/``exps``.  Large polynomials come
        back as numpy arrays, small ones as lists.
        """
        n = self.nvars
        terms = self.terms
        if len(terms) < _VECTOR_SORT or n == 0:
            rows = []
            for k, c in terms.items():
                # exponents up to the last nonzero one; lex order is unchanged
                exps = []
                while k:
                    exps.append(k & _MASK)
                    k >>= _BITS
                rows.append((sum(exps), exps, c))
            rows.sort(reverse=True)
            var, exp, counts = [], [], []
            for _, ex, _ in rows:
                before = len(var)
                for i, e in enumerate(ex):
                    if e:
                        var.append(i)
                        exp.append(e)
                counts.append(len(var) - before)
            return var, exp, counts, [c for _, _, c in rows]
        keys = list(terms)
        width = _BITS // 8 * n
        buf = b"".join(k.to_bytes(width, "little") for k in keys)
        E = np.frombuffer(buf, dtype="<u4").reshape(len(keys), n).astype(np.int64)
        # lexsort: last key is primary
        order = np.lexsort(tuple(E[:, i] for i in range(n - 1, -1, -1)) + (E.sum(axis=1),))[::-1]
        E = E[order]
        r, col = np.nonzero(E)
        counts = np.count_nonzero(E, axis=1).tolist()
        return col, E[r, col], counts, [terms[keys[j]] for j in order.tolist()]

    def items(self):
        """``(exponent_tuple, coefficient)`` pairs in graded-lex order, largest first."""
        var, exp, counts, coefs = self._sorted_sparse()
        var, exp = list(var), list(exp)
        out = []
        pos = 0
        for count, c in zip(counts, coefs):
            exps = [0] * self.nvars
            for j in range(pos, pos + count):
                exps[var[j]] = int(exp[j])
            pos += count
            out.append((tuple(exps), c))
        return out

    def coefficients(self):
        return [c for _, c in self.items()]

    def embed(self, nvars, positions):
        """Re-index into ``nvars`` variables, variable i going to ``positions[i]``."""
        out = {}
        n = self.nvars
        for k, c in self.terms.items():
            exps = unpack(k, n)
            key = 0
            for i, e in enumerate(exps):
                if e:
                    key |= e << (_BITS * positions[i])
            out[key] = c
        return Poly(nvars, out)

    def compiled(self):
        """Terms as ``(coefficient, ((var, exponent), ...))`` rows, computed once."""
        if self._compiled is None:
            n = self.nvars
            self._compiled = [
                (c, tuple((i, e) for i, e in enumerate(unpack(k, n)) if e)) for k, c in self.terms.items()
            ]
        return self._compiled

    def evaluate(self, ring, values):
        """Value in ``ring`` with variable i bound to the raw ring value ``values[i]``.

        Coefficients travel through the unique map from the integers.
        """
        if len(values) != self.nvars:
            raise ValueError("one value per variable is required")
        mod = getattr(ring, "int_modulus", False)
        if mod and mod < _KERNEL_MODULUS and len(self.terms) >= _KERNEL_TERMS:
            return self._evaluate_kernel(mod, values)
        rows = self.compiled()
        powers = {}
        if mod is not False:
            # raw values are plain ints: Z (mod None) or Z/m
            total = 0
            for c, factors in rows:
                term = c
                for ie in factors:
                    p = powers.get(ie)
                    if p is None:
                        i, e = ie
                        p = powers[ie] = pow(values[i], e, mod) if mod else values[i] ** e
                    term *= p
                total += term % mod if mod else term
            return total % mod if mod else total
        total = ring.embed(0)
        for c, factors in rows:
            term = ring.embed(c)
            for ie in factors:
                p = powers.get(ie)
                if p is None:
                    p = powers[ie] = ring.pow(values[ie[0]], ie[1])
                term = ring.mul(term, p)
            total = ring.add(total, term)
        return total

    def _evaluate_kernel(self, mod, values):
        if self._flat is None:
            rows = self.compiled()
            ptr = np.zeros(len(rows) + 1, dtype=np.int64)
            var, exp = [], []
            for j, (_, factors) in enumerate(rows):
                for i, e in factors:
                    var.append(i)
                    exp.append(e)
                ptr[j + 1] = len(var)
            exp_arr = np.array(exp, dtype=np.int64)
            top = int(exp_arr.max()) if len(exp) else 0
            self._flat = (ptr, np.array(var, dtype=np.int64), exp_arr, top, {})
        ptr, var, exp, top, coefs = self._flat
        coef = coefs.get(mod)
        if coef is None:
            coef = coefs[mod] = np.array([c % mod for c in self.terms.values()], dtype=np.int64)
        vals = np.array([v % mod for v in values], dtype=np.int64)
        return int(_eval_mod(ptr, var, exp, coef, vals, top, mod))

    # -- text -------------------------------------------------------------

    def monomial_text(self, exps, names):
        parts = []
        for name, e in zip(names, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def _monomials(self, names):
        """Monomial strings and coefficients in canonical order."""
        terms = self.terms
        if len(terms) < _VECTOR_SORT:
            rows = []
            for k, c in terms.items():
                exps = []
                while k:
                    exps.append(k & _MASK)
                    k >>= _BITS
                rows.append((sum(exps), exps, c))
            rows.sort(reverse=True)
            monos = [
                "*".join([names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(ex) if e]) for _, ex, _ in rows
            ]
            return monos, [c for _, _, c in rows]
        var, exp, counts, coefs = self._sorted_sparse()
        toks = _factor_tokens(var, exp, names)
        monos = []
        pos = 0
        for count in counts:
            monos.append("*".join(toks[pos : pos + count]))
            pos += count
        return monos, coefs

    def to_text(self, names):
        """Canonical text such as ``a1^2*a2 + a2^2`` or ``-a1*b1 + a2 + b2``."""
        if len(names) != self.nvars:
            raise ValueError("one name per variable is required")
        if not self.terms:
            return "0"
        out = []
        for mono, c in zip(*self._monomials(names)):
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    @classmethod
    def parse(cls, text, names):
        """Inverse of :meth:`to_text`; accepts any term order and spacing."""
        index = {name: i for i, name in enumerate(names)}
        nvars = len(names)
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial text")
        terms = {}
        matched = 0
        # factor text -> its packed monomial; names never start with a digit
        known = {}
        for sign, body in _TERM.findall(src):
            matched += len(sign) + len(body)
            coeff = -1 if sign == "-" else 1
            parts = body.split("*")
            if parts[0].isdigit():
                coeff *= int(parts[0])
                del parts[0]
            try:
                k = sum(map(known.__getitem__, parts))
            except KeyError:
                k = 0
                for factor in parts:
                    if factor.isdigit():
                        coeff *= int(factor)
                        continue
                    v = known.get(factor)
                    if v is None:
                        name, _, power = factor.partition("^")
                        if name not in index or (power and not power.isdigit()):
                            raise ValueError(f"bad factor {factor!r} in {text!r}") from None
                        e = int(power) if power else 1
                        if e >= _EXP_LIMIT:
                            raise OverflowError("exponent too large for packed monomials") from None
                        v = known[factor] = e << (_BITS * index[name])
                    k += v
            terms[k] = terms.get(k, 0) + coeff
        if matched != len(src):
            raise ValueError(f"cannot parse polynomial text {text!r}")
        return cls(nvars, {k: c for k, c in terms.items() if c})

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.to_text(names)})"


def _factor_tokens(var, exp, names):
    """``name`` or ``name^e`` for each sparse factor."""
    if isinstance(var, np.ndarray):
        if not len(var):
            return []
        stride = int(exp.max()) + 1
        uniq, inv = np.unique(var * stride + exp, return_inverse=True)
        table = np.array(
            [names[u // stride] if u % stride == 1 else f"{names[u // stride]}^{u % stride}" for u in uniq.tolist()],
            dtype=object,
        )
        return table[inv].tolist()
    cache = {}
    out = []
    for i, e in zip(var, exp):
        ie = (i, e)
        tok = cache.get(ie)
        if tok is None:
            tok = cache[ie] = names[i] if e == 1 else f"{names[i]}^{e}"
        out.append(tok)
    return out


_TERM = re.compile(r"([+-]?)([A-Za-z0-9_^*]+)")


@njit(cache=True)
def _eval_mod(ptr, var, exp, coef, vals, top, m):
    tab = np.empty((vals.shape[0], top + 1), dtype=np.int64)
    for i in range(vals.shape[0]):
        tab[i, 0] = 1 % m
        for e in range(1, top + 1):
            tab[i, e] = tab[i, e - 1] * vals[i] % m
    total = 0
    for t in range(coef.shape[0]):
        acc = coef[t]
        for j in range(ptr[t], ptr[t + 1]):
            acc = acc * tab[var[j], exp[j]] % m
        total = (total + acc) % m
    return total
