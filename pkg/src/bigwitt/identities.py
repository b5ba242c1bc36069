"""Named identities between Witt-vector structure maps, checked exactly.

Each identity is a function of two input vectors ``a`` and ``b`` over a set
``S`` (unary identities ignore ``b``) returning ``(label, lhs, rhs)``
comparisons.  :func:`check_identity` runs it either symbolically, on the
canonical vectors over ``Z[a_s, b_s]`` (a passing run is a proof of the
polynomial identity on ``W_S``), or on random samples from a chosen ring.
"""

import random
import time
from dataclasses import dataclass, field
from math import gcd

from .errors import InvalidRing, SizeBound, UnknownIdentity
from .poly import Poly
from .ring import ZZ, CyclotomicRing, PolynomialRing, RingElement, make_ring
from .trunc import TruncationSet, divisors, from_elements, p_typical, quotient, require_prime, scale, sub_truncation_sets
from .universal import DEFAULT_LIMITS, check_limits, default_limits
from .vectors import WittVector
from .witt import (
    addition_defect_coefficient,
    frobenius,
    norm,
    restrict,
    teichmuller,
    theta,
    verschiebung,
    witt_add,
    witt_mul,
    witt_neg,
    witt_one,
    witt_pow,
    witt_scalar,
    witt_sub,
)

SUB_SET_LIMIT = 24


@dataclass
class Identity:
    name: str
    params: tuple
    func: object
    span: object
    doc: str = ""
    binary: bool = False

    def required(self, params):
        missing = [p for p in self.params if p not in params]
        if missing:
            raise ValueError(f"identity {self.name} needs parameters {', '.join(missing)}")


IDENTITIES = {}


def identity(name, params=(), span=None, binary=False):
    def register(func):
        IDENTITIES[name] = Identity(name, tuple(params), func, span or (lambda S, k: S), func.__doc__ or "", binary)
        return func

    return register


def ordered_factorizations(d):
    """All ordered tuples of integers > 1 with product ``d``; ``(1,)`` for d = 1."""
    if d == 1:
        return [(1,)]
    out = []
    for f in divisors(d)[1:]:
        if f == d:
            out.append((d,))
        else:
            out.extend((f,) + rest for rest in ordered_factorizations(d // f))
    return out


# -- identities -----------------------------------------------------------


@identity("frobenius_norm", params=("d",), span=lambda S, k: scale(S, k["d"]))
def _frobenius_norm(a, b, k):
    """F_d(N_d(a)) = a^d.  ``power`` overrides the exponent on the right."""
    d = k["d"]
    yield "F_d N_d a = a^d", frobenius(norm(a, d), d), witt_pow(a, k.get("power", d))


@identity("norm_multiplicative", params=("d",), span=lambda S, k: scale(S, k["d"]), binary=True)
def _norm_multiplicative(a, b, k):
    """N_d(ab) = N_d(a) N_d(b) and N_d(1) = 1."""
    d = k["d"]
    yield "N_d(ab) = N_d(a)N_d(b)", norm(witt_mul(a, b), d), witt_mul(norm(a, d), norm(b, d))
    yield "N_d(1) = 1", norm(witt_one(a.set, a.ring), d), witt_one(scale(a.set, d), a.ring)


@identity("norm_factorization", params=("d",), span=lambda S, k: scale(S, k["d"]))
def _norm_factorization(a, b, k):
    """N_d agrees with N_{d1} o ... o N_{dr} for every ordered factorization."""
    d = k["d"]
    direct = norm(a, d)
    for factors in ordered_factorizations(d):
        v = a
        for f in reversed(factors):
            v = norm(v, f)
        yield "N_" + "N_".join(map(str, factors)), v, direct


@identity("norm_restriction", params=("d",), span=lambda S, k: scale(S, k["d"]))
def _norm_restriction(a, b, k):
    """R(N_d a) = N_d(R a) for every truncation set T inside S."""
    d = k["d"]
    full = norm(a, d)
    for T in sub_truncation_sets(a.set, SUB_SET_LIMIT):
        yield f"T={T}", restrict(full, scale(T, d)), norm(restrict(a, T), d)


@identity("frobenius_verschiebung", params=("d",), span=lambda S, k: scale(S, k["d"]))
def _frobenius_verschiebung(a, b, k):
    """F_d(V_d(a)) = d*a."""
    d = k["d"]
    yield "F_d V_d a = d a", frobenius(verschiebung(a, d, scale(a.set, d)), d), witt_scalar(a, d)


@identity("frobenius_verschiebung_coprime", params=("d", "e"), span=lambda S, k: scale(S, k["e"]))
def _frobenius_verschiebung_coprime(a, b, k):
    """F_d V_e = V_e F_d when gcd(d, e) = 1."""
    d, e = k["d"], k["e"]
    if gcd(d, e) != 1:
        raise ValueError(f"gcd({d}, {e}) != 1")
    T = scale(a.set, e)
    lhs = frobenius(verschiebung(a, e, T), d)
    fa = frobenius(a, d)
    yield "F_d V_e a = V_e F_d a", lhs, verschiebung(fa, e, scale(fa.set, e))


@identity("verschiebung_frobenius", params=("d",))
def _verschiebung_frobenius(a, b, k):
    """V_d(F_d a) = V_d(1) * a."""
    d = k["d"]
    S = a.set
    one = witt_one(quotient(S, d), a.ring)
    yield "V_d F_d a = V_d(1) a", verschiebung(frobenius(a, d), d, S), witt_mul(verschiebung(one, d, S), a)


@identity("frobenius_restriction", params=("d",))
def _frobenius_restriction(a, b, k):
    """R(F_d a) = F_d(R a) for every truncation set T inside S."""
    d = k["d"]
    full = frobenius(a, d)
    for T in sub_truncation_sets(a.set, SUB_SET_LIMIT):
        yield f"T={T}", restrict(full, quotient(T, d)), frobenius(restrict(a, T), d)


@identity("verschiebung_restriction", params=("d",), span=lambda S, k: scale(S, k["d"]))
def _verschiebung_restriction(a, b, k):
    """R(V_d a) = V_d(R a) for every truncation set T inside <d>S."""
    d = k["d"]
    U = scale(a.set, d)
    full = verschiebung(a, d, U)
    for T in sub_truncation_sets(U, SUB_SET_LIMIT):
        yield f"T={T}", restrict(full, T), verschiebung(restrict(a, quotient(T, d)), d, T)


@identity("theta_congruence", params=("p",))
def _theta_congruence(a, b, k):
    """F_p(a) = a^p + p theta_p(a) in W_{S/p}."""
    p = require_prime(k["p"])
    Q = quotient(a.set, p)
    rhs = witt_add(restrict(witt_pow(a, p), Q), witt_scalar(theta(a, p), p))
    yield "F_p a = a^p + p theta_p a", frobenius(a, p), rhs


@identity("addition_defect", params=("p",), span=lambda S, k: scale(S, k["p"]), binary=True)
def _addition_defect(a, b, k):
    """N_p(a+b) = N_p(a) + N_p(b) + sum_i binom(p,i)/p V_p(a^i b^(p-i))."""
    p = require_prime(k["p"])
    T = scale(a.set, p)
    rhs = witt_add(norm(a, p), norm(b, p))
    for i in range(1, p):
        term = verschiebung(witt_mul(witt_pow(a, i), witt_pow(b, p - i)), p, T)
        rhs = witt_add(rhs, witt_scalar(term, addition_defect_coefficient(p, i)))
    yield "N_p(a+b)", norm(witt_add(a, b), p), rhs


@identity("norm_verschiebung_coprime", params=("p", "q"), span=lambda S, k: scale(S, k["p"] * k["q"]))
def _norm_verschiebung_coprime(a, b, k):
    """N_p V_q a = V_q N_p a + (q^p - q)/(pq) V_pq(a^p) when gcd(p, q) = 1."""
    p, q = require_prime(k["p"]), k["q"]
    if gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    c, r = divmod(q**p - q, p * q)
    assert r == 0
    S = a.set
    T = scale(S, p * q)
    lhs = norm(verschiebung(a, q, scale(S, q)), p)
    rhs = witt_add(verschiebung(norm(a, p), q, T), witt_scalar(verschiebung(witt_pow(a, p), p * q, T), c))
    yield "N_p V_q a", lhs, rhs


@identity("norm_verschiebung_same", params=("p",), span=lambda S, k: scale(S, k["p"] ** 2))
def _norm_verschiebung_same(a, b, k):
    """N_p V_p a = p^(p-2) V_{p^2}(a^p)."""
    p = require_prime(k["p"])
    S = a.set
    lhs = norm(verschiebung(a, p, scale(S, p)), p)
    rhs = witt_scalar(verschiebung(witt_pow(a, p), p * p, scale(S, p * p)), p ** (p - 2))
    yield "N_p V_p a", lhs, rhs


@identity("root_of_unity", params=("p",), span=lambda S, k: scale(S, k["p"]))
def _root_of_unity(a, b, k):
    """sum_i N_p([xi^i] a) = V_p(a^p); for p = 2 also N_2(a) + N_2(-a) = V_2(a^2).

    ``xi^i a`` is the product with the Teichmuller vector of ``xi^i``.
    """
    p = require_prime(k["p"])
    R = a.ring
    xi = _root_in(R, p)
    S = a.set
    T = scale(S, p)
    rhs = verschiebung(witt_pow(a, p), p, T)
    total = None
    for i in range(p):
        term = norm(witt_mul(teichmuller(RingElement(R, R.pow(xi, i)), S), a), p)
        total = term if total is None else witt_add(total, term)
    yield "sum N_p(xi^i a) = V_p(a^p)", total, rhs
    if p == 2:
        yield "N_2(a) + N_2(-a) = V_2(a^2)", witt_add(norm(a, 2), norm(witt_neg(a), 2)), rhs


def _root_in(R, p):
    if isinstance(R, CyclotomicRing) and R.p == p:
        return R.xi()
    if p == 2:
        return R.embed(-1)
    raise InvalidRing(f"{R} has no primitive {p}-th root of unity; use cyclo:{p}")


@identity("teichmuller_fixed", params=("d",), span=lambda S, k: scale(S, k["d"]))
def _teichmuller_fixed(a, b, k):
    """N_d([r]) = [r] with r the first coordinate of a."""
    d = k["d"]
    r = a[1] if 1 in a.set else a.ring.zero
    yield "N_d [r] = [r]", norm(teichmuller(r, a.set), d), teichmuller(r, scale(a.set, d))


@identity("norm_definition", params=("p",), span=lambda S, k: scale(S, k["p"]))
def _norm_definition(a, b, k):
    """a - V_p theta_p(a) on <p>S equals N_p of the restriction of a to S.

    The input lives on ``<p>S``, so here ``a`` is rebuilt one level up.
    """
    p = require_prime(k["p"])
    S = a.set
    U = scale(S, p)
    big = _lift_input(a, U, k.get("_big"))
    lhs = witt_sub(big, verschiebung(theta(big, p), p, U))
    yield "a - V_p theta_p(a) = N_p(a)", lhs, norm(restrict(big, S), p)


def _lift_input(a, U, big):
    if big is not None:
        return big
    # no explicit vector on <p>S: pad a with zeros
    R = a.ring
    zero = R.embed(0)
    return WittVector(U, R, [a.raw(u) if u in a.set else zero for u in U])


# -- checking -------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    set: TruncationSet
    params: dict
    mode: str
    ring: str
    passed: bool
    cases: int = 0
    comparisons: int = 0
    witness: dict | None = None
    seconds: float = 0.0
    detail: list = field(default_factory=list)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        ps = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()) if not k.startswith("_"))
        text = (
            f"{status} {self.name} S={self.set} {ps} mode={self.mode} ring={self.ring} "
            f"cases={self.cases} comparisons={self.comparisons} ({self.seconds:.2f}s)"
        )
        if self.witness:
            text += "\n    witness: " + "; ".join(f"{k}={v}" for k, v in self.witness.items())
        return text


def get_identity(name) -> Identity:
    try:
        return IDENTITIES[name]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {name!r}; known: {', '.join(sorted(IDENTITIES))}") from None


def _symbolic_inputs(name, S, params):
    big_set = scale(S, params["p"]) if name == "norm_definition" else S
    names = [f"a{s}" for s in big_set] + [f"b{s}" for s in S]
    R = PolynomialRing(ZZ, names)
    n = len(names)
    big = WittVector(big_set, R, [Poly.variable(n, i) for i in range(len(big_set))])
    a = WittVector(S, R, [Poly.variable(n, big_set.index(s)) for s in S])
    b = WittVector(S, R, [Poly.variable(n, len(big_set) + i) for i in range(len(S))])
    return a, b, big


def _run(ident, a, b, params):
    n = 0
    for label, lhs, rhs in ident.func(a, b, params):
        n += 1
        if lhs != rhs:
            return n, {"case": label, "lhs": lhs, "rhs": rhs}
    return n, None


def check_identity(
    name,
    S: TruncationSet,
    params=None,
    mode="symbolic",
    ring="Z",
    seed=0,
    samples=50,
    inputs=None,
    limits=None,
) -> CheckResult:
    """Check identity ``name`` on ``S``.

    ``mode="symbolic"`` proves it over ``Z[a_s, b_s]`` (subject to the size
    limits); ``mode="sampled"`` tests ``samples`` random input pairs drawn
    from ``ring`` with a PRNG seeded by ``seed``.  ``inputs`` replaces the
    random pairs with explicit ``(a, b)`` tuples (``b`` may be ``None``).
    The first failing comparison is returned as the witness.
    """
    ident = get_identity(name)
    params = dict(params or {})
    ident.required(params)
    start = time.perf_counter()
    if mode == "symbolic":
        limits = limits or DEFAULT_LIMITS
        check_limits(S, limits)
        check_limits(ident.span(S, params), limits, what="working set")
        a, b, big = _symbolic_inputs(name, S, params)
        comparisons, witness = _run(ident, a, b, {**params, "_big": big})
        return CheckResult(
            name, S, params, mode, a.ring.descriptor, witness is None, 1, comparisons, witness,
            time.perf_counter() - start,
        )
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    R = make_ring(ring)
    rng = random.Random(seed)
    if inputs is None:
        inputs = (_random_pair(name, S, R, rng, params) for _ in range(samples))
    with default_limits(limits):
        cases, comparisons, witness = _sampled(ident, inputs, params)
    return CheckResult(
        name, S, params, mode, R.descriptor, witness is None, cases, comparisons, witness,
        time.perf_counter() - start,
    )


def _sampled(ident, inputs, params):
    cases = comparisons = 0
    witness = None
    for pair in inputs:
        a, b = pair[0], pair[1] if len(pair) > 1 else None
        extra = pair[2] if len(pair) > 2 else None
        if b is None:
            b = WittVector(a.set, a.ring, [a.ring.embed(0)] * len(a.set))
        cases += 1
        n, witness = _run(ident, a, b, {**params, "_big": extra})
        comparisons += n
        if witness:
            witness = {"a": a, **({"b": b} if ident.binary else {}), **witness}
            break
    return cases, comparisons, witness


def _random_vector(S, R, rng):
    return WittVector(S, R, [R.random(rng) for _ in S])


def _random_pair(name, S, R, rng, params):
    a = _random_vector(S, R, rng)
    b = _random_vector(S, R, rng)
    big = None
    if name == "norm_definition":
        big = _random_vector(scale(S, params["p"]), R, rng)
        a = restrict(big, S)
    return a, b, big


# -- suites ---------------------------------------------------------------


def default_plan(max_element=12, samples=50):
    """The ``check --suite all`` plan: (identity, S, params, mode, ring) tuples.

    Symbolic runs are used where the working set stays small; the rest are
    sampled over Z and over rings with torsion.
    """
    def sets_up_to(m):
        cands = [
            [1], [1, 2], [1, 3], [1, 2, 4], [1, 2, 3], [1, 2, 3, 6], [1, 2, 4, 8],
            [1, 2, 3, 4, 6, 12], list(range(1, m + 1)),
        ]
        out = []
        for c in cands:
            if max(c) <= m:
                T = from_elements(c)
                if T not in out:
                    out.append(T)
        return out

    small = [from_elements(c) for c in ([1], [1, 2], [1, 3])]
    medium = sets_up_to(max_element)
    plan = []

    def add(name, sets, params, symbolic_cutoff, rings=("Z", "Zmod:4")):
        for T in sets:
            try:
                check_limits(IDENTITIES[name].span(T, params))
                within = True
            except SizeBound:
                within = False
            if within and T.max <= symbolic_cutoff:
                plan.append((name, T, params, "symbolic", "Z"))
                continue
            for r in rings:
                # torsion rings go through universal polynomials, which obey the size limits
                if within or make_ring(r).torsion_free:
                    plan.append((name, T, params, "sampled", r))

    for d in (2, 3, 4, 6):
        add("frobenius_norm", medium, {"d": d}, 4)
        add("norm_multiplicative", medium, {"d": d}, 3 if d < 6 else 2)
        add("norm_restriction", medium, {"d": d}, 4)
        add("teichmuller_fixed", medium, {"d": d}, 12)
    for d in (4, 6, 8, 12):
        add("norm_factorization", [T for T in medium if T.max <= 4], {"d": d}, 2)
    for d in (2, 3, 4):
        add("frobenius_verschiebung", medium, {"d": d}, 4, rings=("Z", "Zmod:6"))
        add("verschiebung_frobenius", medium, {"d": d}, 6, rings=("Z", "Zmod:6"))
        add("frobenius_restriction", medium, {"d": d}, 6, rings=("Z", "Zmod:6"))
        add("verschiebung_restriction", medium, {"d": d}, 4, rings=("Z", "Zmod:6"))
    for d, e in ((2, 3), (3, 2), (3, 4)):
        add("frobenius_verschiebung_coprime", medium, {"d": d, "e": e}, 4, rings=("Z", "Zmod:6"))
    for p in (2, 3):
        add("theta_congruence", medium, {"p": p}, 8)
        add("norm_definition", [T for T in medium if T.max <= 6], {"p": p}, 4)
        add("norm_verschiebung_same", [T for T in small], {"p": p}, 2)
    for p in (2, 3, 5):
        add("addition_defect", [p_typical(p, 1), p_typical(p, 2)], {"p": p}, 5)
    for p, q in ((2, 3), (3, 2), (2, 5)):
        add("norm_verschiebung_coprime", small, {"p": p, "q": q}, 1)
    add("root_of_unity", medium, {"p": 2}, 4, rings=("Z",))
    for T in small:
        plan.append(("root_of_unity", T, {"p": 3}, "sampled", "cyclo:3"))
    return plan


def run_plan(plan, seed=0, samples=50, limits=None):
    results = []
    for name, T, params, mode, ring in plan:
        results.append(check_identity(name, T, params, mode, ring, seed=seed, samples=samples, limits=limits))
    return results
