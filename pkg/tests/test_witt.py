import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bigwitt.errors import (
    IdentityFailure,
    NotPrime,
    NotSubset,
    RingMismatch,
    SetMismatch,
    SizeBound,
    TargetMismatch,
    TorsionRing,
)
from bigwitt.ring import ZZ, make_ring
from bigwitt.trunc import divisor_set, from_elements, p_typical, quotient, scale, sub_truncation_sets
from bigwitt.vectors import WittVector
from bigwitt.witt import (
    addition_defect_coefficient,
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

from .conftest import RING_NAMES, small_sets

S1 = from_elements([1])
S12 = from_elements([1, 2])
S124 = p_typical(2, 3)


def wv(S, values, R=ZZ):
    S = S if not isinstance(S, list) else from_elements(S)
    return WittVector.from_values(S, R, values)


def vectors(R, S, seed, count, bound=5):
    rng = random.Random(seed)
    return [WittVector(S, R, [R.random(rng, bound) for _ in S]) for _ in range(count)]


# -- worked examples --------------------------------------------------------


def test_zero_and_one():
    assert witt_zero(S12, ZZ) == wv(S12, [0, 0])
    assert witt_one(S12, ZZ) == wv(S12, [1, 0])
    assert witt_one(S1, make_ring("Zmod:4")) == wv(S1, [1], make_ring("Zmod:4"))


def test_add_mul_examples():
    a = wv(S12, [1, 1])
    assert witt_add(a, a) == wv(S12, [2, 1])
    assert witt_mul(a, a) == wv(S12, [1, 4])
    assert witt_add(a, witt_zero(S12, ZZ)) == a


def test_operator_sugar():
    a, b = wv(S12, [1, 1]), wv(S12, [2, 3])
    assert a + b == witt_add(a, b)
    assert a * b == witt_mul(a, b)
    assert a - b == witt_sub(a, b)
    assert -a == witt_neg(a)
    assert a**3 == witt_pow(a, 3)
    assert a * 3 == witt_scalar(a, 3)
    assert 1 + a == witt_add(witt_one(S12, ZZ), a)


def test_mismatch_errors():
    with pytest.raises(SetMismatch):
        witt_add(wv(S12, [1, 1]), wv(S1, [1]))
    with pytest.raises(RingMismatch):
        witt_add(wv(S12, [1, 1]), wv(S12, [1, 1], make_ring("Zmod:4")))


def test_restrict_examples():
    a = wv(S124, [2, 0, 21])
    assert restrict(a, S12) == wv(S12, [2, 0])
    assert restrict(a, S124) == a
    assert len(restrict(a, from_elements([]))) == 0
    with pytest.raises(NotSubset):
        restrict(a, from_elements([1, 3]))


def test_frobenius_examples():
    assert frobenius(wv(S12, [1, 1]), 2) == wv(S1, [3])
    assert frobenius(wv(S124, [1, 1, 1]), 2) == wv(S12, [3, -1])
    a = wv([1, 2, 3], [4, 5, 6])
    assert frobenius(a, 1) == a


def test_verschiebung_examples():
    assert verschiebung(wv(S1, [5]), 2, S12) == wv(S12, [0, 5])
    R = make_ring("poly:a1,a2")
    a1, a2 = R.gens()
    assert verschiebung(wv(S12, [a1, a2], R), 2, S124) == wv(S124, [0, a1, a2], R)
    a = wv(S12, [3, 4])
    assert verschiebung(a, 1, S12) == a
    with pytest.raises(TargetMismatch):
        verschiebung(a, 2, S12)


def test_norm_examples():
    assert norm(wv(S12, [2, 3]), 2) == wv(S124, [2, 0, 21])
    Z4 = make_ring("Zmod:4")
    assert norm(wv(S12, [1, 1], Z4), 2) == wv(S124, [1, 0, 2], Z4)
    R = make_ring("poly:a")
    (a,) = R.gens()
    assert norm(wv(S1, [a], R), 6) == wv(divisor_set(6), [a, 0, 0, 0], R)
    b = wv([1, 2, 3], [4, 5, 6])
    assert norm(b, 1) == b


def test_norm_routes_agree_on_example():
    a = wv(S12, [2, 3])
    assert norm(a, 2, method="ghost") == norm(a, 2, method="universal") == wv(S124, [2, 0, 21])


def test_ghost_route_refused_on_torsion():
    with pytest.raises(TorsionRing):
        norm(wv(S12, [1, 1], make_ring("Zmod:4")), 2, method="ghost")


def test_theta_examples():
    R = make_ring("poly:a1,a2")
    a1, a2 = R.gens()
    assert theta(wv(S12, [a1, a2], R), 2) == wv(S1, [a2], R)
    assert theta(wv(S124, [1, 1, 1]), 2) == wv(S12, [1, -1])
    r = make_ring("poly:r").gen("r")
    assert theta(teichmuller(r, S124), 2) == witt_zero(S12, r.ring)
    with pytest.raises(NotPrime):
        theta(wv(S124, [1, 1, 1]), 4)


def test_teichmuller_examples():
    assert teichmuller(ZZ(2), S12) == wv(S12, [2, 0])
    assert teichmuller(ZZ(1), S124) == witt_one(S124, ZZ)
    assert teichmuller(ZZ(0), S124) == witt_zero(S124, ZZ)


def test_pow_examples():
    a = wv(S12, [2, 3])
    assert witt_pow(a, 2) == wv(S12, [4, 42])
    assert witt_pow(a, 1) == a
    assert witt_pow(a, 0) == witt_one(S12, ZZ)


def test_integer_embedding():
    # ghost <n, n, ...> inverted: for n = 2 on {1,2,4} that is (2, -1, -4)
    assert witt_int(2, S124, ZZ) == wv(S124, [2, -1, -4])
    Z4 = make_ring("Zmod:4")
    assert witt_int(2, S124, Z4) == wv(S124, [2, 3, 0], Z4)
    assert witt_int(3, S124, ZZ) == witt_add(witt_int(2, S124, ZZ), witt_one(S124, ZZ))


def test_norm_via_definition_examples():
    R = make_ring("poly:a1,a2,a4")
    a1, a2, a4 = R.gens()
    a = wv(S124, [a1, a2, a4], R)
    out = norm_via_definition(a, 2)
    assert out == wv(S124, [a1, 0, a1**2 * a2 + a2**2], R)
    t = teichmuller(ZZ(7), S124)
    assert norm_via_definition(t, 2) == t
    single = wv(S1, [9])
    assert norm_via_definition(single, 2) == single
    with pytest.raises(TorsionRing):
        norm_via_definition(wv(S124, [1, 1, 1], make_ring("Zmod:4")), 2)


def test_addition_defect_coefficient():
    assert [addition_defect_coefficient(5, i) for i in range(1, 5)] == [1, 2, 2, 1]
    with pytest.raises(ValueError):
        addition_defect_coefficient(4, 2)


def test_norm_not_determined_by_quotient_restriction():
    S = from_elements([1, 3])
    T = from_elements([1, 2, 3])
    a, a2 = wv(S, [1, 0]), wv(S, [1, 1])
    assert restrict(a, S1) == restrict(a2, S1)
    na, na2 = restrict(norm(a, 2), T), restrict(norm(a2, 2), T)
    assert na.raw(1) == na2.raw(1) and na.raw(2) == na2.raw(2)
    assert (na.raw(3), na2.raw(3)) == (0, 1)


def test_size_bound_on_torsion_rings():
    big = from_elements(range(1, 13))
    with pytest.raises(SizeBound):
        norm(WittVector(big, make_ring("Zmod:4"), [1] * 12), 2)


# -- invariants over all test rings ------------------------------------------


def ring_case(max_element):
    return st.tuples(st.sampled_from(RING_NAMES), small_sets(max_element), st.integers(0, 2**32 - 1))


@settings(max_examples=25)
@given(ring_case(6))
def test_commutative_ring_laws(case):
    name, S, seed = case
    R = make_ring(name)
    a, b, c = vectors(R, S, seed, 3)
    assert witt_add(witt_add(a, b), c) == witt_add(a, witt_add(b, c))
    assert witt_add(a, b) == witt_add(b, a)
    assert witt_mul(witt_mul(a, b), c) == witt_mul(a, witt_mul(b, c))
    assert witt_mul(a, b) == witt_mul(b, a)
    assert witt_mul(a, witt_add(b, c)) == witt_add(witt_mul(a, b), witt_mul(a, c))
    assert witt_add(a, witt_zero(S, R)) == a
    assert witt_mul(a, witt_one(S, R)) == a
    assert witt_add(a, witt_neg(a)) == witt_zero(S, R)


@settings(max_examples=25)
@given(small_sets(8), st.integers(0, 2**32 - 1))
def test_routes_agree_over_integers(S, seed):
    a, b = vectors(ZZ, S, seed, 2)
    assert witt_add(a, b, "ghost") == witt_add(a, b, "universal")
    assert witt_mul(a, b, "ghost") == witt_mul(a, b, "universal")
    assert witt_neg(a, "ghost") == witt_neg(a, "universal")
    for d in (2, 3):
        assert frobenius(a, d, "ghost") == frobenius(a, d, "universal")
        if scale(S, d).max <= 30 and len(scale(S, d)) <= 16:
            assert norm(a, d, "ghost") == norm(a, d, "universal")
        assert theta(a, d, "ghost") == theta(a, d, "universal")


@settings(max_examples=25)
@given(ring_case(6), st.integers(1, 4))
def test_frobenius_after_verschiebung(case, d):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    assert frobenius(verschiebung(a, d, scale(S, d)), d) == witt_scalar(a, d)


@settings(max_examples=25)
@given(ring_case(6), st.sampled_from([(2, 3), (3, 2), (2, 5), (3, 4)]))
def test_frobenius_verschiebung_coprime(case, de):
    name, S, seed = case
    d, e = de
    assert gcd(d, e) == 1
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    fa = frobenius(a, d)
    assert frobenius(verschiebung(a, e, scale(S, e)), d) == verschiebung(fa, e, scale(fa.set, e))


@settings(max_examples=25)
@given(ring_case(8), st.integers(1, 4))
def test_verschiebung_after_frobenius(case, d):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    v1 = verschiebung(witt_one(quotient(S, d), R), d, S)
    assert verschiebung(frobenius(a, d), d, S) == witt_mul(v1, a)


@settings(max_examples=20)
@given(ring_case(4), st.sampled_from([2, 3, 4]))
def test_frobenius_after_norm_is_power(case, d):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    assert frobenius(norm(a, d), d) == witt_pow(a, d)


@settings(max_examples=20)
@given(ring_case(3), st.sampled_from([2, 3]))
def test_norm_is_multiplicative(case, d):
    name, S, seed = case
    R = make_ring(name)
    a, b = vectors(R, S, seed, 2)
    assert norm(witt_mul(a, b), d) == witt_mul(norm(a, d), norm(b, d))
    assert norm(witt_one(S, R), d) == witt_one(scale(S, d), R)


@settings(max_examples=20)
@given(ring_case(2))
def test_norm_factorizations(case):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    direct = norm(a, 6)
    assert norm(norm(a, 3), 2) == direct
    assert norm(norm(a, 2), 3) == direct


@settings(max_examples=20)
@given(ring_case(6), st.sampled_from([2, 3]))
def test_norm_commutes_with_restriction(case, d):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    full = norm(a, d)
    for T in sub_truncation_sets(S, 8):
        assert restrict(full, scale(T, d)) == norm(restrict(a, T), d)


@settings(max_examples=25)
@given(ring_case(8), st.integers(1, 4))
def test_frobenius_and_verschiebung_commute_with_restriction(case, d):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    fa = frobenius(a, d)
    U = scale(S, d)
    va = verschiebung(a, d, U)
    for T in sub_truncation_sets(S, 8):
        assert restrict(fa, quotient(T, d)) == frobenius(restrict(a, T), d)
    for T in sub_truncation_sets(U, 8):
        assert restrict(va, T) == verschiebung(restrict(a, quotient(T, d)), d, T)


@settings(max_examples=25)
@given(ring_case(8), st.sampled_from([2, 3]))
def test_theta_congruence(case, p):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    Q = quotient(S, p)
    assert frobenius(a, p) == witt_add(restrict(witt_pow(a, p), Q), witt_scalar(theta(a, p), p))


@settings(max_examples=20)
@given(ring_case(4), st.sampled_from([2, 3]))
def test_addition_defect(case, p):
    name, S, seed = case
    R = make_ring(name)
    a, b = vectors(R, S, seed, 2)
    T = scale(S, p)
    rhs = witt_add(norm(a, p), norm(b, p))
    for i in range(1, p):
        term = verschiebung(witt_mul(witt_pow(a, i), witt_pow(b, p - i)), p, T)
        rhs = witt_add(rhs, witt_scalar(term, addition_defect_coefficient(p, i)))
    assert norm(witt_add(a, b), p) == rhs


@settings(max_examples=20)
@given(ring_case(1), st.sampled_from([(2, 3), (3, 2), (2, 5)]))
def test_norm_after_verschiebung_coprime(case, pq):
    name, S, seed = case
    p, q = pq
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    T = scale(S, p * q)
    lhs = norm(verschiebung(a, q, scale(S, q)), p)
    extra = witt_scalar(verschiebung(witt_pow(a, p), p * q, T), (q**p - q) // (p * q))
    assert lhs == witt_add(verschiebung(norm(a, p), q, T), extra)


@settings(max_examples=20)
@given(ring_case(1), st.sampled_from([2, 3]))
def test_norm_after_verschiebung_same_prime(case, p):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    lhs = norm(verschiebung(a, p, scale(S, p)), p)
    assert lhs == witt_scalar(verschiebung(witt_pow(a, p), p * p, scale(S, p * p)), p ** (p - 2))


@settings(max_examples=25)
@given(small_sets(8), st.integers(0, 2**32 - 1))
def test_root_of_unity_over_integers(S, seed):
    (a,) = vectors(ZZ, S, seed, 1)
    assert witt_add(norm(a, 2), norm(witt_neg(a), 2)) == verschiebung(witt_pow(a, 2), 2, scale(S, 2))


@settings(max_examples=15)
@given(small_sets(3), st.integers(0, 2**32 - 1))
def test_root_of_unity_over_cyclotomic_three(S, seed):
    R = make_ring("cyclo:3")
    (a,) = vectors(R, S, seed, 1, bound=3)
    xi = R.element(R.xi())
    total = witt_zero(scale(S, 3), R)
    for i in range(3):
        total = witt_add(total, norm(witt_mul(teichmuller(xi**i, S), a), 3))
    assert total == verschiebung(witt_pow(a, 3), 3, scale(S, 3))


@settings(max_examples=20)
@given(ring_case(6), st.sampled_from([2, 3, 4, 6]))
def test_norm_fixes_teichmuller(case, d):
    name, S, seed = case
    R = make_ring(name)
    r = R.random_element(random.Random(seed), 5)
    if scale(S, d).max > 30 and not R.torsion_free:
        return
    assert norm(teichmuller(r, S), d) == teichmuller(r, scale(S, d))


@settings(max_examples=20)
@given(small_sets(6), st.sampled_from([2, 3]), st.integers(0, 2**32 - 1))
def test_norm_via_definition_matches_norm(S, p, seed):
    U = scale(S, p)
    (big,) = vectors(ZZ, U, seed, 1)
    out = norm_via_definition(big, p, S)
    assert restrict(out, U) == restrict(out, U)
    assert restrict(out, U) == norm(restrict(big, S), p)


def test_norm_via_definition_reports_mismatch(monkeypatch):
    import bigwitt.witt as witt_module

    a = wv(S124, [1, 2, 3])
    real = witt_module.norm
    monkeypatch.setattr(witt_module, "norm", lambda v, p, *rest: witt_scalar(real(v, p), 2))
    with pytest.raises(IdentityFailure):
        norm_via_definition(a, 2)


@settings(max_examples=25)
@given(ring_case(6), st.integers(-4, 6))
def test_scalar_is_product_with_integer(case, n):
    name, S, seed = case
    R = make_ring(name)
    (a,) = vectors(R, S, seed, 1)
    assert witt_scalar(a, n) == witt_mul(witt_int(n, S, R), a)
