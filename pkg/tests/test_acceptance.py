"""One test per acceptance criterion; each prints a PASS/FAIL line with its timing.

All comparisons are exact integer or polynomial equalities.  Every test keeps
going after a mismatch so the verdict line is always printed, then asserts.
"""

import random
import time
from collections import defaultdict

import numpy as np
import pytest

from bigwitt import universal
from bigwitt.errors import IdentityFailure, NonIntegralCoefficient
from bigwitt.ghost import ghost_inverse_batch, ghost_map_batch, ghost_norm
from bigwitt.identities import check_identity
from bigwitt.ring import ZZ, make_ring
from bigwitt.trunc import all_truncation_sets, from_elements, p_typical, scale
from bigwitt.universal import PolyCache, SizeLimits, canonical_vector, cache_load, cache_store
from bigwitt.vectors import GhostVector, WittVector
from bigwitt.witt import norm, norm_via_definition, restrict

pytestmark = pytest.mark.acceptance

SEED = 20240601

# scale({1,2,3,6}, 6) has largest element 36
NORM_LIMITS = SizeLimits(36, 16)
# scale(S, 4) reaches 32 for S containing 8
SYMBOLIC_LIMITS = SizeLimits(32, 16)
# F_4 V_4 over Z/6 works on scale({1..12}, 4); N_2 V_5 on {1,2,4} reaches 40
RELATION_LIMITS = SizeLimits(48, 40)
# {1..18} has 18 elements
THETA_LIMITS = SizeLimits(30, 18)

SHARED = PolyCache(limits=NORM_LIMITS)


@pytest.fixture(scope="module", autouse=True)
def shared_cache():
    saved = universal.default_cache()
    universal.set_default_cache(SHARED)
    yield SHARED
    universal.set_default_cache(saved)


class Verdict:
    def __init__(self, number, label, budget):
        self.number, self.label, self.budget = number, label, budget
        self.failures = []
        self.start = time.perf_counter()

    def check(self, ok, what):
        if not ok and len(self.failures) < 5:
            self.failures.append(what)

    def finish(self, capsys, note=""):
        seconds = time.perf_counter() - self.start
        passed = not self.failures and seconds < self.budget
        status = "PASS" if passed else "FAIL"
        with capsys.disabled():
            print(f"\n{status} criterion {self.number} {self.label}: {seconds:.2f}s (budget {self.budget}s){note}")
            for f in self.failures:
                print(f"    {f}")
        assert not self.failures, self.failures
        assert seconds < self.budget, f"{seconds:.2f}s over the {self.budget}s budget"


def sets(*lists):
    return [from_elements(c) for c in lists]


def test_criterion_01_batch_ghost_round_trip(capsys):
    # compile the kernels before the clock starts
    warm = p_typical(2, 3)
    ghost_inverse_batch(warm, ghost_map_batch(warm, np.ones((2, 3), dtype=np.int64)))
    v = Verdict(1, "ghost round trip, all truncation sets up to 24, 200 vectors each", 10)
    by_size = defaultdict(list)
    for S in all_truncation_sets(24):
        by_size[len(S)].append(S)
    rng = np.random.default_rng(SEED)
    count = 0
    for n, group in by_size.items():
        block = rng.integers(-5, 6, size=(len(group), 200, n), dtype=np.int64)
        for S, A in zip(group, block):
            back = ghost_inverse_batch(S, ghost_map_batch(S, A))
            v.check(np.array_equal(back, A), f"round trip differs on {S}")
            count += 1
    v.check(count == 59265, f"expected 59265 sets, saw {count}")
    v.finish(capsys, f" sets={count}")


def test_criterion_02_norm_ghost_vs_universal(capsys):
    v = Verdict(2, "norm by ghost formula equals universal norm polynomials", 30)
    rng = random.Random(SEED)
    for d in (2, 3, 4, 5, 6):
        for S in sets([1], [1, 2], [1, 3], [1, 2, 4], [1, 2, 3, 6]):
            for _ in range(100):
                a = WittVector(S, ZZ, [rng.randint(-9, 9) for _ in S])
                ghost = norm(a, d, method="ghost")
                poly = norm(a, d, method="universal", cache=SHARED)
                v.check(ghost == poly, f"d={d} a={a}: {ghost} != {poly}")
    v.finish(capsys)


def test_criterion_03_frobenius_norm_and_multiplicativity_symbolic(capsys):
    v = Verdict(3, "F_d N_d = power and N_d multiplicative, symbolic, max element 8", 60)
    runs = 0
    for S in all_truncation_sets(8):
        for d in (2, 3, 4):
            for name in ("frobenius_norm", "norm_multiplicative"):
                r = check_identity(name, S, {"d": d}, "symbolic", limits=SYMBOLIC_LIMITS)
                v.check(r.passed, r.line())
                runs += 1
    v.finish(capsys, f" runs={runs}")


def test_criterion_04_norm_via_definition_symbolic(capsys):
    v = Verdict(4, "a - V_p theta_p(a) agrees with N_p, symbolic", 30)
    for p in (2, 3):
        for S in sets([1], [1, 2], [1, 2, 4]):
            U = scale(S, p)
            big = canonical_vector(U, "a")
            try:
                out = norm_via_definition(big, p, S)
            except IdentityFailure as exc:
                v.check(False, f"p={p} S={S}: {exc}")
                continue
            v.check(restrict(out, U) == norm(restrict(big, S), p), f"p={p} S={S}")
            r = check_identity("norm_definition", S, {"p": p}, "symbolic")
            v.check(r.passed, r.line())
    v.finish(capsys)


def test_criterion_05_factorization_independence(capsys):
    v = Verdict(5, "N_d independent of factorization", 30)
    for S in sets([1], [1, 2]):
        r = check_identity("norm_factorization", S, {"d": 6}, "symbolic")
        v.check(r.passed and r.comparisons == 3, r.line())
        for ring in ("Z", "Zmod:4"):
            r = check_identity("norm_factorization", S, {"d": 12}, "sampled", ring, seed=SEED, samples=100)
            v.check(r.passed and r.cases == 100 and r.comparisons == 800, r.line())
    v.finish(capsys)


RELATIONS = [
    ("frobenius_verschiebung", [{"d": d} for d in (2, 3, 4)]),
    ("frobenius_verschiebung_coprime", [{"d": 2, "e": 3}, {"d": 3, "e": 2}, {"d": 3, "e": 4}]),
    ("verschiebung_frobenius", [{"d": d} for d in (2, 3, 4)]),
    ("frobenius_restriction", [{"d": d} for d in (2, 3, 4)]),
    ("verschiebung_restriction", [{"d": d} for d in (2, 3, 4)]),
    ("norm_restriction", [{"d": d} for d in (2, 3)]),
]


def test_criterion_06_structure_relations(capsys):
    v = Verdict(6, "F/V relations and restriction squares, 200 samples over Z and Z/6", 30)
    targets = [from_elements(range(1, 13))] + sets([1, 2, 3, 4, 6, 12], [1, 2, 4, 8], [1, 3, 9])
    for ring in ("Z", "Zmod:6"):
        for S in targets:
            for name, plist in RELATIONS:
                for params in plist:
                    r = check_identity(name, S, params, "sampled", ring, seed=SEED, samples=200, limits=RELATION_LIMITS)
                    v.check(r.passed and r.cases == 200, r.line())
    v.finish(capsys)


def test_criterion_07_norm_identities(capsys):
    v = Verdict(7, "addition defect, N_p V_q, N_p V_p and the root-of-unity sum", 60)

    def run(name, S, params, mode, ring="Z", samples=100):
        limits = RELATION_LIMITS if mode == "sampled" else None
        r = check_identity(name, S, params, mode, ring, seed=SEED, samples=samples, limits=limits)
        v.check(r.passed, r.line())

    for p in (2, 3, 5):
        for n in (1, 2):
            run("addition_defect", p_typical(p, n), {"p": p}, "symbolic")
    larger = sets([1, 2], [1, 2, 3], [1, 2, 4])
    for p, q in ((2, 3), (3, 2), (2, 5)):
        run("norm_verschiebung_coprime", from_elements([1]), {"p": p, "q": q}, "symbolic")
        for S in larger:
            for ring in ("Z", "Zmod:4"):
                run("norm_verschiebung_coprime", S, {"p": p, "q": q}, "sampled", ring)
    for p in (2, 3):
        run("norm_verschiebung_same", from_elements([1]), {"p": p}, "symbolic")
        for S in larger:
            for ring in ("Z", "Zmod:4"):
                run("norm_verschiebung_same", S, {"p": p}, "sampled", ring)
    for S in sets([1], [1, 2], [1, 2, 4], [1, 2, 3, 6]):
        run("root_of_unity", S, {"p": 2}, "sampled", "Z")
    for S in sets([1], [1, 2], [1, 3]):
        run("root_of_unity", S, {"p": 3}, "sampled", "cyclo:3")
    v.finish(capsys)


def test_criterion_08_theta_integrality(capsys):
    v = Verdict(8, "theta_p universal polynomials are integral, max element 18", 60)
    errors = 0
    count = 0
    for p in (2, 3):
        for S in all_truncation_sets(18):
            try:
                count += len(SHARED.vector("theta", p, S, THETA_LIMITS))
            except NonIntegralCoefficient as exc:
                errors += 1
                v.check(False, f"p={p} S={S}: {exc}")
    v.check(errors == 0, f"{errors} NonIntegralCoefficient errors")
    v.finish(capsys, f" polynomials={count}")


def test_criterion_09_norm_needs_more_than_quotient_restriction(capsys):
    v = Verdict(9, "norm depends on more than the restriction to S/d", 1)
    S, T = from_elements([1, 3]), from_elements([1, 2, 3])
    a, a2 = WittVector.from_values(S, ZZ, [1, 0]), WittVector.from_values(S, ZZ, [1, 1])
    na, na2 = restrict(norm(a, 2), T), restrict(norm(a2, 2), T)
    v.check(na.raw(1) == na2.raw(1) and na.raw(2) == na2.raw(2), f"{na} vs {na2} differ below 3")
    v.check((na.raw(3), na2.raw(3)) == (0, 1), f"coordinate 3: {na.raw(3)} vs {na2.raw(3)}")
    v.finish(capsys)


def test_criterion_10_p_typical_ghost_law(capsys):
    v = Verdict(10, "ghost norm on p-typical coordinates", 1)
    R = make_ring("poly:x0,x1,x2")
    x0, x1, x2 = R.gens()
    x = GhostVector.from_values(p_typical(2, 3), R, [x0, x1, x2])
    expected = GhostVector.from_values(p_typical(2, 4), R, [x0, x0**2, x1**2, x2**2])
    got = ghost_norm(x, 2)
    v.check(got == expected, f"{got} != {expected}")
    v.finish(capsys)


def _fill_missing():
    # running this test alone: derive what criteria 2 and 8 would have cached
    for d in (2, 3, 4, 5, 6):
        for S in sets([1], [1, 2], [1, 3], [1, 2, 4], [1, 2, 3, 6]):
            SHARED.vector("norm", d, S, NORM_LIMITS)
    for p in (2, 3):
        for S in all_truncation_sets(18):
            SHARED.vector("theta", p, S, THETA_LIMITS)


def test_criterion_11_cache_round_trip(capsys, tmp_path):
    _fill_missing()
    v = Verdict(11, "cache store and load is bit-identical", 5)
    path = tmp_path / "polys.txt"
    cache_store(SHARED, str(path))
    stored = path.read_bytes()
    loaded = cache_load(str(path))
    v.check(loaded.keys() == SHARED.keys(), "key sets differ")
    v.check(loaded.to_text().encode("utf-8") == stored, "reloaded text differs from the stored file")
    v.finish(capsys, f" polynomials={len(SHARED)}")
