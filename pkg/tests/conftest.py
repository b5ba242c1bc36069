import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bigwitt.ring import ZZ, make_ring
from bigwitt.trunc import all_truncation_sets, divisor_set, from_elements
from bigwitt.vectors import WittVector

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# every truncation set with elements up to 8 (45 of them), and a few larger ones
SMALL_SETS = list(all_truncation_sets(8)) + [
    divisor_set(12),
    divisor_set(18),
    divisor_set(24),
    from_elements(range(1, 13)),
    from_elements(range(1, 25)),
]

RING_NAMES = ["Z", "Zmod:2", "Zmod:4", "Zmod:6", "poly:u,v"]


def small_sets(max_element=8, nonempty=False):
    pool = [S for S in SMALL_SETS if S.max <= max_element and (len(S) or not nonempty)]
    return st.sampled_from(pool)


@st.composite
def witt_vectors(draw, S=None, ring=ZZ, bound=6, max_element=8):
    if S is None:
        S = draw(small_sets(max_element))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return WittVector(S, ring, [ring.random(rng, bound) for _ in S])


@pytest.fixture(params=RING_NAMES)
def any_ring(request):
    return make_ring(request.param)


@pytest.fixture
def rng():
    return random.Random(20240601)
