"""Ghost round trips for many integer vectors at once.

Run with ``python demos/batch_ghost.py``.  The first call compiles the
kernels; later calls reuse the on-disk compilation cache.
"""

import time

import numpy as np

from bigwitt import all_truncation_sets, divisor_set, ghost_inverse_batch, ghost_map_batch

S = divisor_set(12)
A = np.array([[1, 1, 0, 0, 0, 0], [2, 3, -1, 0, 4, 1]])
X = ghost_map_batch(S, A)
print(f"set {S}")
print("Witt rows:\n", A)
print("ghost rows:\n", X)
print("round trip exact:", np.array_equal(ghost_inverse_batch(S, X), A))

# huge entries fall back to exact Python integers
big = ghost_map_batch(S, np.array([[10**6, 7, 0, 0, 0, 2]]))
print("large input uses dtype", big.dtype, "and x_12 =", big[0, -1])

rng = np.random.default_rng(0)
sets = list(all_truncation_sets(16))
start = time.perf_counter()
for T in sets:
    B = rng.integers(-5, 6, size=(200, len(T)))
    assert np.array_equal(ghost_inverse_batch(T, ghost_map_batch(T, B)), B)
print(f"{len(sets)} truncation sets x 200 vectors in {time.perf_counter() - start:.2f}s")
