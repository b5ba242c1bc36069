"""Print universal norm polynomials and persist them in a cache file.

Run with ``python demos/universal_polynomials.py [cache-path]``.
"""

import sys
import tempfile
from pathlib import Path

from bigwitt import PolyCache, cache_load, from_elements
from bigwitt.universal import output_set

cache = PolyCache()
for d, elements in ((2, [1, 2]), (3, [1]), (2, [1, 2, 4])):
    S = from_elements(elements)
    print(f"N_{d} on {S}:")
    for t, p in zip(output_set("norm", d, S), cache.vector("norm", d, S)):
        print(f"  coordinate {t:>2}: {p}")

path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.gettempdir()) / "witt-demo-cache.txt"
cache.store(str(path))
again = cache_load(str(path), verify=True)
print(f"stored {len(cache)} polynomials in {path}; reload identical: {again.to_text() == cache.to_text()}")
