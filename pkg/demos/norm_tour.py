"""A short walk through the norm map on small truncation sets.

Run with ``python demos/norm_tour.py``.
"""

from bigwitt import (
    ZZ,
    WittVector,
    from_elements,
    frobenius,
    ghost_map,
    make_ring,
    norm,
    restrict,
    teichmuller,
    theta,
    witt_pow,
)


def show(label, v):
    print(f"{label:<34} {v}")


S = from_elements([1, 2])
a = WittVector.from_values(S, ZZ, [2, 3])
show("a", a)
show("ghost coordinates of a", ghost_map(a))

n = norm(a, 2)
show("N_2(a)", n)
show("ghost coordinates of N_2(a)", ghost_map(n))

# F_2 after N_2 is squaring
show("F_2(N_2(a))", frobenius(n, 2))
show("a^2", witt_pow(a, 2))

# over Z/4 the universal polynomials take over
Z4 = make_ring("Zmod:4")
show("N_2((1,1)) over Z/4", norm(WittVector.from_values(S, Z4, [1, 1]), 2))

# Teichmuller vectors are fixed by every norm
t = teichmuller(ZZ(5), S)
show("N_3([5]) on <3>{1,2}", norm(t, 3))

# theta_2 measures how far F_2 is from squaring
b = WittVector.from_values(from_elements([1, 2, 4]), ZZ, [1, 1, 1])
show("theta_2((1,1,1))", theta(b, 2))

# the norm is not determined by the restriction to S/d
S13 = from_elements([1, 3])
T = from_elements([1, 2, 3])
for values in ([1, 0], [1, 1]):
    v = WittVector.from_values(S13, ZZ, values)
    show(f"N_2({tuple(values)}) on {{1,2,3}}", restrict(norm(v, 2), T))
