"""
Reduced sl(N) homology of thin links
====================================

For a thin knot the Poincare polynomial is read off from the HOMFLY
polynomial and the signature.  Run with ``python3 demos/02_thin_homology.py``.
"""
from krthin import homfly, normalize_code, plat_from_cf, superpolynomial
from krthin.thinness import link_data

# %%
# The superpolynomial puts every HOMFLY term in a homological degree fixed by
# the signature.  Setting a = q^N gives the sl(N) Poincare polynomial.
D = plat_from_cf(normalize_code(5, 2).cf)
ld = link_data(D)
print("figure-eight HOMFLY:", ld.homfly)
print("superpolynomial:   ", superpolynomial(ld.homfly, ld.sigma))
for N in (5, 6, 7):
    print(f"  N={N}:", ld.poincare(N))

# %%
# The total dimension is the determinant for knots and det + N - 2 for
# two-component links, where one summand is a truncated polynomial ring.
print()
print(f"{'link':>10} {'det':>4}  dims for N = 5, 6, 7")
for p, q, bit in [(3, 1, 0), (7, 2, 0), (13, 5, 0), (2, 1, 1), (8, 3, 0), (12, 5, 1)]:
    ld = link_data(plat_from_cf(normalize_code(p, q).cf, bit))
    dims = [ld.poincare(N).total() for N in (5, 6, 7)]
    print(f"{f'K({p},{q})':>10} {ld.det:>4}  {dims}")

# %%
# Setting t = -1 recovers the sl(N) polynomial P(q^N, q).
PN = link_data(plat_from_cf((3,))).poincare(5)
print()
print("trefoil P_5 at t=-1:", PN.at_t(-1))
