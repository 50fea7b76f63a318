"""
Unreduced homology of (2, n) torus knots and the figure-eight
=============================================================

Run with ``python3 demos/05_unreduced.py``.
"""
from krthin import plat_from_cf
from krthin.thinness import link_data
from krthin.unreduced import (
    dimension,
    e1_poincare,
    euler_identity,
    t_slice,
    unreduced_fig8,
    unreduced_torus2n,
)

# %%
# The reduced-to-unreduced spectral sequence starts from the reduced homology
# tensored with [N].  Differentials cancel generators in pairs, so the
# unreduced dimension is at most det * N with an even gap.
N = 5
print(f"{'knot':>8} {'E1':>4} {'H_N':>4}  degree-0 part")
for n in (3, 5, 7, 9, 11):
    U = unreduced_torus2n(N, n)
    PN = link_data(plat_from_cf((n,))).poincare(N)
    print(f"{f'T(2,{n})':>8} {dimension(e1_poincare(PN, N)):>4} {dimension(U):>4}  {t_slice(U)}")

# %%
U = unreduced_fig8(N)
ld = link_data(plat_from_cf((2, 2)))
print()
print("figure-eight, N=5:", U)
print("dimension", dimension(U), "of E1 dimension", dimension(e1_poincare(ld.poincare(N), N)))
print("Euler identity holds:", euler_identity(U, ld.homfly, N))
