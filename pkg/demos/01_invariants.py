"""
HOMFLY polynomial, determinant and signature of two-bridge links
================================================================

Run with ``python3 demos/01_invariants.py``.
"""
from krthin import homfly, normalize_code, plat_from_cf, signature_regular
from krthin.invariants import complex_det

# %%
# A two-bridge link K(p, q) is drawn as an alternating 4-plat from the
# continued fraction of p/q.  The positive trefoil is K(3, 1).
code = normalize_code(3, 1)
D = plat_from_cf(code.cf)
print("K(3,1) plat:", D)
print("HOMFLY:", homfly(D))

# %%
# Evaluating the HOMFLY polynomial at a = -1, q = i gives the complex
# determinant.  Its absolute value is p and its phase is i^sigma, where the
# signature comes from an independent Goeritz matrix computation.
for p, q in [(3, 1), (5, 2), (7, 3), (9, 2), (11, 4)]:
    code = normalize_code(p, q)
    s = signature_regular(code)
    print(f"K({p},{q}) cf={code.cf}  Det={s.cdet}  det={s.det}  sigma={s.sigma}")

# %%
# Two-component links need an orientation; flipping one component changes
# the linking number and the signature but not the determinant.
for bit in (0, 1):
    D = plat_from_cf(normalize_code(4, 1).cf, bit)
    s = signature_regular(D)
    print(f"K(4,1) orientation {bit}: Det={complex_det(homfly(D))} sigma={s.sigma}")
