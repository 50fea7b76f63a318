"""Closed-form unreduced sl(N) Poincare polynomials and consistency checks.

Two families are available in closed form: the positive (2, n) torus knots
and the figure-eight knot.  Both are valid for N > 4.  The checks compare them
with the reduced data through the reduced-to-unreduced spectral sequence,
whose first page is the reduced homology tensored with the unknot's [N].
"""
from __future__ import annotations

from .errors import InvalidParameter
from .laurent import LaurentPoly, Q, RationalInvariant, substitute_a

__all__ = [
    "quantum_int",
    "unreduced_torus2n",
    "unreduced_fig8",
    "e1_poincare",
    "t_slice",
    "dimension",
    "euler_identity",
    "gornik_slice_ok",
    "e1_bound_ok",
]


def quantum_int(N: int) -> LaurentPoly:
    """[N] = q^(1-N) + q^(3-N) + ... + q^(N-1)."""
    if not isinstance(N, int) or N < 1:
        raise InvalidParameter("N must be a positive integer")
    return LaurentPoly({(0, k, 0): 1 for k in range(1 - N, N, 2)})


def _check_N(N: int):
    if not isinstance(N, int) or N <= 4:
        raise InvalidParameter("closed forms need an integer N > 4")


def unreduced_torus2n(N: int, n: int) -> LaurentPoly:
    """Unreduced Poincare polynomial of the positive (2, n) torus knot.

    n = 1 is allowed and gives the unknot value [N].
    """
    _check_N(N)
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise InvalidParameter("n must be an odd positive integer")
    tail = LaurentPoly()
    for i in range(1, (n - 1) // 2 + 1):
        tail = tail + LaurentPoly.monomial(q=4 * i, t=-2 * i)
    inner = quantum_int(N) + quantum_int(N - 1) * Q ** -1 * (1 + LaurentPoly.monomial(q=2 * N, t=-1)) * tail
    return inner.shift(q=(n - 1) * (N - 1))


def unreduced_fig8(N: int) -> LaurentPoly:
    """Unreduced Poincare polynomial of the figure-eight knot."""
    _check_N(N)
    ring = (
        LaurentPoly.monomial(q=2 * N + 1, t=-2)
        + LaurentPoly.monomial(q=1, t=-1)
        + LaurentPoly.monomial(q=-1, t=1)
        + LaurentPoly.monomial(q=-2 * N - 1, t=2)
    )
    return quantum_int(N) + quantum_int(N - 1) * ring


def e1_poincare(PN: LaurentPoly, N: int) -> LaurentPoly:
    """Graded dimension of the first page: reduced homology times [N]."""
    return PN * quantum_int(N)


def t_slice(poly: LaurentPoly, t: int = 0) -> LaurentPoly:
    """The part of ``poly`` in homological degree ``t``, with t dropped."""
    return LaurentPoly({(a, q, 0): c for (a, q, tt), c in poly.items() if tt == t})


def dimension(poly: LaurentPoly) -> int:
    """Total dimension, i.e. the value at q = t = 1."""
    return poly.total()


def euler_identity(unreduced: LaurentPoly, P, N: int) -> bool:
    """At t = -1 the unreduced polynomial is [N] * P(q^N, q)."""
    P = RationalInvariant._promote(P)
    if P.dpow:
        raise InvalidParameter("closed forms exist for knots only")
    return unreduced.at_t(-1) == quantum_int(N) * substitute_a(P.num, N)


def gornik_slice_ok(unreduced: LaurentPoly, N: int) -> bool:
    """The homological-degree-zero part of a knot has dimension exactly N."""
    return dimension(t_slice(unreduced, 0)) == N


def e1_bound_ok(unreduced: LaurentPoly, PN: LaurentPoly, N: int) -> bool:
    """dim H_N <= dim E_1 and the difference is even."""
    gap = dimension(e1_poincare(PN, N)) - dimension(unreduced)
    return gap >= 0 and gap % 2 == 0
