import pytest
from hypothesis import given, strategies as st

from krthin.diagram import plat_from_cf
from krthin.errors import InvalidParameter
from krthin.laurent import LaurentPoly, Q, T
from krthin.thinness import link_data
from krthin.unreduced import (
    dimension,
    e1_bound_ok,
    e1_poincare,
    euler_identity,
    gornik_slice_ok,
    quantum_int,
    t_slice,
    unreduced_fig8,
    unreduced_torus2n,
)


def test_quantum_int():
    assert quantum_int(1) == LaurentPoly.const(1)
    assert quantum_int(2) == Q ** -1 + Q
    with pytest.raises(InvalidParameter):
        quantum_int(0)


@given(st.integers(1, 30))
def test_quantum_int_dimension_and_symmetry(N):
    qi = quantum_int(N)
    assert dimension(qi) == N
    assert qi.mirror() == qi
    assert qi * (Q - Q ** -1) == Q ** N - Q ** -N


def test_torus_degenerate_case():
    assert unreduced_torus2n(5, 1) == quantum_int(5)


def test_parameter_checks():
    with pytest.raises(InvalidParameter):
        unreduced_torus2n(4, 3)
    with pytest.raises(InvalidParameter):
        unreduced_torus2n(5, 4)
    with pytest.raises(InvalidParameter):
        unreduced_fig8(3)


def test_trefoil_n5_expansion():
    # q^8 ([5] + [4] q^-1 (1 + q^10 t^-1) q^4 t^-2)
    expect = quantum_int(5).shift(q=8) + (quantum_int(4) * (1 + Q ** 10 * T ** -1)).shift(q=11, t=-2)
    assert unreduced_torus2n(5, 3) == expect
    assert dimension(expect) == 13


def test_e1_page():
    assert e1_poincare(LaurentPoly.const(1), 5) == quantum_int(5)
    PN = link_data(plat_from_cf((3,))).poincare(5)
    assert dimension(e1_poincare(PN, 5)) == 15
    assert e1_bound_ok(unreduced_torus2n(5, 3), PN, 5)


@pytest.mark.parametrize("N", [5, 6, 7])
@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_torus_family(N, n):
    U = unreduced_torus2n(N, n)
    ld = link_data(plat_from_cf((n,)))
    assert dimension(U) == N + (N - 1) * (n - 1)
    assert t_slice(U) == quantum_int(N).shift(q=(n - 1) * (N - 1))
    assert gornik_slice_ok(U, N)
    assert euler_identity(U, ld.homfly, N)
    assert e1_bound_ok(U, ld.poincare(N), N)
    assert dimension(U) <= ld.det * N


@pytest.mark.parametrize("N", [5, 6, 7, 8])
def test_figure_eight(N):
    U = unreduced_fig8(N)
    ld = link_data(plat_from_cf((2, 2)))
    assert dimension(U) == 5 * N - 4
    assert gornik_slice_ok(U, N)
    assert euler_identity(U, ld.homfly, N)
    assert e1_bound_ok(U, ld.poincare(N), N)
    ring = Q ** (2 * N + 1) * T ** -2 + Q * T ** -1 + Q ** -1 * T + Q ** (-2 * N - 1) * T ** 2
    assert U - quantum_int(N) == quantum_int(N - 1) * ring
