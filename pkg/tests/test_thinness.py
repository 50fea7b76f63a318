import copy
from math import gcd

import pytest
from hypothesis import given, strategies as st

from krthin.diagram import (
    normalize_code,
    parse_pd_file,
    plat_from_cf,
    resolve,
    theta_diagram,
)
from krthin.errors import (
    DiagramsNotRelated,
    InvalidParameter,
    NotAKnot,
    NotAlternating,
    ParityViolation,
    ZeroDeterminant,
)
from krthin.homfly import homfly, homfly_singular
from krthin.laurent import A, LaurentPoly, ONE, Q, RationalInvariant, T, substitute_a
from krthin.thinness import (
    ThinCertificate,
    certify_two_bridge,
    criterion_crossing_change,
    crossing_change_candidates,
    decompose_link,
    delta_homogeneous,
    euler_check,
    is_alternating,
    link_data,
    poincare_thin_knot,
    poincare_thin_link,
    q_summand,
    substitution_form,
    superpolynomial,
    two_bridge_codes,
    verify_certificate,
)

TREFOIL = A ** 2 * Q ** -2 + A ** 2 * Q ** 2 - A ** 4
knots = st.tuples(st.integers(3, 31), st.integers(1, 30)).filter(
    lambda t: t[0] % 2 and t[1] < t[0] and gcd(*t) == 1)
links = st.tuples(st.integers(2, 30), st.integers(1, 29), st.integers(0, 1)).filter(
    lambda t: t[0] % 2 == 0 and t[1] < t[0] and gcd(t[0], t[1]) == 1)


def test_superpolynomial_examples():
    assert superpolynomial(TREFOIL, 2) == A ** 2 * Q ** -2 + A ** 2 * Q ** 2 * T ** -2 + A ** 4 * T ** -3
    assert superpolynomial(ONE, 0) == ONE
    fig8 = homfly(plat_from_cf((2, 2))).num
    assert superpolynomial(fig8, 0) == (A ** -2 * T ** 2 + Q ** -2 * T + 1 + Q ** 2 * T ** -1 + A ** 2 * T ** -2)


def test_superpolynomial_errors():
    with pytest.raises(NotAlternating):
        superpolynomial(A + ONE, 0)
    with pytest.raises(ParityViolation):
        superpolynomial(TREFOIL, 1)


def test_is_alternating(data_dir):
    assert is_alternating(TREFOIL)
    assert not is_alternating(homfly(parse_pd_file(data_dir / "8_19.pd")[0]))
    with pytest.raises(InvalidParameter):
        is_alternating(T)


def test_poincare_trefoil():
    assert poincare_thin_knot((3, 1), 5) == Q ** 8 + Q ** 12 * T ** -2 + Q ** 20 * T ** -3
    assert poincare_thin_knot((1, 0), 5) == ONE


def test_poincare_gate_and_errors():
    with pytest.raises(InvalidParameter):
        poincare_thin_knot((3, 1), 4)
    assert poincare_thin_knot((3, 1), 4, conjectural=True).total() == 3
    with pytest.raises(NotAKnot):
        poincare_thin_knot((4, 1), 5)
    with pytest.raises(InvalidParameter):
        poincare_thin_link((3, 1), 5)


def test_theta_and_hopf_links():
    assert poincare_thin_link(theta_diagram(), 5) == q_summand(5, 0, 0)
    for bit in (0, 1):
        assert poincare_thin_link((2, 1), 6, bit).total() == 2 + 6 - 2


def test_decompose_hopf():
    P = homfly(plat_from_cf((2,), 1))
    dec = decompose_link(P, 1, 2)
    # P = a q^-1 + q (a^2)(a q^-1 - a^-1 q)/(q - q^-1)
    assert dec.ptilde == A * Q ** -1
    q_part = RationalInvariant(Q * A ** 2 * (A * Q ** -1 - A ** -1 * Q), 1)
    assert RationalInvariant(dec.ptilde) + q_part == P
    with pytest.raises(ZeroDeterminant):
        decompose_link(RationalInvariant(A - A ** -1, 1), 0, 0)


@given(knots, st.sampled_from([5, 6, 7]))
def test_knot_homology_properties(pq, N):
    ld = link_data(plat_from_cf(normalize_code(*pq).cf))
    PN = ld.poincare(N)
    assert PN.is_nonnegative()
    assert PN.total() == ld.det
    assert euler_check(PN, ld.homfly, N)
    assert delta_homogeneous(superpolynomial(ld.homfly, ld.sigma), ld.sigma)
    assert substitution_form(ld.homfly, ld.sigma, N) == PN


@given(links, st.sampled_from([5, 6, 7]))
def test_link_homology_properties(pqb, N):
    p, q, bit = pqb
    ld = link_data(plat_from_cf(normalize_code(p, q).cf, bit))
    PN = ld.poincare(N)
    assert PN.is_nonnegative()
    assert PN.total() == ld.det + N - 2
    assert euler_check(PN, ld.homfly, N)


def test_certificate_trefoil():
    cert = certify_two_bridge((3, 1), 5)
    assert cert.kind == "skein_regular"
    assert cert.det == 3 and cert.sigma == 2
    assert verify_certificate(cert).ok
    assert ThinCertificate.from_json(cert.to_json()).to_json() == cert.to_json()


def test_certificate_rejects_unlink_and_gate():
    with pytest.raises(ZeroDeterminant):
        certify_two_bridge((0, 1), 5)
    with pytest.raises(InvalidParameter):
        certify_two_bridge((3, 1), 3)


@pytest.mark.parametrize("pq", [(5, 2), (7, 3), (8, 3), (13, 5), (12, 5)])
def test_certificates_verify(pq):
    for bit in ((0, 1) if pq[0] % 2 == 0 else (0,)):
        cert = certify_two_bridge(pq, 5, bit)
        rep = verify_certificate(cert)
        assert rep.ok, rep.failures
        kinds = set()
        stack = [cert]
        while stack:
            c = stack.pop()
            kinds.add(c.kind)
            if c.kind.startswith("skein"):
                assert c.det == sum(ch.det for ch in c.children)
            stack.extend(c.children)
        assert kinds & {"base_unknot", "base_theta"}


def _first(cert, pred):
    stack = [cert]
    while stack:
        c = stack.pop()
        if pred(c):
            return c
        stack.extend(c.children)
    raise LookupError


def test_verifier_catches_tampering():
    good = certify_two_bridge((13, 5), 5)
    bad = copy.deepcopy(good)
    _first(bad, lambda c: c.kind.startswith("skein")).children[0].sigma += 2
    assert not verify_certificate(bad).ok
    bad = copy.deepcopy(good)
    node = _first(bad, lambda c: c.kind.startswith("skein"))
    node.shifts[0] = (node.shifts[0][0] + 1, node.shifts[0][1])
    assert not verify_certificate(bad).ok
    bad = copy.deepcopy(good)
    _first(bad, lambda c: c.kind.startswith("skein")).children.pop()
    assert not verify_certificate(bad).ok
    bad = copy.deepcopy(good)
    bad.N = 6
    assert not verify_certificate(bad, N=5).ok


def test_two_bridge_codes_small():
    codes = two_bridge_codes(5)
    assert (normalize_code(1, 0), 0) in codes
    assert sum(1 for c, _ in codes if c.p == 4) == 4  # K(4,1), K(4,3), two orientations each
    assert len({c for c, _ in codes if c.p == 5}) == 3


@pytest.mark.parametrize("name", ["8_5", "8_15", "8_16", "8_17", "8_21"])
def test_crossing_change_criterion_applies(data_dir, name):
    K = parse_pd_file(data_dir / f"{name}.pd")[0]
    found = crossing_change_candidates(K)
    assert found
    for _, v in found:
        assert v["det_L2"] == v["det_Ls"] + v["det_L0"]
        assert v["det_Ls"] == v["det_L1"] + v["det_L0"]


def test_crossing_change_unrelated():
    K = plat_from_cf((2, 3))
    with pytest.raises(DiagramsNotRelated):
        criterion_crossing_change(K, plat_from_cf((5,)), plat_from_cf((3,)))


def test_crossing_change_not_applicable():
    K = plat_from_cf((3,))
    v = criterion_crossing_change(resolve(K, 0, "switch"), K, resolve(K, 0, "oriented_smooth"))
    assert not v["applies"] and v["implied"] is None
