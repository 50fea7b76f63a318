import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from krthin.diagram import (
    PlanarDiagram,
    add_twist,
    braid_closure,
    canonical_key,
    cf_to_pq,
    continued_fraction,
    gl_signature,
    normalize_code,
    parse_pd,
    plat_diagram,
    plat_from_cf,
    remove_kinks,
    resolve,
    singular_plat_type,
    symmetric_signature,
    theta_diagram,
    to_pd_text,
    trace_components,
    untwist_all,
)
from krthin.errors import (
    CrossingNotFound,
    InvalidCode,
    MalformedDiagram,
    SecondSingularCrossing,
)

coprime = st.tuples(st.integers(2, 40), st.integers(1, 39)).filter(lambda t: t[1] < t[0] and gcd(*t) == 1)


def test_continued_fraction_examples():
    assert continued_fraction(7, 3) == (2, 3)
    assert continued_fraction(5, 2) == (2, 2)
    assert cf_to_pq((2, 1, 2)) == (8, 3)
    assert cf_to_pq(()) == (0, 0)


@given(coprime)
def test_cf_roundtrip(pq):
    assert cf_to_pq(continued_fraction(*pq)) == pq


def test_normalize_identifies_inverse_residues():
    assert normalize_code(7, 5) == normalize_code(7, 3)
    assert normalize_code(5, 3) == normalize_code(5, 2)
    assert normalize_code(-3, 1) == normalize_code(3, 2)
    with pytest.raises(InvalidCode):
        normalize_code(4, 6)


@given(coprime, st.integers(0, 1))
def test_plat_components_follow_parity(pq, bit):
    code = normalize_code(*pq)
    D = plat_from_cf(code.cf, bit)
    assert trace_components(D).num_components == (1 if code.p % 2 else 2)
    assert len(D.crossings) == sum(code.cf)


def test_plat_trefoil_is_positive():
    lc = trace_components(plat_from_cf((3,)))
    assert (lc.writhe, lc.n_plus, lc.n_minus) == (3, 3, 0)
    assert gl_signature(plat_from_cf((3,))) == 2


def test_hopf_orientations():
    neg, pos = plat_from_cf((2,), 0), plat_from_cf((2,), 1)
    assert trace_components(neg).twice_lk == -2
    assert trace_components(pos).twice_lk == 2
    assert gl_signature(neg) == -1 and gl_signature(pos) == 1


@given(coprime, st.integers(0, 1))
def test_signature_shading_independent(pq, bit):
    D = plat_from_cf(normalize_code(*pq).cf, bit)
    assert gl_signature(D, 0) == gl_signature(D, 1)


@given(coprime)
def test_signature_mirror_negates(pq):
    D = plat_from_cf(normalize_code(*pq).cf)
    assert gl_signature(D.mirror()) == -gl_signature(D)


@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_symmetric_signature_matches_eigenvalues(n, rnd):
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = rnd.randint(-4, 4)
    ev = np.linalg.eigvalsh(np.array(M, dtype=float))
    assert symmetric_signature(M) == int((ev > 1e-9).sum() - (ev < -1e-9).sum())


@given(coprime, st.randoms(use_true_random=False))
def test_canonical_key_ignores_labels(pq, rnd):
    D = plat_from_cf(normalize_code(*pq).cf)
    edges = D.edges
    perm = edges[:]
    rnd.shuffle(perm)
    E = D.relabel(dict(zip(edges, perm)))
    assert canonical_key(E) == canonical_key(D)


def test_canonical_key_separates_mirrors():
    D = plat_from_cf((3,))
    assert canonical_key(D) != canonical_key(D.mirror())


def test_pd_roundtrip_and_comments():
    D = plat_from_cf((2, 3))
    text = "# a comment\n" + to_pd_text(D) + "  # trailing\n"
    assert parse_pd(text) == D


def test_unsigned_pd_orientation():
    D = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
    lc = trace_components(D)
    assert lc.num_components == 1 and abs(lc.writhe) == 3


def test_theta_pd():
    assert parse_pd("S[1,1,2,2]") == theta_diagram()


def test_malformed_inputs():
    with pytest.raises(MalformedDiagram):
        parse_pd("X[1,2,3]")
    with pytest.raises(MalformedDiagram):
        PlanarDiagram([(1, (1, 2, 3, 4))])
    with pytest.raises(SecondSingularCrossing):
        resolve(plat_diagram((3,), 0, True), 1, "make_singular")
    with pytest.raises(CrossingNotFound):
        resolve(plat_from_cf((3,)), 7, "switch")


def test_resolve_modes():
    D = plat_from_cf((3,))
    assert trace_components(resolve(D, 0, "switch")).writhe == 1
    assert trace_components(resolve(D, 0, "oriented_smooth")).num_components == 2
    S = resolve(D, 0, "make_singular")
    assert S.is_singular
    assert resolve(S, S.singular_index, "make_positive") == D
    assert resolve(D, 0, "switch").mirror().mirror() == resolve(D, 0, "switch")


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=8))
def test_braid_closure_is_valid(word):
    D = braid_closure(word, 3)
    assert trace_components(D).writhe == sum(1 if g > 0 else -1 for g in word)


def test_remove_kinks():
    D = braid_closure([1, 1, 1], 2)
    kinked = braid_closure([1, 1, 1, 2], 3)
    assert canonical_key(remove_kinks(kinked)) == canonical_key(D)


@given(st.lists(st.sampled_from([1, -1]), max_size=5))
def test_add_twist_then_untwist(signs):
    D = theta_diagram()
    for s in signs:
        D = add_twist(D, s)
    E, removed = untwist_all(D)
    assert canonical_key(E) == canonical_key(theta_diagram())
    assert sorted(removed) == sorted(signs)


@given(coprime, st.integers(0, 1))
def test_singular_plat_type_defined(pq, bit):
    code = normalize_code(*pq)
    assert singular_plat_type(code.cf, bit) in ("A", "B")
