"""Randomized invariants over exact polytopes and the valency calculus."""
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import brute_lattice_points, brute_vertices, shoelace, slice_volume
from realtori import kernels
from realtori.catalog import SURFACE_NAMES, builtin
from realtori.chekanov import DeformationPoint, ominus, oplus, phi, phi_inverse
from realtori.geometry import (
    AffineUnimodularMap,
    from_halfspaces,
    parse,
    serialize,
    unimodular_equiv_search,
    valency_vector,
    volume,
)
from realtori.geometry.exact import rank
from realtori.geometry.polytope import edges, facet_lattice_counts, lattice_points, product
from realtori.svg import cyclic_vertices
from realtori.toric import energy_profile, level_set, probe_at, symmetric_points_and_fs

small = st.integers(-3, 3)
offsets = st.fractions(min_value=F(1, 2), max_value=3, max_denominator=4)


@st.composite
def polytopes(draw, dims=(2, 3), max_cuts=4):
    """A box around the origin cut by random half-spaces that keep the origin inside."""
    n = draw(st.sampled_from(dims))
    raw = []
    for j in range(n):
        for s in (1, -1):
            e = tuple(s * int(i == j) for i in range(n))
            raw.append((e, draw(st.integers(1, 3))))
    for _ in range(draw(st.integers(0, max_cuts))):
        v = tuple(draw(st.lists(small, min_size=n, max_size=n)))
        if any(v):
            raw.append((v, draw(offsets)))
    return from_halfspaces(n, raw)


@st.composite
def unimodular(draw, n, steps=4):
    """A product of elementary integer row operations and sign flips."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, steps))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            M[i] = [-a for a in M[i]]
        else:
            c = draw(st.sampled_from([-1, 1]))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    t = draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    return AffineUnimodularMap(M, t)


@given(polytopes())
def test_vertices_match_brute_force(P):
    assert list(P.vertices) == brute_vertices(P)


@given(polytopes())
def test_vertex_incidence_is_full_rank(P):
    for k, v in enumerate(P.vertices):
        facets = P.incidence[k]
        assert len(facets) >= P.dim
        assert rank([P.facets[i].normal for i in facets]) == P.dim
        assert all(P.facets[i].ell(v) == 0 for i in facets)
        assert all(P.facets[i].ell(v) > 0 for i in range(len(P.facets)) if i not in facets)


@given(polytopes())
def test_every_facet_is_irredundant(P):
    for i in range(len(P.facets)):
        assert len(P.facet_vertices(i)) >= P.dim


@given(polytopes(dims=(2, 3, 4), max_cuts=3))
def test_scan_and_double_description_agree(P):
    raw = [(f.normal, f.offset) for f in P.facets]
    a = from_halfspaces(P.dim, raw, method="scan")
    b = from_halfspaces(P.dim, raw, method="dd")
    assert a.vertices == b.vertices and a.facets == b.facets and a.incidence == b.incidence


@given(polytopes(dims=(2, 3, 4), max_cuts=3))
def test_backends_agree(P):
    raw = [(f.normal, f.offset) for f in P.facets]
    results = []
    for name in ("numba", "numpy"):
        kernels.set_backend(name)
        Q = from_halfspaces(P.dim, raw)
        results.append((Q.vertices, Q.incidence, edges(Q), lattice_points(Q), facet_lattice_counts(Q)))
    kernels.set_backend("numba")
    assert results[0] == results[1]
    assert results[0][3] == brute_lattice_points(P)


@given(polytopes(dims=(2,)))
def test_area_matches_shoelace(P):
    assert volume(P) == shoelace(cyclic_vertices(P))


@settings(max_examples=25)
@given(polytopes(dims=(3,), max_cuts=3))
def test_volume_matches_slice_oracle(P):
    assert volume(P) == slice_volume(P)


@given(st.data())
def test_unimodular_invariance(data):
    P = data.draw(polytopes())
    g = data.draw(unimodular(P.dim))
    Q = g.apply(P)
    R = from_halfspaces(P.dim, [(f.normal, f.offset) for f in Q.facets])
    assert R == Q and set(R.vertices) == set(Q.vertices)
    assert volume(R) == volume(P)
    assert valency_vector(R) == valency_vector(P)
    assert g.inverse().apply(Q) == P


@settings(max_examples=30)
@given(st.data())
def test_equivalence_search_recovers_a_map(data):
    P = data.draw(polytopes(dims=(2, 3), max_cuts=2))
    g = data.draw(unimodular(P.dim, steps=2))
    assume(max(abs(a) for r in g.matrix for a in r) <= 2)
    Q = from_halfspaces(P.dim, [(f.normal, f.offset) for f in g.apply(P).facets])
    res = unimodular_equiv_search(P, Q, bound=2)
    assert res.found
    assert res.map.apply(P) == Q


@given(polytopes())
def test_serialize_round_trip(P):
    assert parse(serialize(P)) == P


@settings(max_examples=30)
@given(polytopes(dims=(1, 2), max_cuts=2), polytopes(dims=(1, 2), max_cuts=2))
def test_product_counts_and_valency(P, Q):
    R = product(P, Q)
    assert R.dim == P.dim + Q.dim
    assert len(R.facets) == len(P.facets) + len(Q.facets)
    assert len(R.vertices) == len(P.vertices) * len(Q.vertices)
    assert volume(R) == volume(P) * volume(Q)
    if all(len(i) == P.dim for i in P.incidence) and all(len(i) == Q.dim for i in Q.incidence):
        assert valency_vector(R) == oplus(valency_vector(P), valency_vector(Q))


@given(polytopes())
def test_negation_and_scaling(P):
    assert (-P).vertices == tuple(sorted(tuple(-c for c in v) for v in P.vertices))
    assert -(-P) == P
    assert volume(P.scaled(F(1, 2))) == volume(P) / 2**P.dim


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@given(st.integers(2, 5).flatmap(lambda n: st.lists(rationals, min_size=n, max_size=n)))
def test_phi_round_trip(x):
    x = tuple(x)
    assert phi(phi_inverse(x)) == x
    p = phi_inverse(x)
    q = phi_inverse(phi(p))
    assert (q.t, q.s) == (p.t, p.s)


@given(st.lists(rationals, min_size=1, max_size=4), rationals)
def test_phi_inverse_of_phi_from_params(t, s):
    p = DeformationPoint(tuple(t), s)
    q = phi_inverse(phi(p))
    assert q.t == p.t and q.s == p.s


vectors = st.lists(st.integers(0, 20), min_size=1, max_size=6).map(lambda v: tuple(sorted(v, reverse=True)))


@given(vectors, vectors, vectors)
def test_oplus_ominus_algebra(a, b, c):
    assert ominus(oplus(a, b), b) == a
    assert oplus(a, b) == oplus(b, a)
    assert oplus(oplus(a, b), c) == oplus(a, oplus(b, c))
    assert len(oplus(a, b)) == len(a) * len(b)


@pytest.mark.parametrize("name", SURFACE_NAMES + ("dp:1", "cube:3", "cpn:3", "dp:4"))
def test_symmetric_points_negation_closed(name):
    P = builtin(name).polytope
    pts = set(symmetric_points_and_fs(P).points)
    assert pts == {tuple(-c for c in p) for p in pts}


def chamber_points(P):
    box = st.fractions(min_value=-1, max_value=1, max_denominator=16)
    return st.lists(box, min_size=P.dim, max_size=P.dim).map(tuple).filter(
        lambda x: P.contains_interior(x) and energy_profile(P, x).in_chamber)


@pytest.mark.parametrize("name", SURFACE_NAMES)
@settings(max_examples=30)
@given(data=st.data())
def test_probe_parameter_and_bound(name, data):
    P = builtin(name).polytope
    x = data.draw(chamber_points(P))
    r = probe_at(P, x)
    p = r.probe
    f = P.facets[p.facet]
    assert f.ell(x) == energy_profile(P, x).minimum == r.upper_bound
    for t in (F(0), f.ell(x), p.length):
        assert f.ell(p.point_at(t)) == t
    assert r.displaceable and p.length > 2 * f.ell(x)


@pytest.mark.parametrize("name", SURFACE_NAMES)
@settings(max_examples=20)
@given(data=st.data(), lam=st.fractions(min_value=F(1, 20), max_value=1, max_denominator=20))
def test_active_set_invariant_under_level_scaling(name, data, lam):
    P = builtin(name).polytope
    x = data.draw(chamber_points(P))
    scaled = level_set(P, lam).polytope
    assert energy_profile(scaled, tuple(lam * c for c in x)).active == energy_profile(P, x).active
