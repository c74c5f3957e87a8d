from fractions import Fraction as F

import pytest

from realtori.catalog import builtin, cube, dp, realize, symmetric_decompositions
from realtori.errors import (
    NoSymmetricPointOnFacetError,
    NotDelzantError,
    NotInChamberError,
    NotMonotoneError,
    PointOutsideError,
    ScaleOutOfRangeError,
)
from realtori.geometry import from_halfspaces
from realtori.toric import (
    INCONCLUSIVE,
    NOT_REAL_BY_ASYMMETRY,
    REAL_BY_SYMMETRY,
    central_fibre_realness,
    energy_profile,
    germ_evenness,
    level_set,
    probe_at,
    smith_filter,
    symmetric_points_and_fs,
)

SQ = builtin("s2xs2").polytope
TRI = builtin("cpn:2").polytope
X1 = builtin("x1").polytope
X2 = builtin("x2").polytope


def test_symmetric_points_examples():
    s = symmetric_points_and_fs(SQ)
    assert len(s.points) == 8 and s.fs
    s = symmetric_points_and_fs(TRI)
    assert set(s.points) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)} and s.fs
    rect = from_halfspaces(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), F(1, 2)), ((0, -1), F(1, 2))])
    s = symmetric_points_and_fs(rect)
    assert set(s.points) == {(1, 0), (-1, 0)} and not s.fs
    assert s.hits[2] == () and s.hits[3] == ()


def test_symmetric_points_closed_under_negation():
    for P in (TRI, X1, X2, dp(3), builtin("cpn:3").polytope):
        pts = set(symmetric_points_and_fs(P).points)
        assert pts == {tuple(-c for c in p) for p in pts}


def test_energy_profile_square():
    e = energy_profile(SQ, ("1/2", "1/4"))
    assert e.values == (F(1, 2), F(3, 2), F(3, 4), F(5, 4))
    assert e.minimum == F(1, 2) and e.active == {0} and e.in_chamber and e.exact
    e = energy_profile(SQ, (0, 0))
    assert e.active == {0, 1, 2, 3} and not e.in_chamber and not e.exact


@pytest.mark.parametrize("c", [F(-3, 4), F(-1, 5), F(0), F(1, 3), F(9, 10)])
def test_energy_interval_matches_sphere(c):
    assert energy_profile(dp(1), (c,)).minimum == 1 - abs(c)


def test_energy_rejects_boundary_and_outside():
    with pytest.raises(PointOutsideError):
        energy_profile(SQ, (1, 0))
    with pytest.raises(PointOutsideError):
        energy_profile(SQ, (2, 0))
    with pytest.raises(PointOutsideError):
        energy_profile(SQ, (0,))


def test_energy_flags_non_monotone():
    big = from_halfspaces(2, [((1, 0), 2), ((-1, 0), 2), ((0, 1), 2), ((0, -1), 2)])
    e = energy_profile(big, (1, 0))
    assert e.in_chamber and not e.monotone and not e.exact


def test_germ_evenness_examples():
    g = germ_evenness(SQ, (0, 0))
    assert g.even and set(g.pairing) == {(0, 1), (2, 3)}
    g = germ_evenness(SQ, ("1/2", "1/2"))
    assert not g.even and g.active == {0, 2} and SQ.facets[g.witness].normal == (1, 0)
    g = germ_evenness(TRI, (0, 0))
    assert not g.even and len(g.active) == 3


def test_probe_square_example():
    r = probe_at(SQ, ("1/2", 0))
    p = r.probe
    assert p.facet == 0 and p.u == (1, 0) and p.base == (1, 0) and p.direction == (-1, 0)
    assert p.length == 2 and r.displaceable and r.upper_bound == F(1, 2)


def test_probe_triangle_example():
    r = probe_at(TRI, ("1/2", 0))
    p = r.probe
    assert TRI.facets[p.facet].normal == (1, 1)
    assert p.u == (1, 0) and p.base == (1, 0) and p.direction == (-1, 0) and p.length == 2
    assert r.displaceable and r.upper_bound == F(1, 2)


def test_probe_affine_parameter_is_ell():
    r = probe_at(X2, ("1/3", "-1/7"))
    p = r.probe
    f = X2.facets[p.facet]
    for t in (F(0), F(1, 3), p.length):
        assert f.ell(p.point_at(t)) == t
    assert X2.contains(p.point_at(p.length))
    assert not X2.contains(p.point_at(p.length + F(1, 1000)))


def test_probe_errors():
    with pytest.raises(NotInChamberError):
        probe_at(SQ, (0, 0))
    rect = from_halfspaces(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), F(1, 2)), ((0, -1), F(1, 2))])
    with pytest.raises(NotMonotoneError):
        probe_at(rect, (0, "1/3"))
    with pytest.raises(NotMonotoneError):
        probe_at(SQ.translated((1, 0)), (1, "1/2"))


def test_probe_needs_symmetric_point_on_facet(monkeypatch):
    # FS holds for every monotone polytope of small dimension, so stub the hit lists
    from realtori import toric

    orig = toric.symmetric_points_and_fs
    monkeypatch.setattr(toric, "symmetric_points_and_fs",
                        lambda P: orig(P).__class__((), ((),) * len(P.facets), False))
    with pytest.raises(NoSymmetricPointOnFacetError):
        probe_at(SQ, ("1/2", 0))


def test_central_fibre_verdicts():
    assert central_fibre_realness(SQ).verdict == REAL_BY_SYMMETRY
    assert central_fibre_realness(TRI).verdict == NOT_REAL_BY_ASYMMETRY
    v = central_fibre_realness(X1)
    assert v.verdict == NOT_REAL_BY_ASYMMETRY and v.evidence["normal"] in {(1, 1), (0, -1), (-1, 0)}
    unpaired = {f.normal for f in X1.facets if tuple(-a for a in f.normal) not in {g.normal for g in X1.facets}}
    assert v.evidence["normal"] in unpaired
    assert central_fibre_realness(builtin("x3").polytope).verdict == REAL_BY_SYMMETRY


def test_central_fibre_inconclusive_cases():
    assert central_fibre_realness(dp(3)).verdict == INCONCLUSIVE
    big = from_halfspaces(2, [((1, 0), 2), ((-1, 0), 2), ((0, 1), 2), ((0, -1), 2)])
    v = central_fibre_realness(big)
    assert v.verdict == INCONCLUSIVE and "monotone" in v.evidence["reason"]


def test_central_fibre_on_translated_input():
    assert central_fibre_realness(TRI.translated((2, 5))).verdict == NOT_REAL_BY_ASYMMETRY


def test_smith_filter_examples():
    s = smith_filter(TRI)
    assert (s.passes, s.euler) == (False, 3)
    s = smith_filter(X2)
    assert (s.passes, s.euler) == (False, 5)
    s = smith_filter(X1)
    assert (s.passes, s.euler) == (True, 4)
    with pytest.raises(NotDelzantError):
        smith_filter(dp(3))


def test_smith_passes_on_symmetric_catalog():
    for n in range(1, 6):
        for d in symmetric_decompositions(n):
            assert smith_filter(realize(d).polytope).passes


def test_level_set_examples():
    assert level_set(SQ, "1/2").polytope == from_halfspaces(
        2, [((1, 0), F(1, 2)), ((-1, 0), F(1, 2)), ((0, 1), F(1, 2)), ((0, -1), F(1, 2))])
    assert level_set(SQ, 1).polytope == SQ
    L = level_set(TRI, "1/4").polytope
    assert set(L.vertices) == {(F(-1, 4), F(-1, 4)), (F(1, 2), F(-1, 4)), (F(-1, 4), F(1, 2))}


def test_level_set_errors():
    with pytest.raises(ScaleOutOfRangeError):
        level_set(SQ, 0)
    with pytest.raises(ScaleOutOfRangeError):
        level_set(SQ, "3/2")
    with pytest.raises(NotMonotoneError):
        level_set(SQ.translated((1, 0)), "1/2")


def test_active_set_scaling_invariance():
    x = (F(1, 3), F(-1, 5))
    for lam in (F(1), F(1, 2), F(2, 7)):
        a = energy_profile(X2, x).active
        b = energy_profile(level_set(X2, lam).polytope, tuple(lam * c for c in x)).active
        assert a == b


def test_probe_bound_equals_energy_in_3d():
    P = cube(3)
    x = (F(1, 2), F(1, 5), F(-1, 7))
    assert probe_at(P, x).upper_bound == energy_profile(P, x).minimum
