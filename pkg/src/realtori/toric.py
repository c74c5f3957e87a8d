"""Fibre energies, probes and realness of the central fibre.

Everything here works on the moment polytope alone: a fibre is named by
its base point ``x`` and the energy data are the facet functionals
``ell_i(x)``.
"""
from dataclasses import dataclass, field

from .errors import (
    NoSymmetricPointOnFacetError,
    NotInChamberError,
    NotMonotoneError,
    PointOutsideError,
    ScaleOutOfRangeError,
)
from .geometry.classify import classify, require_delzant, require_monotone
from .geometry.exact import as_fraction, as_point, dot
from .geometry.polytope import _as_array, _scaled_rows, lattice_slacks

REAL_BY_SYMMETRY = "RealBySymmetry"
NOT_REAL_BY_ASYMMETRY = "NotRealByAsymmetry"
NOT_REAL_BY_SMITH = "NotRealBySmith"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SymmetricPoints:
    points: tuple
    hits: tuple
    fs: bool


@dataclass(frozen=True)
class EnergyProfile:
    x: tuple
    values: tuple
    minimum: object
    active: frozenset
    in_chamber: bool
    monotone: bool
    property_fs: bool

    @property
    def exact(self):
        """True when the minimum is the energy itself, not only a lower bound."""
        return self.in_chamber and self.monotone and self.property_fs


@dataclass(frozen=True)
class GermEvenness:
    even: bool
    active: frozenset
    pairing: tuple
    witness: object = None


@dataclass(frozen=True)
class Probe:
    facet: int
    u: tuple
    base: tuple
    direction: tuple
    length: object

    def point_at(self, t):
        t = as_fraction(t)
        return tuple(w + t * d for w, d in zip(self.base, self.direction))


@dataclass(frozen=True)
class ProbeReport:
    probe: Probe
    displaceable: bool
    upper_bound: object


@dataclass(frozen=True)
class RealnessVerdict:
    verdict: str
    evidence: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SmithResult:
    passes: bool
    euler: int
    betti_total: int


@dataclass(frozen=True)
class GermLevelSet:
    scale: object
    base: object
    polytope: object


def symmetric_points_and_fs(P):
    """Nonzero lattice points of ``P`` whose negatives also lie in ``P``."""
    pts, S = lattice_slacks(P)
    b = _as_array(_scaled_rows(P.facets)[1])[None, :]
    # the slack of -p is b + Ap = 2b - S
    keep = pts.any(axis=1) & (2 * b - S >= 0).all(axis=1)
    S = S[keep]
    pts = tuple(tuple(int(c) for c in p) for p in pts[keep].tolist())
    hits = tuple(tuple(p for p, z in zip(pts, S[:, i] == 0) if z) for i in range(len(P.facets)))
    return SymmetricPoints(pts, hits, all(hits))


def _interior_point(P, x):
    x = as_point(x)
    if len(x) != P.dim:
        raise PointOutsideError(f"point has {len(x)} coordinates, polytope dimension is {P.dim}")
    if not P.contains_interior(x):
        raise PointOutsideError(f"{_fmt(x)} is not an interior point")
    return x


def _active(values):
    m = min(values)
    return m, frozenset(i for i, v in enumerate(values) if v == m)


def energy_profile(P, x):
    """Facet distances at ``x``; their minimum bounds the fibre energy from below."""
    x = _interior_point(P, x)
    vals = P.ell(x)
    m, act = _active(vals)
    c = classify(P)
    fs = symmetric_points_and_fs(P).fs
    return EnergyProfile(x, vals, m, act, len(act) == 1, c.is_monotone, fs)


def germ_evenness(P, x):
    """Whether the normals of the active facets at ``x`` come in opposite pairs."""
    x = _interior_point(P, x)
    _, act = _active(P.ell(x))
    by_normal = {P.facets[i].normal: i for i in act}
    pairs = []
    witness = None
    for i in sorted(act):
        j = by_normal.get(tuple(-a for a in P.facets[i].normal))
        if j is None:
            witness = i if witness is None else witness
        elif i < j:
            pairs.append((i, j))
    return GermEvenness(witness is None, act, tuple(pairs), witness)


def _sqdist(p, x):
    return sum((a - b) ** 2 for a, b in zip(p, x))


def probe_at(P, x):
    """Build the probe that certifies displaceability of the fibre over ``x``.

    ``x`` must lie in a chamber (a single closest facet ``i``).  The probe
    starts at ``w = x + ell_i(x) u`` on facet ``i`` and runs in direction
    ``-u``, where ``u`` is the symmetric lattice point on that facet
    closest to ``x`` (lexicographic among ties).
    """
    x = _interior_point(P, x)
    if require_monotone(P) != P:
        raise NotMonotoneError("probes need the interior lattice point at the origin")
    vals = P.ell(x)
    _, act = _active(vals)
    if len(act) != 1:
        raise NotInChamberError(f"{len(act)} facets attain the minimum at {_fmt(x)}")
    (i,) = act
    hits = symmetric_points_and_fs(P).hits[i]
    if not hits:
        raise NoSymmetricPointOnFacetError(f"facet {i} carries no symmetric lattice point")
    u = min(hits, key=lambda p: (_sqdist(p, x), p))
    f = P.facets[i]
    d = tuple(-c for c in u)
    # u lies on F_i and -u in P, so <v_i, u> = kappa_i and the pairing below is exact
    w = tuple(a + vals[i] * c for a, c in zip(x, u))
    if dot(f.normal, d) != -1:
        raise NoSymmetricPointOnFacetError(
            f"direction {_fmt(d)} is not integrally transverse to facet {i}")
    if f.ell(w) != 0 or not P.contains(w):
        raise NoSymmetricPointOnFacetError(f"probe base {_fmt(w)} is not on facet {i}")
    L = min(g.ell(w) / dot(g.normal, d) for g in P.facets if dot(g.normal, d) > 0)
    probe = Probe(i, u, w, d, L)
    disp = vals[i] < L / 2
    return ProbeReport(probe, disp, vals[i] if disp else None)


def central_fibre_realness(P):
    """Decide realness of the fibre over the unique interior lattice point."""
    c = classify(P)
    if not c.is_delzant:
        return RealnessVerdict(INCONCLUSIVE, {"reason": "not Delzant"})
    if not c.is_monotone:
        return RealnessVerdict(INCONCLUSIVE, {"reason": "not monotone"})
    Q = c.normalized
    if not symmetric_points_and_fs(Q).fs:
        return RealnessVerdict(INCONCLUSIVE, {"reason": "property FS fails"})
    germ = germ_evenness(Q, (0,) * Q.dim)
    if c.is_centrally_symmetric:
        if not germ.even:
            raise AssertionError("symmetric polytope with odd germ at the centre")
        return RealnessVerdict(REAL_BY_SYMMETRY, {"pairs": len(germ.pairing)})
    if germ.even:
        raise AssertionError("asymmetric polytope with even germ at the centre")
    i = germ.witness
    return RealnessVerdict(NOT_REAL_BY_ASYMMETRY, {"facet": i, "normal": Q.facets[i].normal})


def smith_filter(P):
    """Vertex-count stand-in for the Smith inequalities on a torus fixed set."""
    require_delzant(P)
    nv = len(P.vertices)
    return SmithResult(nv % 2 == 0 and 2 ** P.dim <= nv, nv, nv)


def level_set(P, lam):
    """``lam * P`` for a normalized monotone ``P`` and ``0 < lam <= 1``."""
    lam = as_fraction(lam)
    if not 0 < lam <= 1:
        raise ScaleOutOfRangeError(f"scale {lam} not in (0, 1]")
    if any(f.offset != 1 for f in P.facets):
        raise NotMonotoneError("level sets need a polytope normalized to offsets 1")
    return GermLevelSet(lam, P, P.scaled(lam))


def _fmt(x):
    return "(" + ",".join(str(c) for c in x) + ")"
