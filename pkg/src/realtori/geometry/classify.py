"""Delzant, monotone and central-symmetry predicates."""
from dataclasses import dataclass, field

from ..errors import NotDelzantError, NotMonotoneError
from .exact import det
from .polytope import lattice_points


@dataclass(frozen=True)
class Classification:
    is_delzant: bool
    is_monotone: bool
    interior_lattice_points: tuple
    is_centrally_symmetric: bool
    normalized: object = None
    reasons: tuple = field(default=())


def delzant_failure(P):
    """Return a reason string if ``P`` is not Delzant, else ``None``."""
    n = P.dim
    for v, inc in zip(P.vertices, P.incidence):
        if len(inc) != n:
            return f"vertex {_fmt(v)} lies on {len(inc)} facets"
        d = det([P.facets[i].normal for i in sorted(inc)])
        if abs(d) != 1:
            return f"normals at vertex {_fmt(v)} have determinant {d}"
    return None


def is_delzant(P):
    return delzant_failure(P) is None


def is_centrally_symmetric(P):
    return P.facet_set() == (-P).facet_set()


def monotone_normalization(P):
    """Return ``(normalized, interior_points, reason)``.

    ``normalized`` is ``P`` translated so that its unique interior lattice
    point sits at the origin, or ``None`` when ``P`` is not monotone.
    """
    inner = tuple(lattice_points(P, interior=True))
    if len(inner) != 1:
        return None, inner, f"{len(inner)} interior lattice points (need exactly 1)"
    c = inner[0]
    Q = P.translated(tuple(-x for x in c))
    bad = [i for i, f in enumerate(Q.facets) if f.offset != 1]
    if bad:
        return None, inner, f"facet {bad[0]} at affine distance {Q.facets[bad[0]].offset} from the interior point"
    return Q, inner, None


def classify(P):
    reasons = []
    dz = delzant_failure(P)
    if dz:
        reasons.append("not Delzant: " + dz)
    Q, inner, why = monotone_normalization(P)
    if why:
        reasons.append("not monotone: " + why)
    sym = is_centrally_symmetric(P)
    if not sym:
        reasons.append("not centrally symmetric")
    return Classification(dz is None, Q is not None, inner, sym, Q, tuple(reasons))


def require_delzant(P):
    why = delzant_failure(P)
    if why:
        raise NotDelzantError(why)


def require_monotone(P):
    """Return the normalized form of ``P`` or raise ``NotMonotoneError``."""
    Q, _, why = monotone_normalization(P)
    if why:
        raise NotMonotoneError(why)
    return Q


def _fmt(v):
    return "(" + ",".join(str(x) for x in v) + ")"
