"""H-represented rational polytopes with exact vertex data.

A :class:`Polytope` is always built through :func:`from_halfspaces` (or
an operation derived from it), which normalises facets to primitive
normals, drops redundant inequalities and caches the vertices together
with their incident facets.  Facet ``i`` reads ``<v_i, x> <= kappa_i`` and
its affine distance functional is ``ell_i(x) = kappa_i - <x, v_i>``.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor, lcm

import numpy as np

from .. import kernels
from ..errors import EmptyPolytopeError, NotFullDimensionalError, UnboundedError
from .dd import double_description
from .exact import affine_rank, as_fraction, dot, inverse, nullspace, primitive, rank


SCAN_LIMIT = 200_000


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: Fraction

    def ell(self, x):
        return self.offset - dot(x, self.normal)


class Polytope:
    """Bounded, full-dimensional polytope ``{x : <v_i, x> <= kappa_i}``.

    Equality and hashing are by facet *set*: facet order is kept only so
    that serialisation reproduces the construction order.
    """

    __slots__ = ("dim", "facets", "vertices", "incidence", "name")

    def __init__(self, dim, facets, vertices, incidence, name=None):
        self.dim = dim
        self.facets = tuple(facets)
        order = sorted(range(len(vertices)), key=lambda i: vertices[i])
        self.vertices = tuple(tuple(vertices[i]) for i in order)
        self.incidence = tuple(frozenset(incidence[i]) for i in order)
        self.name = name

    # -- evaluation ---------------------------------------------------------
    def ell(self, x):
        """Affine distances of ``x`` to every facet hyperplane."""
        x = tuple(as_fraction(c) for c in x)
        return tuple(f.ell(x) for f in self.facets)

    def contains(self, x):
        return all(v >= 0 for v in self.ell(x))

    def contains_interior(self, x):
        return all(v > 0 for v in self.ell(x))

    @property
    def normals(self):
        return tuple(f.normal for f in self.facets)

    @property
    def offsets(self):
        return tuple(f.offset for f in self.facets)

    def facet_vertices(self, i):
        return tuple(v for v, inc in zip(self.vertices, self.incidence) if i in inc)

    # -- derived polytopes ---------------------------------------------------
    def __neg__(self):
        facets = [Facet(tuple(-a for a in f.normal), f.offset) for f in self.facets]
        verts = [tuple(-c for c in v) for v in self.vertices]
        return Polytope(self.dim, facets, verts, self.incidence, _neg_name(self.name))

    def scaled(self, lam):
        lam = as_fraction(lam)
        if lam <= 0:
            raise ValueError("scale factor must be positive")
        facets = [Facet(f.normal, f.offset * lam) for f in self.facets]
        verts = [tuple(c * lam for c in v) for v in self.vertices]
        return Polytope(self.dim, facets, verts, self.incidence, self.name)

    def translated(self, t):
        t = tuple(as_fraction(c) for c in t)
        facets = [Facet(f.normal, f.offset + dot(f.normal, t)) for f in self.facets]
        verts = [tuple(a + b for a, b in zip(v, t)) for v in self.vertices]
        return Polytope(self.dim, facets, verts, self.incidence, self.name)

    def facet_set(self):
        return frozenset((f.normal, f.offset) for f in self.facets)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.facet_set() == other.facet_set()

    def __hash__(self):
        return hash((self.dim, self.facet_set()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Polytope{label} dim={self.dim} facets={len(self.facets)} vertices={len(self.vertices)}>"


def _neg_name(name):
    if not name:
        return name
    return name[1:] if name.startswith("-") else "-" + name


def _scaled_rows(facets):
    """Integer rows ``q v`` and right-hand sides ``p`` for ``kappa = p/q``."""
    A = [[f.offset.denominator * a for a in f.normal] for f in facets]
    b = [f.offset.numerator for f in facets]
    return A, b


def _as_array(rows):
    try:
        return np.array(rows, dtype=np.int64)
    except OverflowError:
        return np.array(rows, dtype=object)


def from_halfspaces(dim, raw, name=None, method="auto"):
    """Build a validated polytope from ``(normal, offset)`` pairs.

    Each pair stands for ``<normal, x> <= offset``.  Normals are reduced to
    primitive form (the offset is divided by the same gcd), repeated
    normals keep the tightest offset and redundant inequalities are
    removed after the vertices are known.

    Vertices come from a scan over all ``dim``-subsets of facets when there
    are at most ``SCAN_LIMIT`` of them, else from double description;
    ``method`` ("scan" or "dd") forces one of the two.

    Raises
    ------
    UnboundedError, EmptyPolytopeError, NotFullDimensionalError
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    best = {}
    order = []
    for normal, offset in raw:
        normal = tuple(int(a) for a in normal)
        if len(normal) != dim:
            raise ValueError(f"normal {normal} has length {len(normal)}, expected {dim}")
        if not any(normal):
            raise ValueError("facet normal must be nonzero")
        normal, g = primitive(normal)
        offset = as_fraction(offset) / g
        if normal not in best:
            order.append(normal)
            best[normal] = offset
        else:
            best[normal] = min(best[normal], offset)
    facets = [Facet(v, best[v]) for v in order]

    if rank([f.normal for f in facets]) < dim:
        raise UnboundedError("facet normals do not span the ambient space")
    A, b = _scaled_rows(facets)
    if method == "auto":
        method = "scan" if comb(len(facets), dim) <= SCAN_LIMIT else "dd"
    if method == "scan":
        nums, dens = kernels.vertex_candidates(_as_array(A), _as_array(b))
        verts = list(dict.fromkeys(
            tuple(Fraction(int(x), int(den)) for x in num) for num, den in zip(nums.tolist(), dens.tolist())))
        ray = bool(verts) and kernels.has_recession_ray(_as_array([f.normal for f in facets]))
    elif method == "dd":
        verts, ray = double_description(A, b)
    else:
        raise ValueError(f"unknown vertex method {method!r}")
    if not verts:
        raise EmptyPolytopeError("inequalities have no common solution")
    if ray:
        raise UnboundedError("polyhedron contains a ray")
    if affine_rank(verts) < dim:
        raise NotFullDimensionalError("polytope has empty interior")

    inc = []
    for v in verts:
        den = lcm(*(c.denominator for c in v))
        num = [int(c * den) for c in v]
        inc.append([i for i, (row, rhs) in enumerate(zip(A, b)) if sum(x * y for x, y in zip(row, num)) == rhs * den])
    keep = []
    for i in range(len(facets)):
        on = [v for v, s in zip(verts, inc) if i in s]
        if len(on) >= dim and affine_rank(on) == dim - 1:
            keep.append(i)
    remap = {old: new for new, old in enumerate(keep)}
    facets = [facets[i] for i in keep]
    inc = [[remap[i] for i in s if i in remap] for s in inc]
    return Polytope(dim, facets, verts, inc, name)


def vertices(P):
    """Vertices in lexicographic order, each with its set of incident facets."""
    return list(zip(P.vertices, P.incidence))


def lattice_slacks(P):
    """Integer points of ``P`` and their scaled slacks ``q_i * ell_i(p)``.

    Row ``i`` of the slack matrix is positive exactly where ``ell_i`` is,
    so facet membership and interiority can be read off without Fractions.
    """
    lo = [floor(min(v[j] for v in P.vertices)) for j in range(P.dim)]
    hi = [ceil(max(v[j] for v in P.vertices)) for j in range(P.dim)]
    A, b = _scaled_rows(P.facets)
    A, b = _as_array(A), _as_array(b)
    pts = kernels.box_points(A, b, lo, hi)
    if pts.dtype != A.dtype:
        pts = pts.astype(A.dtype)
    return pts, b[None, :] - pts @ A.T


def lattice_points(P, facet=None, interior=False):
    """Integer points of ``P`` in lexicographic order.

    ``facet=i`` keeps the points with ``ell_i = 0``; ``interior=True`` keeps
    points where every ``ell_i`` is strictly positive.
    """
    pts, S = lattice_slacks(P)
    keep = np.ones(len(pts), dtype=bool)
    if facet is not None:
        keep &= S[:, facet] == 0
    if interior:
        keep &= (S > 0).all(axis=1)
    return [tuple(int(c) for c in p) for p in pts[keep].tolist()]


def facet_lattice_counts(P):
    _, S = lattice_slacks(P)
    return tuple(int(c) for c in (S == 0).sum(axis=0))


def product(P, Q):
    """Cartesian product; facets are zero-padded, vertices paired."""
    n, m = P.dim, Q.dim
    facets = [Facet(f.normal + (0,) * m, f.offset) for f in P.facets]
    facets += [Facet((0,) * n + f.normal, f.offset) for f in Q.facets]
    k = len(P.facets)
    verts, inc = [], []
    for v, s in zip(P.vertices, P.incidence):
        for w, t in zip(Q.vertices, Q.incidence):
            verts.append(v + w)
            inc.append(set(s) | {k + j for j in t})
    name = f"{P.name}*{Q.name}" if P.name and Q.name else None
    return Polytope(n + m, facets, verts, inc, name)


def incidence_matrix(P):
    M = np.zeros((len(P.vertices), len(P.facets)), dtype=np.bool_)
    for i, s in enumerate(P.incidence):
        for j in s:
            M[i, j] = True
    return M


def edges(P):
    """Vertex index pairs spanning 1-dimensional faces.

    Two vertices are adjacent iff the normals of their common facets have
    rank ``dim - 1``; this is valid for non-simple polytopes too.
    """
    if P.dim == 1:
        return [(0, 1)]
    pairs = kernels.edge_pairs(incidence_matrix(P), np.array(P.normals, dtype=np.int64))
    return [tuple(int(x) for x in p) for p in pairs.tolist()]


def valency_vector(P):
    """Vertex degrees in the edge graph, sorted descending."""
    deg = [0] * len(P.vertices)
    for i, j in edges(P):
        deg[i] += 1
        deg[j] += 1
    return tuple(sorted(deg, reverse=True))


def volume(P):
    """Exact Euclidean volume.

    Recursive pyramid decomposition over the face lattice: the volume of a
    face projected onto a coordinate subspace is the sum over its ridges of
    (height * ridge volume) / dim, with the ridge volumes memoised so that
    shared faces are computed once.
    """
    n = P.dim
    nverts = len(P.vertices)
    nfac = len(P.facets)
    vinc = [sum(1 << i for i in s) for s in P.incidence]
    fverts = [sum(1 << k for k in range(nverts) if i in P.incidence[k]) for i in range(nfac)]
    all_facets = (1 << nfac) - 1
    rank_cache = {}
    memo = {}

    def containing(mask):
        f = all_facets
        while mask:
            low = mask & -mask
            f &= vinc[low.bit_length() - 1]
            mask ^= low
        return f

    def normals_of(fmask):
        return [P.facets[i].normal for i in range(nfac) if fmask >> i & 1]

    def face_dim(mask):
        fm = containing(mask)
        if fm not in rank_cache:
            rank_cache[fm] = n - rank(normals_of(fm)) if fm else n
        return rank_cache[fm]

    def vol(mask, S):
        d = len(S)
        if d == 0:
            return Fraction(1)
        key = (mask, S)
        if key in memo:
            return memo[key]
        fm = containing(mask)
        B = nullspace(normals_of(fm), n) if fm else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        # columns of B span the face directions; chart M maps projected coords back
        Bmat = [[B[c][r] for c in range(d)] for r in range(n)]
        Binv = inverse([Bmat[s] for s in S])
        M = [[sum(Bmat[r][k] * Binv[k][j] for k in range(d)) for j in range(d)] for r in range(n)]
        c_idx = (mask & -mask).bit_length() - 1
        apex = P.vertices[c_idx]
        seen = set()
        total = Fraction(0)
        for i in range(nfac):
            if fm >> i & 1:
                continue
            ridge = mask & fverts[i]
            if not ridge or ridge in seen or ridge >> c_idx & 1:
                continue
            if face_dim(ridge) != d - 1:
                continue
            seen.add(ridge)
            v = P.facets[i].normal
            a = [sum(M[r][j] * v[r] for r in range(n)) for j in range(d)]
            j = max(k for k in range(d) if a[k] != 0)
            h = P.facets[i].ell(apex)
            total += h / abs(a[j]) * vol(ridge, S[:j] + S[j + 1:])
        result = total / d
        memo[key] = result
        return result

    return vol((1 << nverts) - 1, tuple(range(n)))
