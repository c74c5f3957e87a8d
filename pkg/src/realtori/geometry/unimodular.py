"""Affine unimodular maps, vertex normal forms and a bounded equivalence search."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from ..errors import DimensionMismatchError, NotMonotoneError
from .classify import require_delzant, monotone_normalization
from .exact import det, dot, inverse, matmul, transpose
from .polytope import Facet, Polytope, edges, facet_lattice_counts, valency_vector, volume


@dataclass(frozen=True)
class AffineUnimodularMap:
    """``x -> matrix @ x + translation`` with an integer matrix of determinant +-1."""

    matrix: tuple
    translation: tuple

    def __post_init__(self):
        M = tuple(tuple(int(a) for a in r) for r in self.matrix)
        t = tuple(int(a) for a in self.translation)
        if any(len(r) != len(M) for r in M) or len(t) != len(M):
            raise ValueError("matrix must be square and match the translation")
        if abs(det(M)) != 1:
            raise ValueError("matrix is not unimodular")
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n)

    @property
    def dim(self):
        return len(self.translation)

    def __call__(self, x):
        return tuple(dot(r, x) + t for r, t in zip(self.matrix, self.translation))

    def inverse(self):
        Ainv = [[int(a) for a in r] for r in inverse(self.matrix)]
        t = [-dot(r, self.translation) for r in Ainv]
        return AffineUnimodularMap(Ainv, t)

    def compose(self, other):
        """``self after other``."""
        A = matmul(self.matrix, other.matrix)
        return AffineUnimodularMap(A, self(other.translation))

    def apply(self, P):
        """Image polytope; facet order and names are kept."""
        if P.dim != self.dim:
            raise DimensionMismatchError(f"map of dimension {self.dim} applied to a {P.dim}-polytope")
        AinvT = transpose([[int(a) for a in r] for r in inverse(self.matrix)])
        facets = []
        for f in P.facets:
            normal = tuple(int(dot(r, f.normal)) for r in AinvT)
            facets.append(Facet(normal, f.offset + dot(normal, self.translation)))
        verts = [self(v) for v in P.vertices]
        return Polytope(P.dim, facets, verts, P.incidence, P.name)


def _vertex_index(P, vertex):
    if isinstance(vertex, int):
        if not 0 <= vertex < len(P.vertices):
            raise IndexError(f"vertex index {vertex} out of range")
        return vertex
    pt = tuple(Fraction(x) for x in vertex)
    try:
        return P.vertices.index(pt)
    except ValueError:
        raise ValueError(f"{vertex} is not a vertex") from None


def normal_form_at_vertex(P, vertex, require_monotone=True):
    """Move ``vertex`` to ``(-1,...,-1)`` with its facets becoming ``1 + x_j``.

    ``vertex`` is an index into ``P.vertices`` or the point itself.  The
    returned polytope lists the facets through the vertex first (in their
    original relative order), so facet ``j`` of the image is ``x_j >= -1``.
    With ``require_monotone=False`` any Delzant polytope is accepted; its
    remaining offsets then need not equal 1.
    """
    require_delzant(P)
    if require_monotone:
        _, _, why = monotone_normalization(P)
        if why:
            raise NotMonotoneError(why)
    k = _vertex_index(P, vertex)
    v = P.vertices[k]
    at = sorted(P.incidence[k])
    N = [P.facets[i].normal for i in at]
    A = [[-a for a in r] for r in N]
    Av = [dot(r, v) for r in A]
    t = tuple(-1 - x for x in Av)
    if any(Fraction(x).denominator != 1 for x in t):
        raise ValueError("vertex is not a lattice point")
    phi = AffineUnimodularMap(A, tuple(int(x) for x in t))
    image = phi.apply(P)
    rest = [i for i in range(len(P.facets)) if i not in at]
    order = at + rest
    pos = {old: new for new, old in enumerate(order)}
    facets = [image.facets[i] for i in order]
    inc = [{pos[i] for i in s} for s in image.incidence]
    return Polytope(P.dim, facets, image.vertices, inc, P.name), phi


@dataclass(frozen=True)
class EquivalenceResult:
    map: object
    certificates: tuple = field(default=())
    invariants: tuple = field(default=())

    @property
    def found(self):
        return self.map is not None


def _invariants(P):
    counts = facet_lattice_counts(P)
    return {
        "vertex count": len(P.vertices),
        "valency vector": valency_vector(P),
        "volume": volume(P),
        "max facet lattice count": max(counts),
        "facet lattice counts": tuple(sorted(counts, reverse=True)),
    }


def _fmt_inv(v):
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


def unimodular_equiv_search(P, Q, bound=3):
    """Look for an affine unimodular map sending ``P`` onto ``Q``.

    Failure to find a map is not a proof of inequivalence; when cheap
    invariants already differ they are returned as certificates such as
    ``"max facet lattice count 3 ≠ 5"``.
    """
    if P.dim != Q.dim:
        raise DimensionMismatchError(f"dimensions {P.dim} and {Q.dim} differ")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n = P.dim
    if P == Q:
        return EquivalenceResult(AffineUnimodularMap.identity(n))
    ip, iq = _invariants(P), _invariants(Q)
    certs = tuple(f"{k} {_fmt_inv(ip[k])} ≠ {_fmt_inv(iq[k])}" for k in ip if ip[k] != iq[k])
    inv = tuple((k, ip[k], iq[k]) for k in ip)
    if certs:
        return EquivalenceResult(None, certs, inv)

    def adjacency(R):
        adj = [[] for _ in R.vertices]
        for i, j in edges(R):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    adjP, adjQ = adjacency(P), adjacency(Q)
    p0 = min(range(len(P.vertices)), key=lambda i: (len(adjP[i]), i))
    base = P.vertices[p0]
    frame = None
    for combo in permutations(adjP[p0], n):
        D = [[P.vertices[j][r] - base[r] for j in combo] for r in range(n)]
        if det(D) != 0:
            frame = D
            break
    Dinv = inverse(frame)
    target = set(Q.vertices)
    for q0 in range(len(Q.vertices)):
        if len(adjQ[q0]) != len(adjP[p0]):
            continue
        qb = Q.vertices[q0]
        for combo in permutations(adjQ[q0], n):
            E = [[Q.vertices[j][r] - qb[r] for j in combo] for r in range(n)]
            A = matmul(E, Dinv)
            if any(a.denominator != 1 or abs(a) > bound for r in A for a in r):
                continue
            if abs(det(A)) != 1:
                continue
            t = [qb[r] - dot(A[r], base) for r in range(n)]
            if any(Fraction(x).denominator != 1 for x in t):
                continue
            m = AffineUnimodularMap(A, t)
            if {m(v) for v in P.vertices} == target:
                return EquivalenceResult(m, (), inv)
    return EquivalenceResult(None, (), inv)
