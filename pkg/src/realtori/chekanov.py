"""The Chekanov transform and the valency calculus for product tori.

The piecewise-linear map ``phi`` sends deformation parameters ``(t, s)``
to moment coordinates; its inverse is ``t_j = x_j - x_n``,
``s = min(x)``.  A Chekanov polytope is the image of a normal-formed
moment polytope under ``phi^{-1}`` applied block by block.
"""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product as cartesian

import numpy as np

from . import kernels
from .errors import (
    DimensionMismatchError,
    EmptyPolytopeError,
    NonConvexImageError,
    NotAProductError,
    NotFullDimensionalError,
    NotMonotoneError,
    UnboundedError,
)
from .geometry.classify import is_centrally_symmetric, monotone_normalization
from .geometry.exact import as_point, clear_denominators, dot, nullspace
from .geometry.polytope import (
    edges,
    facet_lattice_counts,
    from_halfspaces,
    product,
    valency_vector,
    volume,
)
from .geometry.unimodular import AffineUnimodularMap, normal_form_at_vertex
from .toric import INCONCLUSIVE, NOT_REAL_BY_ASYMMETRY, RealnessVerdict


# -- the transform --------------------------------------------------------
@dataclass(frozen=True)
class DeformationPoint:
    t: tuple
    s: Fraction

    @property
    def dim(self):
        return len(self.t) + 1


def phi(p):
    """Moment coordinates of the deformation point ``p``."""
    t = as_point(p.t)
    s = Fraction(p.s)
    if all(x >= 0 for x in t):
        return tuple(s + x for x in t) + (s,)
    m = min(t)
    return tuple(s + x - m for x in t) + (s - m,)


def phi_inverse(x):
    x = as_point(x)
    last = x[-1]
    return DeformationPoint(tuple(c - last for c in x[:-1]), min(x))


# -- signatures -----------------------------------------------------------
@dataclass(frozen=True)
class ChekanovSignature:
    """Block sizes ``k`` (each at least 2, descending) and ``m`` Clifford factors."""

    k: tuple
    m: int = 0

    def __post_init__(self):
        k = tuple(sorted((int(a) for a in self.k), reverse=True))
        if not k:
            raise ValueError("a signature needs at least one Chekanov block")
        if any(a < 2 for a in k):
            raise ValueError("Chekanov blocks have size at least 2")
        if self.m < 0:
            raise ValueError("m must be non-negative")
        object.__setattr__(self, "k", k)

    @property
    def dim(self):
        return sum(self.k) + self.m

    @classmethod
    def parse(cls, text):
        """Read ``"k1,k2;m"`` (``";m"`` may be omitted)."""
        blocks, _, m = text.partition(";")
        try:
            k = tuple(int(a) for a in blocks.split(",") if a.strip())
            return cls(k, int(m) if m.strip() else 0)
        except ValueError as e:
            raise ValueError(f"bad signature {text!r}: {e}") from None

    def blocks(self):
        """Coordinate ranges ``(start, size)`` of the Chekanov blocks."""
        out, o = [], 0
        for a in self.k:
            out.append((o, a))
            o += a
        return out

    def __str__(self):
        return ",".join(map(str, self.k)) + f";{self.m}"


def _check_sig(P, sig):
    if isinstance(sig, str):
        sig = ChekanovSignature.parse(sig)
    if sig.dim != P.dim:
        raise DimensionMismatchError(f"signature {sig} has dimension {sig.dim}, polytope has {P.dim}")
    return sig


def _branch_matrix(n, sig, argmins):
    """Linear part of ``phi^{-1}`` on the region where block ``b`` is minimal at ``argmins[b]``."""
    A = [[0] * n for _ in range(n)]
    for (o, k), a in zip(sig.blocks(), argmins):
        last = o + k - 1
        for j in range(k - 1):
            A[o + j][o + j] += 1
            A[o + j][last] -= 1
        A[last][a] = 1
    for r in range(sig.dim - sig.m, n):
        A[r][r] = 1
    return A


@dataclass(frozen=True)
class Piece:
    argmins: tuple
    polytope: object
    volume: Fraction


@dataclass(frozen=True)
class ChekanovPolytopeResult:
    polytope: object
    pieces: tuple
    convexity_certified: bool
    vertex: tuple
    signature: ChekanovSignature
    normal_form: object
    apex: tuple
    apex_valency: int


def chekanov_polytope(P, vertex, sig, name=None):
    """Image of ``P`` (normal-formed at ``vertex``) under the block map ``phi^{-1}``.

    Raises ``NonConvexImageError`` unless the piece volumes add up to the
    volume of their hull.
    """
    sig = _check_sig(P, sig)
    D, nf = normal_form_at_vertex(P, vertex)
    n = P.dim
    raw_facets = [(f.normal, f.offset) for f in D.facets]
    pieces = []
    for argmins in cartesian(*[range(o, o + k) for o, k in sig.blocks()]):
        cuts = []
        for (o, k), a in zip(sig.blocks(), argmins):
            for j in range(o, o + k):
                if j != a:
                    cuts.append((tuple((r == a) - (r == j) for r in range(n)), 0))
        try:
            region = from_halfspaces(n, raw_facets + cuts)
        except (EmptyPolytopeError, NotFullDimensionalError):
            continue
        img = AffineUnimodularMap(_branch_matrix(n, sig, argmins), (0,) * n).apply(region)
        pieces.append(Piece(argmins, img, volume(img)))

    allv = {v for pc in pieces for v in pc.polytope.vertices}
    cand = {}
    for pc in pieces:
        for f in pc.polytope.facets:
            if all(f.ell(v) >= 0 for v in allv):
                cand[f.normal] = min(f.offset, cand.get(f.normal, f.offset))
    try:
        hull = from_halfspaces(n, sorted(cand.items()), name or _cp_name(P, sig))
    except UnboundedError:
        raise NonConvexImageError("piece facets do not bound the image") from None
    total = sum(pc.volume for pc in pieces)
    if total != volume(hull):
        raise NonConvexImageError(f"pieces have volume {total}, hull has {volume(hull)}")

    apex = []
    for o, k in sig.blocks():
        apex += [Fraction(0)] * (k - 1) + [Fraction(1)]
    apex = tuple(apex + [Fraction(0)] * sig.m)
    val = None
    if apex in hull.vertices:
        idx = hull.vertices.index(apex)
        val = sum(1 for e in edges(hull) if idx in e)
    v = P.vertices[vertex] if isinstance(vertex, int) else as_point(vertex)
    return ChekanovPolytopeResult(hull, tuple(pieces), True, v, sig, nf, apex, val)


def _cp_name(P, sig):
    return f"CP[{P.name or 'P'};{sig}]"


@lru_cache(maxsize=None)
def cube_chekanov(k):
    """``CP_k``: the Chekanov polytope of ``[-1,1]^k`` at ``(-1,...,-1)``."""
    from .catalog import builtin

    return chekanov_polytope(builtin("cube", k).polytope, 0, ChekanovSignature((k,), 0), f"CP_{k}").polytope


# -- embedding, exoticness, realness ---------------------------------------
def embeds_signature(P, vertex, sig):
    """Whether the block-diagonal cube of the signature fits inside the normal form."""
    sig = _check_sig(P, sig)
    D, _ = normal_form_at_vertex(P, vertex, require_monotone=False)
    for rs in cartesian((-1, 0), repeat=len(sig.k)):
        pt = []
        for r, (o, k) in zip(rs, sig.blocks()):
            pt += [r] * k
        pt += [0] * sig.m
        if not D.contains(pt):
            return False
    return True


@dataclass(frozen=True)
class Exoticness:
    exotic: bool
    vertex: tuple
    base_max: int
    chekanov_max: int
    note: str = ""


def prop_vertex(P):
    """Lexicographically smallest vertex on a facet with the most lattice points."""
    counts = facet_lattice_counts(P)
    top = max(counts)
    cands = [v for i, c in enumerate(counts) if c == top for v in P.facet_vertices(i)]
    return min(cands)


def exoticness(P, vertex=None):
    """Compare the max facet lattice count before and after the transform."""
    Q, inner, why = monotone_normalization(P)
    if why:
        raise NotMonotoneError(why)
    base = max(facet_lattice_counts(Q))
    if vertex is None:
        v = prop_vertex(Q)
    else:
        v = P.vertices[vertex] if isinstance(vertex, int) else as_point(vertex)
        v = tuple(a - b for a, b in zip(v, inner[0]))
    cp = chekanov_polytope(Q, v, ChekanovSignature((Q.dim,), 0)).polytope
    top = max(facet_lattice_counts(cp))
    note = ""
    if top <= base and vertex is not None and v != prop_vertex(Q):
        note = "invariant does not separate at this vertex; use a vertex on a facet with the most lattice points"
    return Exoticness(top > base, v, base, top, note)


def _hull_from_points(points):
    """H-representation of the convex hull of a finite full-dimensional point set."""
    pts = sorted(set(points))
    d = len(pts[0])
    if d == 1:
        return from_halfspaces(1, [((1,), max(p[0] for p in pts)), ((-1,), -min(p[0] for p in pts))])
    faces = {}
    for combo in combinations(range(len(pts)), d):
        base = pts[combo[0]]
        diffs = [[a - b for a, b in zip(pts[j], base)] for j in combo[1:]]
        ns = nullspace(diffs, d)
        if len(ns) != 1:
            continue
        v = clear_denominators(ns[0])
        for sgn in (1, -1):
            w = tuple(sgn * a for a in v)
            off = dot(w, base)
            if all(dot(w, p) <= off for p in pts):
                faces[w] = off
    return from_halfspaces(d, sorted(faces.items()))


def chekanov_realness(P, vertex, sig):
    """Symmetry test on the Chekanov polytope, projected to the first block for products."""
    sig = _check_sig(P, sig)
    if not embeds_signature(P, vertex, sig):
        return RealnessVerdict(INCONCLUSIVE, {"reason": "signature does not embed at this vertex"})
    res = chekanov_polytope(P, vertex, sig)
    C = res.polytope
    if len(sig.k) > 1 or sig.m:
        k = sig.k[0]
        C = _hull_from_points([v[:k] for v in C.vertices])
    if is_centrally_symmetric(C):
        return RealnessVerdict(INCONCLUSIVE, {
            "reason": "Chekanov polytope is centrally symmetric, contradicting the non-realness theorem",
            "contradiction": True,
        })
    fs = C.facet_set()
    i = next(i for i, f in enumerate(C.facets) if (tuple(-a for a in f.normal), f.offset) not in fs)
    return RealnessVerdict(NOT_REAL_BY_ASYMMETRY, {
        "facet": i,
        "normal": C.facets[i].normal,
        "projected": len(sig.k) > 1 or sig.m > 0,
    })


# -- valency calculus -----------------------------------------------------
def cp_valency_closed_form(n):
    if n < 2:
        raise ValueError("Chekanov polytopes need n >= 2")
    if n == 2:
        return (2, 2, 2)
    return (2 ** n - 2,) + (n + 1,) * (2 ** n - 2 * n - 2) + (n,) * (2 * n)


def oplus(a, b):
    """All pairwise sums, descending."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return tuple(int(x) for x in kernels.outer_sum_desc(a, b))


def ominus(c, b):
    """Recover ``a`` from ``c = a (+) b`` by repeatedly peeling the largest entry."""
    b = sorted(b, reverse=True)
    if not b or len(c) % len(b):
        raise NotAProductError(f"length {len(c)} is not a multiple of {len(b)}")
    left = Counter(c)
    out = []
    while left:
        a1 = max(left) - b[0]
        for bj in b:
            if left[a1 + bj] == 0:
                raise NotAProductError(f"cannot remove {a1 + bj} while peeling {a1}")
            left[a1 + bj] -= 1
            if not left[a1 + bj]:
                del left[a1 + bj]
        out.append(a1)
    return tuple(sorted(out, reverse=True))


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for a in range(min(n, largest), 0, -1):
        for rest in _partitions(n - a, a):
            yield (a,) + rest


def signatures(n):
    """All signatures of dimension ``n``, in reverse lexicographic order of partitions."""
    out = []
    for lam in _partitions(n):
        k = tuple(a for a in lam if a >= 2)
        if k:
            out.append(ChekanovSignature(k, lam.count(1)))
    return out


def closed_form_valency(sig):
    v = (0,)
    for k in sig.k:
        v = oplus(v, cp_valency_closed_form(k))
    for _ in range(sig.m):
        v = oplus(v, (1, 1))
    return v


def product_polytope(sig):
    """``CP_{k1} x ... x CP_{ks} x [-1,1]^m``."""
    from .catalog import builtin

    P = cube_chekanov(sig.k[0])
    for k in sig.k[1:]:
        P = product(P, cube_chekanov(k))
    if sig.m:
        P = product(P, builtin("cube", sig.m).polytope)
    return P


def _factor_23(x):
    m = p = 0
    while x % 2 == 0:
        x //= 2
        m += 1
    while x % 3 == 0:
        x //= 3
        p += 1
    return m, p, x


@dataclass(frozen=True)
class Recovery:
    signature: object
    m: int
    p: int
    steps: tuple


@lru_cache(maxsize=None)
def _exact_gap(k):
    v = cp_valency_closed_form(k)
    return v[0] - v[1]


def closed_form_gap(k):
    """The gap ``M1 - M2`` as predicted by ``2^k - k - 3``."""
    return 2 ** k - k - 3


def recover_signature(V, n):
    """Read a signature back off a product valency vector.

    The multiplicity of the top entry is ``2^m 3^p`` where ``p`` counts
    blocks of size 2; those factors are peeled first.  Larger blocks are
    then found one at a time from the gap between the two largest entries,
    matched against exact gaps of ``V(CP_k)``.
    """
    V = tuple(V)
    mult = V.count(V[0])
    m, p, rest = _factor_23(mult)
    if rest != 1:
        return Recovery(None, m, p, (f"top multiplicity {mult} is not of the form 2^m 3^p",))
    steps = [f"top multiplicity {mult} = 2^{m} * 3^{p}"]
    try:
        for _ in range(m):
            V = ominus(V, (1, 1))
        for _ in range(p):
            V = ominus(V, (2, 2, 2))
        ks = [2] * p
        while len(V) > 1:
            gap = V[0] - V[1]
            k = next((k for k in range(3, n + 1) if _exact_gap(k) == gap), None)
            if k is None:
                steps.append(f"gap {gap} matches no block")
                return Recovery(None, m, p, tuple(steps))
            steps.append(f"gap {gap} -> block {k} (closed form predicts {closed_form_gap(k)})")
            V = ominus(V, cp_valency_closed_form(k))
            ks.append(k)
    except NotAProductError as e:
        steps.append(str(e))
        return Recovery(None, m, p, tuple(steps))
    if V != (0,) or not ks:
        return Recovery(None, m, p, tuple(steps))
    return Recovery(ChekanovSignature(tuple(ks), m), m, p, tuple(steps))


@dataclass(frozen=True)
class SignatureRow:
    signature: ChekanovSignature
    valency: tuple
    closed_form: tuple
    recovery: Recovery

    @property
    def consistent(self):
        return self.valency == self.closed_form

    @property
    def recovered(self):
        return self.recovery.signature == self.signature


@dataclass(frozen=True)
class SignatureTable:
    n: int
    rows: tuple
    pairwise_distinct: bool = field(default=False)


def signature_table(n):
    """Valency vectors of every product torus in dimension ``n``."""
    if n < 2:
        raise ValueError("need n >= 2")
    rows = []
    for sig in signatures(n):
        geo = valency_vector(product_polytope(sig))
        cf = closed_form_valency(sig)
        if geo != cf:
            raise AssertionError(f"valency of {sig}: enumerated {geo} differs from closed form {cf}")
        rows.append(SignatureRow(sig, geo, cf, recover_signature(geo, n)))
    distinct = len({r.valency for r in rows}) == len(rows)
    return SignatureTable(n, tuple(rows), distinct)
