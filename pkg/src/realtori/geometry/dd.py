"""Exact double-description vertex enumeration.

Used instead of the n-subset scan when the number of facet subsets is
large.  The polytope ``{x : A x <= b}`` is homogenised to the cone
``{(x, t) : A x - b t <= 0, t >= 0}``; its extreme rays with ``t > 0`` are
the vertices and rays with ``t = 0`` are recession directions.
"""
from fractions import Fraction
from math import gcd

import numpy as np

from .. import kernels
from .exact import inverse, rank


def _normalize(r):
    g = 0
    for x in r:
        g = gcd(g, x)
    return tuple(x // g for x in r) if g > 1 else tuple(r)


def _dot(a, r):
    return sum(x * y for x, y in zip(a, r))


def _adjacent_py(Z, plus, minus, need):
    out = []
    for p in plus:
        for q in minus:
            c = Z[p] & Z[q]
            if c.bit_count() < need:
                continue
            if all(r in (p, q) or (Z[r] & c) != c for r in range(len(Z))):
                out.append((p, q))
    return out


def double_description(A, b):
    """Return ``(vertices, has_ray)`` for ``{x : A x <= b}`` with integer data.

    ``A`` must have rank ``n``.  Vertices are tuples of Fractions.
    """
    n = len(A[0])
    M = [tuple(int(a) for a in row) + (-int(c),) for row, c in zip(A, b)]
    M.append((0,) * n + (-1,))
    d = n + 1
    # initial basis: the t >= 0 row, then rows in order while independent
    basis = [len(M) - 1]
    for i in range(len(M) - 1):
        if len(basis) == d:
            break
        if rank([M[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
    if len(basis) < d:
        raise ValueError("constraint matrix is not of full rank")
    inv = inverse([M[j] for j in basis])
    rays = []
    Z = []
    for j in range(d):
        col = [-inv[r][j] for r in range(d)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        rays.append(_normalize([int(x * den) for x in col]))
        Z.append(sum(1 << basis[k] for k in range(d) if k != j))
    use_kernel = len(M) <= 62
    for i in range(len(M)):
        if i in basis:
            continue
        a = M[i]
        vals = [_dot(a, r) for r in rays]
        plus = [k for k, v in enumerate(vals) if v > 0]
        minus = [k for k, v in enumerate(vals) if v < 0]
        if plus and minus:
            if use_kernel:
                pairs = kernels.dd_adjacent(np.array(Z, dtype=np.int64), plus, minus, d - 2).tolist()
            else:
                pairs = _adjacent_py(Z, plus, minus, d - 2)
        else:
            pairs = []
        new_rays, new_Z = [], []
        for k, v in enumerate(vals):
            if v <= 0:
                new_rays.append(rays[k])
                new_Z.append(Z[k] | (1 << i) if v == 0 else Z[k])
        for p, q in pairs:
            vp, vq = vals[p], vals[q]
            r = [vp * x - vq * y for x, y in zip(rays[q], rays[p])]
            new_rays.append(_normalize(r))
            new_Z.append((Z[p] & Z[q]) | (1 << i))
        rays, Z = new_rays, new_Z
    verts = []
    has_ray = False
    for r in rays:
        if r[-1] > 0:
            verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
        else:
            has_ray = True
    return verts, has_ray

