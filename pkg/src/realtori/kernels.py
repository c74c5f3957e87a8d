"""Exact integer kernels with a numba path and a pure-numpy fallback.

Every kernel works on integer matrices only, so results are exact as long
as no intermediate value leaves int64.  Callers pass data through
:func:`fits_int64` first; inputs that could overflow are routed to the
numpy path with ``dtype=object`` (Python integers), which is slow but exact.

The numba path is used when numba imports and the environment variable
``REALTORI_NO_NUMBA`` is unset or ``0``.  :func:`set_backend` switches at
runtime (tests and the benchmark use it).
"""
import math
import os
from itertools import combinations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_INT64_SAFE = 2**62

_env_off = os.environ.get("REALTORI_NO_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = numba is not None and not _env_off


def set_backend(name):
    """Select ``"numba"`` or ``"numpy"`` for subsequent kernel calls."""
    global USE_NUMBA
    if name == "numba":
        if numba is None:
            raise RuntimeError("numba is not importable")
        USE_NUMBA = True
    elif name == "numpy":
        USE_NUMBA = False
    else:
        raise ValueError(f"unknown backend {name!r}")


def backend():
    return "numba" if USE_NUMBA else "numpy"


def _njit(fn):
    if numba is None:  # pragma: no cover
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def hadamard_bound(rows, k):
    """Upper bound for any k x k minor of the integer matrix ``rows``."""
    norms = sorted((math.isqrt(sum(int(a) * int(a) for a in r)) + 1 for r in rows), reverse=True)
    bound = 1
    for x in norms[:k]:
        bound *= x
    return bound


def fits_int64(rows, k):
    # Bareiss forms products of two minors before dividing
    bound = hadamard_bound(rows, k)
    return bound * bound * (k + 1) < _INT64_SAFE


# ---------------------------------------------------------------------------
# determinants


@_njit
def _nb_det(M):
    k = M.shape[0]
    if k == 0:
        return 1
    A = M.copy()
    sign = 1
    prev = 1
    for c in range(k):
        piv = -1
        for r in range(c, k):
            if A[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(k):
                tmp = A[c, j]
                A[c, j] = A[piv, j]
                A[piv, j] = tmp
            sign = -sign
        p = A[c, c]
        for r in range(c + 1, k):
            for j in range(c + 1, k):
                A[r, j] = (p * A[r, j] - A[r, c] * A[c, j]) // prev
        prev = p
    return sign * A[k - 1, k - 1]


@_njit
def _nb_det_batch(M):
    out = np.empty(M.shape[0], dtype=np.int64)
    for b in range(M.shape[0]):
        out[b] = _nb_det(M[b])
    return out


def _np_det_batch(M):
    """Batched Bareiss elimination; exact for int64 or object arrays."""
    M = np.array(M, copy=True)
    B, k = M.shape[0], M.shape[1]
    one = np.ones(B, dtype=M.dtype)
    if k == 0:
        return one
    sign = one.copy()
    prev = one.copy()
    alive = np.ones(B, dtype=bool)
    rows = np.arange(B)
    for c in range(k):
        nz = M[:, c:, c] != 0
        alive &= nz.any(axis=1)
        piv = nz.argmax(axis=1) + c
        swap = (piv != c) & alive
        if swap.any():
            r, p = rows[swap], piv[swap]
            tmp = M[r, c].copy()
            M[r, c] = M[r, p]
            M[r, p] = tmp
            sign[swap] = -sign[swap]
        p = M[:, c, c].copy()
        p[~alive] = 1
        if c + 1 < k:
            with np.errstate(over="ignore"):
                sub = p[:, None, None] * M[:, c + 1:, c + 1:] - M[:, c + 1:, c, None] * M[:, c, None, c + 1:]
                M[:, c + 1:, c + 1:] = sub // prev[:, None, None]
        prev = p
    det = sign * M[:, k - 1, k - 1]
    det[~alive] = 0
    return det


def det_batch(M):
    M = np.asarray(M)
    if USE_NUMBA and M.dtype != object:
        return _nb_det_batch(M.astype(np.int64))
    return _np_det_batch(M)


# ---------------------------------------------------------------------------
# vertex candidates: brute force over n-subsets of facets, Cramer's rule


@_njit
def _nb_vertex_candidates(A, b):
    m, n = A.shape
    cap = 1024
    nums = np.empty((cap, n), dtype=np.int64)
    dens = np.empty(cap, dtype=np.int64)
    count = 0
    idx = np.arange(n)
    S = np.empty((n, n), dtype=np.int64)
    T = np.empty((n, n), dtype=np.int64)
    x = np.empty(n, dtype=np.int64)
    while True:
        for r in range(n):
            for c in range(n):
                S[r, c] = A[idx[r], c]
        d = _nb_det(S)
        if d != 0:
            for j in range(n):
                for r in range(n):
                    for c in range(n):
                        T[r, c] = S[r, c]
                    T[r, j] = b[idx[r]]
                x[j] = _nb_det(T)
            if d < 0:
                d = -d
                for j in range(n):
                    x[j] = -x[j]
            ok = True
            for r in range(m):
                acc = 0
                for c in range(n):
                    acc += A[r, c] * x[c]
                if acc > b[r] * d:
                    ok = False
                    break
            if ok:
                if count == cap:
                    cap *= 2
                    nn = np.empty((cap, n), dtype=np.int64)
                    nd = np.empty(cap, dtype=np.int64)
                    nn[:count] = nums[:count]
                    nd[:count] = dens[:count]
                    nums = nn
                    dens = nd
                nums[count] = x
                dens[count] = d
                count += 1
        # next combination in lexicographic order
        i = n - 1
        while i >= 0 and idx[i] == m - n + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, n):
            idx[j] = idx[j - 1] + 1
    return nums[:count].copy(), dens[:count].copy()


def _combination_chunks(m, k, size=50000):
    it = combinations(range(m), k)
    while True:
        chunk = [c for _, c in zip(range(size), it)]
        if not chunk:
            return
        yield np.array(chunk, dtype=np.intp).reshape(len(chunk), k)


def _np_vertex_candidates(A, b):
    m, n = A.shape
    nums, dens = [], []
    for combo in _combination_chunks(m, n):
        S = A[combo]
        d = _np_det_batch(S)
        keep = d != 0
        if not keep.any():
            continue
        S, d, bs = S[keep], d[keep], b[combo[keep]]
        x = np.empty((len(d), n), dtype=A.dtype)
        for j in range(n):
            T = S.copy()
            T[:, :, j] = bs
            x[:, j] = _np_det_batch(T)
        neg = d < 0
        d[neg] = -d[neg]
        x[neg] = -x[neg]
        ok = np.all(A @ x.T <= b[:, None] * d[None, :], axis=0)
        nums.append(x[ok])
        dens.append(d[ok])
    if not nums:
        return np.empty((0, n), dtype=A.dtype), np.empty(0, dtype=A.dtype)
    return np.concatenate(nums), np.concatenate(dens)


def vertex_candidates(A, b):
    """All feasible basic solutions of ``A x <= b`` as (numerators, denominators).

    ``A`` is an (m, n) integer matrix and ``b`` an integer vector.  Row i of
    the result is a point ``nums[i] / dens[i]`` with ``dens[i] > 0``.
    Duplicates (non-simple vertices) are not removed.
    """
    rows = [list(map(int, r)) + [int(c)] for r, c in zip(A, b)]
    n = len(rows[0]) - 1 if rows else 0
    if len(rows) < n:
        return np.empty((0, n), dtype=np.int64), np.empty(0, dtype=np.int64)
    if fits_int64(rows, n):
        A64 = np.asarray(A, dtype=np.int64)
        b64 = np.asarray(b, dtype=np.int64)
        if USE_NUMBA:
            return _nb_vertex_candidates(A64, b64)
        return _np_vertex_candidates(A64, b64)
    return _np_vertex_candidates(np.array(A, dtype=object), np.array(b, dtype=object))


# ---------------------------------------------------------------------------
# recession rays: generalized cross products of (n-1)-subsets of normals


@_njit
def _nb_has_recession_ray(A):
    m, n = A.shape
    k = n - 1
    idx = np.arange(k)
    S = np.empty((k, k), dtype=np.int64)
    dvec = np.empty(n, dtype=np.int64)
    while True:
        nonzero = False
        for j in range(n):
            for r in range(k):
                cc = 0
                for c in range(n):
                    if c != j:
                        S[r, cc] = A[idx[r], c]
                        cc += 1
            v = _nb_det(S)
            dvec[j] = v if j % 2 == 0 else -v
            if dvec[j] != 0:
                nonzero = True
        if nonzero:
            le = True
            ge = True
            for r in range(m):
                acc = 0
                for c in range(n):
                    acc += A[r, c] * dvec[c]
                if acc > 0:
                    le = False
                if acc < 0:
                    ge = False
            if le or ge:
                return True
        i = k - 1
        while i >= 0 and idx[i] == m - k + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, k):
            idx[j] = idx[j - 1] + 1
    return False


def _np_has_recession_ray(A):
    m, n = A.shape
    k = n - 1
    for combo in _combination_chunks(m, k):
        S = A[combo]
        cols = []
        for j in range(n):
            minor = np.delete(S, j, axis=2)
            v = _np_det_batch(minor)
            cols.append(v if j % 2 == 0 else -v)
        D = np.stack(cols, axis=1)
        nz = np.any(D != 0, axis=1)
        D = D[nz]
        if len(D) == 0:
            continue
        P = A @ D.T
        if np.any(np.all(P <= 0, axis=0) | np.all(P >= 0, axis=0)):
            return True
    return False


def has_recession_ray(A):
    """True iff the cone ``{d != 0 : A d <= 0}`` is nonempty.

    Assumes ``A`` has full column rank (the cone is pointed), so a nonzero
    recession direction exists iff an extreme ray does.
    """
    A = np.asarray(A)
    m, n = A.shape
    if n == 1:
        col = [int(a) for a in A[:, 0]]
        return all(a <= 0 for a in col) or all(a >= 0 for a in col)
    rows = [list(map(int, r)) for r in A]
    if fits_int64(rows, n):
        A64 = A.astype(np.int64)
        if USE_NUMBA:
            return bool(_nb_has_recession_ray(A64))
        return _np_has_recession_ray(A64)
    return _np_has_recession_ray(np.array(rows, dtype=object))


# ---------------------------------------------------------------------------
# lattice points of {A x <= b} inside an integer box


@_njit
def _nb_box_points(A, b, lo, hi):
    m, n = A.shape
    cap = 1024
    out = np.empty((cap, n), dtype=np.int64)
    count = 0
    p = lo.copy()
    for j in range(n):
        if hi[j] < lo[j]:
            return out[:0].copy()
    while True:
        ok = True
        for r in range(m):
            acc = 0
            for c in range(n):
                acc += A[r, c] * p[c]
            if acc > b[r]:
                ok = False
                break
        if ok:
            if count == cap:
                cap *= 2
                nxt = np.empty((cap, n), dtype=np.int64)
                nxt[:count] = out[:count]
                out = nxt
            out[count] = p
            count += 1
        j = n - 1
        while j >= 0 and p[j] == hi[j]:
            p[j] = lo[j]
            j -= 1
        if j < 0:
            break
        p[j] += 1
    return out[:count].copy()


def _np_box_points(A, b, lo, hi, chunk=200000):
    sizes = hi - lo + 1
    if np.any(sizes <= 0):
        return np.empty((0, A.shape[1]), dtype=A.dtype)
    total = int(np.prod(sizes))
    found = []
    for start in range(0, total, chunk):
        flat = np.arange(start, min(total, start + chunk))
        pts = np.stack(np.unravel_index(flat, tuple(int(s) for s in sizes)), axis=1).astype(A.dtype) + lo
        ok = np.all(pts @ A.T <= b, axis=1)
        found.append(pts[ok])
    return np.concatenate(found)


def box_points(A, b, lo, hi):
    """Integer points p with lo <= p <= hi and ``A p <= b``, in lexicographic order."""
    A = np.asarray(A)
    n = A.shape[1]
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    span = [max(abs(int(a)), abs(int(c))) for a, c in zip(lo, hi)]
    worst = max((sum(abs(int(a)) * s for a, s in zip(r, span)) + abs(int(c)) for r, c in zip(A, b)), default=0)
    if worst < _INT64_SAFE:
        A64 = A.astype(np.int64)
        b64 = np.asarray(b).astype(np.int64)
        if USE_NUMBA:
            return _nb_box_points(A64, b64, lo, hi)
        return _np_box_points(A64, b64, lo, hi)
    return _np_box_points(np.array(A, dtype=object), np.array(b, dtype=object), lo.astype(object), hi.astype(object))


# ---------------------------------------------------------------------------
# integer rank (fraction-free elimination with gcd normalisation)


@_njit
def _nb_gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@_njit
def _nb_rank(M):
    A = M.copy()
    r, c = A.shape
    rank = 0
    used = np.zeros(r, dtype=np.bool_)
    for col in range(c):
        piv = -1
        for i in range(r):
            if not used[i] and A[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        used[piv] = True
        rank += 1
        p = A[piv, col]
        for i in range(r):
            if i == piv or A[i, col] == 0:
                continue
            f = A[i, col]
            g = 0
            for j in range(c):
                A[i, j] = p * A[i, j] - f * A[piv, j]
                g = _nb_gcd(g, A[i, j])
            if g > 1:
                for j in range(c):
                    A[i, j] //= g
    return rank


@_njit
def _nb_edge_pairs(inc, A, target):
    V, m = inc.shape
    n = A.shape[1]
    cap = 256
    out = np.empty((cap, 2), dtype=np.int64)
    count = 0
    rows = np.empty((m, n), dtype=np.int64)
    for i in range(V):
        for j in range(i + 1, V):
            k = 0
            for f in range(m):
                if inc[i, f] and inc[j, f]:
                    for c in range(n):
                        rows[k, c] = A[f, c]
                    k += 1
            if k < target:
                continue
            if _nb_rank(rows[:k]) == target:
                if count == cap:
                    cap *= 2
                    nxt = np.empty((cap, 2), dtype=np.int64)
                    nxt[:count] = out[:count]
                    out = nxt
                out[count, 0] = i
                out[count, 1] = j
                count += 1
    return out[:count].copy()


def _np_rank_batch(M):
    M = np.array(M, dtype=np.int64, copy=True)
    B, r, c = M.shape
    rank = np.zeros(B, dtype=np.int64)
    used = np.zeros((B, r), dtype=bool)
    ar = np.arange(B)
    for col in range(c):
        cand = (M[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = ar[has]
        piv = cand[has].argmax(axis=1)
        prow = M[sel, piv]
        pval = prow[:, col]
        fac = M[sel, :, col]
        new = pval[:, None, None] * M[sel] - fac[:, :, None] * prow[:, None, :]
        new[np.arange(len(sel)), piv] = prow
        g = np.gcd.reduce(new, axis=2)
        g[g == 0] = 1
        M[sel] = new // g[:, :, None]
        used[sel, piv] = True
        rank[sel] += 1
    return rank


def _np_edge_pairs(inc, A, target, chunk=20000):
    V = inc.shape[0]
    I, J = np.triu_indices(V, k=1)
    common = inc[I] & inc[J]
    cand = common.sum(axis=1) >= target
    I, J, common = I[cand], J[cand], common[cand]
    keep = []
    for s in range(0, len(I), chunk):
        c = common[s:s + chunk]
        M = A[None, :, :] * c[:, :, None]
        keep.append(_np_rank_batch(M) == target)
    if not keep:
        return np.empty((0, 2), dtype=np.int64)
    ok = np.concatenate(keep)
    return np.stack([I[ok], J[ok]], axis=1).astype(np.int64)


def edge_pairs(incidence, normals):
    """Vertex pairs whose common facets have normals of rank n - 1.

    ``incidence`` is a (V, m) boolean matrix, ``normals`` an (m, n) matrix of
    small integers.  Pairs are returned with ``i < j`` in lexicographic order.
    """
    inc = np.asarray(incidence, dtype=np.bool_)
    A = np.asarray(normals, dtype=np.int64)
    target = A.shape[1] - 1
    if USE_NUMBA:
        return _nb_edge_pairs(inc, A, target)
    return _np_edge_pairs(inc, A, target)


# ---------------------------------------------------------------------------
# valency algebra


@_njit
def _nb_outer_sum_desc(a, b):
    out = np.empty(a.shape[0] * b.shape[0], dtype=np.int64)
    k = 0
    for i in range(a.shape[0]):
        for j in range(b.shape[0]):
            out[k] = a[i] + b[j]
            k += 1
    out.sort()
    return out[::-1].copy()


def outer_sum_desc(a, b):
    """All pairwise sums of two integer vectors, sorted descending."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if USE_NUMBA:
        return _nb_outer_sum_desc(a, b)
    return np.sort(np.add.outer(a, b).ravel())[::-1]


# ---------------------------------------------------------------------------
# double description: combinatorial adjacency of rays


@_njit
def _nb_popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@_njit
def _nb_dd_adjacent(Z, plus, minus, need):
    cap = 1024
    out = np.empty((cap, 2), dtype=np.int64)
    count = 0
    R = Z.shape[0]
    for a in range(plus.shape[0]):
        p = plus[a]
        for b in range(minus.shape[0]):
            q = minus[b]
            c = Z[p] & Z[q]
            if _nb_popcount(c) < need:
                continue
            ok = True
            for r in range(R):
                if r != p and r != q and (Z[r] & c) == c:
                    ok = False
                    break
            if ok:
                if count == cap:
                    cap *= 2
                    nxt = np.empty((cap, 2), dtype=np.int64)
                    nxt[:count] = out[:count]
                    out = nxt
                out[count, 0] = p
                out[count, 1] = q
                count += 1
    return out[:count].copy()


def _np_dd_adjacent(Z, plus, minus, need):
    found = []
    for p in plus:
        c = Z[p] & Z[minus]
        cand = np.bitwise_count(c) >= need
        if not cand.any():
            continue
        qs, cs = minus[cand], c[cand]
        supersets = ((Z[None, :] & cs[:, None]) == cs[:, None]).sum(axis=1)
        for q in qs[supersets == 2]:
            found.append((p, q))
    return np.array(found, dtype=np.int64).reshape(-1, 2)


def dd_adjacent(Z, plus, minus, need):
    """Adjacent (plus, minus) ray pairs for one double-description step.

    ``Z`` holds each ray's set of tight constraints as a bitmask (bits
    below 63).  A pair is adjacent when its common tight set has at least
    ``need`` elements and no third ray is tight on all of them.
    """
    Z = np.asarray(Z, dtype=np.int64)
    plus = np.asarray(plus, dtype=np.int64)
    minus = np.asarray(minus, dtype=np.int64)
    if USE_NUMBA:
        return _nb_dd_adjacent(Z, plus, minus, need)
    return _np_dd_adjacent(Z, plus, minus, need)
