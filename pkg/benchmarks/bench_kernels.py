"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case is run once per backend to warm up (numba compiles on first call),
then timed as the best of ``--repeat`` runs.  Results are checked for
equality between the backends before timing.
"""
import argparse
import time

import numpy as np

from realtori import kernels
from realtori.catalog import cube, dp
from realtori.chekanov import cube_chekanov
from realtori.geometry.polytope import _as_array, _scaled_rows


def rows(P):
    A, b = _scaled_rows(P.facets)
    return _as_array(A), _as_array(b)


def case_vertices(P):
    A, b = rows(P)
    return lambda: kernels.vertex_candidates(A, b)


def case_lattice(P):
    A, b = rows(P)
    lo, hi = [-1] * P.dim, [1] * P.dim
    return lambda: kernels.box_points(A, b, lo, hi)


def case_edges(P):
    inc = np.zeros((len(P.vertices), len(P.facets)), dtype=bool)
    for k, fs in enumerate(P.incidence):
        inc[k, list(fs)] = True
    normals = np.array([f.normal for f in P.facets], dtype=np.int64)
    return lambda: kernels.edge_pairs(inc, normals)


def case_dd(_):
    Z = np.random.default_rng(0).integers(0, 2**40, size=400)
    plus, minus = np.arange(0, 150), np.arange(150, 400)
    return lambda: kernels.dd_adjacent(Z, plus, minus, 12)


CASES = [
    ("vertex scan dp(4)", case_vertices, lambda: dp(4)),
    ("vertex scan cube(6)", case_vertices, lambda: cube(6)),
    ("lattice points dp(8)", case_lattice, lambda: dp(8)),
    ("lattice points cube(10)", case_lattice, lambda: cube(10)),
    ("edges CP_6", case_edges, lambda: cube_chekanov(6)),
    ("edges dp(6)", case_edges, lambda: dp(6)),
    ("dd adjacency 150x250", case_dd, lambda: cube(2)),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'case':<26}{'numba (ms)':>12}{'numpy (ms)':>12}{'speedup':>10}")
    for label, make, build in CASES:
        fn = make(build())
        out, t = {}, {}
        for name in ("numba", "numpy"):
            kernels.set_backend(name)
            out[name] = fn()
            t[name] = best_of(fn, args.repeat)
        kernels.set_backend("numba")
        if not same(out["numba"], out["numpy"]):
            raise SystemExit(f"{label}: backends disagree")
        print(f"{label:<26}{1e3 * t['numba']:>12.2f}{1e3 * t['numpy']:>12.2f}{t['numpy'] / t['numba']:>9.1f}x")


if __name__ == "__main__":
    main()
