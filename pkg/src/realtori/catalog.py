"""Named polytopes, the partition function and the symmetric census."""
from dataclasses import dataclass
from functools import lru_cache

from .errors import UnknownNameError
from .geometry.polytope import from_halfspaces, product


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    polytope: object
    provenance: str


def _e(n, j, s=1):
    return tuple(s * int(i == j) for i in range(n))


def cube(n):
    return from_halfspaces(n, [(_e(n, j, s), 1) for j in range(n) for s in (1, -1)], f"cube:{n}")


def dp(n):
    raw = [(_e(n, j, s), 1) for j in range(n) for s in (1, -1)]
    raw += [((1,) * n, 1), ((-1,) * n, 1)]
    return from_halfspaces(n, raw, f"dp:{n}")


def cpn(n):
    raw = [(_e(n, j, -1), 1) for j in range(n)] + [((1,) * n, 1)]
    return from_halfspaces(n, raw, f"cpn:{n}")


_SURFACES = {
    "s2xs2": ([((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)],
              "product of two projective lines"),
    "x1": ([((-1, 0), 1), ((0, -1), 1), ((0, 1), 1), ((1, 1), 1)],
           "projective plane blown up at one point"),
    "x2": ([((-1, 0), 1), ((0, -1), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)],
           "projective plane blown up at two points"),
    "x3": ([((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1), ((1, 1), 1), ((-1, -1), 1)],
           "projective plane blown up at three points"),
}

_FAMILIES = {
    "dp": (dp, 1, "del Pezzo polytope: |x_j| <= 1 and |x_1 + ... + x_n| <= 1"),
    "cube": (cube, 1, "cube [-1,1]^n, a product of projective lines"),
    "cpn": (cpn, 1, "simplex of complex projective n-space"),
}

SURFACE_NAMES = ("s2xs2", "cpn:2", "x1", "x2", "x3")


def builtin(name, param=None):
    """Look up ``name`` (``"dp"``, ``"cube"``, ``"cpn"`` with ``param``, or a surface).

    ``"dp:3"`` style names carry the parameter inline.
    """
    if param is None and ":" in name:
        name, _, p = name.partition(":")
        try:
            param = int(p)
        except ValueError:
            raise UnknownNameError(f"bad parameter {p!r} for {name!r}") from None
    if name in _FAMILIES:
        fn, lo, note = _FAMILIES[name]
        if param is None or param < lo:
            raise UnknownNameError(f"{name} needs an integer parameter >= {lo}")
        return CatalogEntry(f"{name}:{param}", fn(param), note)
    if name in _SURFACES and param is None:
        raw, note = _SURFACES[name]
        return CatalogEntry(name, from_halfspaces(2, raw, name), "toric del Pezzo surface: " + note)
    raise UnknownNameError(f"unknown polytope {name!r}")


# -- partitions and the symmetric census ------------------------------------
@lru_cache(maxsize=None)
def _partition_table(n):
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)


def partition_p(n):
    """Number of partitions of ``n`` by the pentagonal-number recurrence."""
    if n < 0:
        raise ValueError("partition_p is defined for n >= 0")
    return _partition_table(n)[n]


def _symmetric_parts(n, largest):
    if n == 0:
        yield ()
        return
    for a in range(min(n, largest), 0, -1):
        if a == 1 or a % 2 == 0:
            for rest in _symmetric_parts(n - a, a):
                yield (a,) + rest


def symmetric_decompositions(n):
    """Descending multisets of parts in {1, 2, 4, 6, ...} summing to ``n``."""
    return list(_symmetric_parts(n, n))


@dataclass(frozen=True)
class NuC:
    count: int
    decompositions: tuple


def nu_c_formula(n):
    return sum(partition_p(j) for j in range(n // 2 + 1))


def nu_c(n):
    """Count of centrally symmetric monotone Delzant polytopes in dimension ``n``.

    The closed formula is cross-checked against explicit enumeration of
    del Pezzo products.
    """
    if n < 1:
        raise ValueError("nu_c is defined for n >= 1")
    decs = tuple(symmetric_decompositions(n))
    count = nu_c_formula(n)
    if count != len(decs):
        raise AssertionError(f"formula gives {count}, enumeration gives {len(decs)}")
    return NuC(count, decs)


def realize(parts):
    """Product of ``dp(n_j)`` over the parts of a symmetric decomposition."""
    parts = tuple(parts)
    if not parts or any(a < 1 or (a != 1 and a % 2) for a in parts):
        raise ValueError(f"{parts} is not a symmetric decomposition")
    P = dp(parts[0])
    for a in parts[1:]:
        P = product(P, dp(a))
    P.name = "*".join(f"dp:{a}" for a in parts)
    return CatalogEntry(P.name, P, "product of del Pezzo polytopes")


def listing(names=None):
    """Tab-separated rows: name, dim, #facets, #vertices, flags."""
    from .geometry.classify import classify
    from .toric import symmetric_points_and_fs

    names = names or SURFACE_NAMES + ("dp:1", "dp:3", "dp:4", "cube:3", "cpn:3")
    rows = []
    for name in names:
        P = builtin(name).polytope
        c = classify(P)
        flags = [f for f, ok in (("delzant", c.is_delzant), ("monotone", c.is_monotone),
                                 ("symmetric", c.is_centrally_symmetric),
                                 ("fs", symmetric_points_and_fs(P).fs)) if ok]
        rows.append(f"{name}\t{P.dim}\t{len(P.facets)}\t{len(P.vertices)}\t{','.join(flags) or '-'}")
    return rows
