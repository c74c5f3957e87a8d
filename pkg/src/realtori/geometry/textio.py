"""Plain-text polytope format.

::

    dim 2
    name square          # optional
    1 0 ; 1
    -1 0 ; 1/2

One facet per line, ``<normal entries> ; <offset>``.  Lines starting
with ``#`` are comments.
"""
from fractions import Fraction
import re

from ..errors import ParseError
from .polytope import from_halfspaces

_INT = re.compile(r"[+-]?\d+\Z")
_RAT = re.compile(r"[+-]?\d+(/\d+)?\Z")


def serialize(P):
    lines = [f"dim {P.dim}"]
    if P.name:
        lines.append(f"name {P.name}")
    for f in P.facets:
        lines.append(" ".join(str(a) for a in f.normal) + " ; " + str(f.offset))
    return "\n".join(lines) + "\n"


def _tokens(line):
    """Yield ``(token, column)`` pairs with 1-based columns."""
    for m in re.finditer(r"\S+", line):
        yield m.group(), m.start() + 1


def parse(text):
    dim = None
    name = None
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = list(_tokens(line))
        head, col = toks[0]
        if dim is None:
            if head != "dim" or len(toks) != 2:
                raise ParseError("expected 'dim <n>'", lineno, col)
            val, vcol = toks[1]
            if not _INT.match(val) or int(val) < 1:
                raise ParseError(f"dimension must be a positive integer, got {val!r}", lineno, vcol)
            dim = int(val)
            continue
        if head == "name":
            if name is not None or raw:
                raise ParseError("'name' must come once, before the facets", lineno, col)
            name = line[line.index("name") + 4:].strip()
            if not name:
                raise ParseError("empty name", lineno, col + 4)
            continue
        semis = [i for i, (t, _) in enumerate(toks) if t == ";"]
        if len(semis) != 1:
            raise ParseError("facet line needs exactly one ';' separated by spaces", lineno, col)
        k = semis[0]
        normal_toks, rest = toks[:k], toks[k + 1:]
        if len(normal_toks) != dim:
            raise ParseError(f"expected {dim} normal entries, got {len(normal_toks)}", lineno, col)
        for t, c in normal_toks:
            if not _INT.match(t):
                raise ParseError(f"normal entry {t!r} is not an integer", lineno, c)
        if len(rest) != 1:
            c = rest[1][1] if len(rest) > 1 else len(line) + 1
            raise ParseError("expected a single offset after ';'", lineno, c)
        t, c = rest[0]
        if not _RAT.match(t):
            raise ParseError(f"offset {t!r} is not an integer or p/q", lineno, c)
        try:
            off = Fraction(t)
        except ZeroDivisionError:
            raise ParseError("zero denominator", lineno, c) from None
        normal = tuple(int(x) for x, _ in normal_toks)
        if not any(normal):
            raise ParseError("facet normal is zero", lineno, col)
        raw.append((normal, off))
    if dim is None:
        raise ParseError("missing 'dim' line", 1, 1)
    return from_halfspaces(dim, raw, name)
