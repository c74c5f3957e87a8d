"""Command-line interface: ``realtori <command> [--builtin NAME | FILE] ...``.

Results are printed as ``key: value`` lines.  Exit status is 0 on success,
1 when an operation rejects its input and 2 on usage errors.
"""
import argparse
import sys

from . import catalog, chekanov, toric
from .errors import ParseError, RealToriError
from .geometry import classify, parse, serialize, valency_vector, volume
from .geometry.exact import as_fraction
from .geometry.polytope import facet_lattice_counts
from .svg import render


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(_fmt(c) for c in x) + ")"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    return str(x)


def _facet(f):
    return " ".join(map(str, f.normal)) + " ; " + str(f.offset)


def _rationals(text):
    try:
        return tuple(as_fraction(c) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad rational list {text!r}: {e}") from None


def _vertex(text):
    if "," in text:
        return _rationals(text)
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"bad vertex {text!r}: give an index or coordinates") from None


def _load(args):
    if bool(args.builtin) == bool(args.file):
        raise UsageError("give exactly one of --builtin NAME or FILE")
    if args.builtin:
        return catalog.builtin(args.builtin).polytope
    try:
        with open(args.file, encoding="ascii") as fh:
            return parse(fh.read())
    except OSError as e:
        raise UsageError(str(e)) from None


# -- commands ---------------------------------------------------------------
def cmd_show(args, out):
    out.write(serialize(_load(args)))


def cmd_classify(args, out):
    P = _load(args)
    c = classify(P)
    emit(out, [
        ("name", P.name),
        ("dim", P.dim),
        ("facets", len(P.facets)),
        ("vertices", len(P.vertices)),
        ("volume", volume(P)),
        ("delzant", c.is_delzant),
        ("monotone", c.is_monotone),
        ("interior_lattice_points", len(c.interior_lattice_points)),
        ("centrally_symmetric", c.is_centrally_symmetric),
    ] + [("reason", r) for r in c.reasons])


def cmd_fs(args, out):
    P = _load(args)
    s = toric.symmetric_points_and_fs(P)
    rows = [("symmetric_points", len(s.points)), ("fs", s.fs)]
    rows += [(f"facet {i} [{_facet(f)}]", " ".join(_fmt(p) for p in hits) or "-")
             for i, (f, hits) in enumerate(zip(P.facets, s.hits))]
    emit(out, rows)


def cmd_energy(args, out):
    P = _load(args)
    e = toric.energy_profile(P, _rationals(args.at))
    emit(out, [
        ("point", e.x),
        ("values", e.values),
        ("minimum", e.minimum),
        ("active", tuple(sorted(e.active))),
        ("in_chamber", e.in_chamber),
        ("monotone", e.monotone),
        ("fs", e.property_fs),
        ("exact", e.exact),
    ])


def cmd_germ(args, out):
    P = _load(args)
    g = toric.germ_evenness(P, _rationals(args.at))
    rows = [("even", g.even), ("active", tuple(sorted(g.active)))]
    rows += [("pair", f"{i} <-> {j}") for i, j in g.pairing]
    if g.witness is not None:
        rows.append(("unpaired", f"{g.witness} normal {_fmt(P.facets[g.witness].normal)}"))
    emit(out, rows)


def cmd_real(args, out):
    P = _load(args)
    v = toric.central_fibre_realness(P)
    emit(out, [("verdict", v.verdict)] + sorted(v.evidence.items()))


def cmd_smith(args, out):
    s = toric.smith_filter(_load(args))
    emit(out, [("passes", s.passes), ("euler", s.euler), ("betti_total", s.betti_total)])


def cmd_probe(args, out):
    P = _load(args)
    r = toric.probe_at(P, _rationals(args.at))
    p = r.probe
    emit(out, [
        ("facet", p.facet),
        ("u", p.u),
        ("base", p.base),
        ("direction", p.direction),
        ("length", p.length),
        ("displaceable", r.displaceable),
        ("upper_bound", r.upper_bound),
    ])


def cmd_chekanov(args, out):
    P = _load(args)
    sig = _signature(args.sig, P.dim)
    v = _vertex(args.vertex)
    res = chekanov.chekanov_polytope(P, v, sig)
    C = res.polytope
    rows = [
        ("vertex", res.vertex),
        ("signature", str(sig)),
        ("embeds", chekanov.embeds_signature(P, v, sig)),
        ("convexity_certified", res.convexity_certified),
        ("volume", volume(C)),
        ("vertices", " ".join(_fmt(p) for p in C.vertices)),
    ]
    rows += [("facet", _facet(f)) for f in C.facets]
    rows += [
        ("apex", res.apex),
        ("apex_valency", res.apex_valency),
        ("valency", valency_vector(C)),
        ("max_facet_lattice_count", max(facet_lattice_counts(C))),
        ("base_max_facet_lattice_count", max(facet_lattice_counts(P))),
        ("realness", chekanov.chekanov_realness(P, v, sig).verdict),
    ]
    emit(out, rows)


def cmd_exotic(args, out):
    P = _load(args)
    e = chekanov.exoticness(P, _vertex(args.vertex) if args.vertex else None)
    rows = [("exotic", e.exotic), ("vertex", e.vertex), ("base_max", e.base_max), ("chekanov_max", e.chekanov_max)]
    if e.note:
        rows.append(("note", e.note))
    emit(out, rows)


def cmd_valency(args, out):
    if args.table is not None:
        if args.builtin or args.file:
            raise UsageError("--table takes no polytope input")
        t = chekanov.signature_table(args.table)
        rows = [("signatures", len(t.rows)), ("pairwise_distinct", t.pairwise_distinct)]
        for r in t.rows:
            rows.append((f"({r.signature})", f"{_compact(r.valency)} recovered {_fmt(str(r.recovery.signature))}"))
        emit(out, rows)
        return
    P = _load(args)
    V = valency_vector(P)
    emit(out, [("valency", V), ("compact", _compact(V)), ("edges", sum(V) // 2)])


def cmd_count_symmetric(args, out):
    if args.n < 1:
        raise UsageError("n must be at least 1")
    res = catalog.nu_c(args.n)
    emit(out, [("nu_c", res.count)] + [("decomposition", ",".join(map(str, d))) for d in res.decompositions])


def cmd_catalog(args, out):
    out.write("name\tdim\tfacets\tvertices\tflags\n")
    for row in catalog.listing():
        out.write(row + "\n")


def cmd_plot(args, out):
    P = _load(args)
    if P.dim != 2:
        raise UsageError("plot needs a 2-dimensional polytope")
    levels = _rationals(args.levels) if args.levels else ()
    if args.chekanov is not None:
        P = chekanov.chekanov_polytope(P, _vertex(args.chekanov), chekanov.ChekanovSignature((2,), 0)).polytope
        polys = [(str(lam), P.scaled(lam)) for lam in levels]
    else:
        polys = [(str(lam), toric.level_set(P, lam).polytope) for lam in levels]
    dots = toric.symmetric_points_and_fs(P).points if args.points else ()
    text = render(P, polys, dots, grid=args.grid, title=P.name)
    if args.out == "-":
        out.write(text)
    else:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        emit(out, [("wrote", args.out), ("polygons", 1 + len(polys))])


def _signature(text, n):
    try:
        sig = chekanov.ChekanovSignature.parse(text) if text else chekanov.ChekanovSignature((n,), 0)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return sig


def _compact(V):
    parts = []
    i = 0
    while i < len(V):
        j = i
        while j < len(V) and V[j] == V[i]:
            j += 1
        parts.append(f"{V[i]}x{j - i}" if j - i > 1 else str(V[i]))
        i = j
    return "(" + ",".join(parts) + ")"


def emit(out, rows):
    for k, v in rows:
        out.write(f"{k}: {_fmt(v)}\n")


# -- parser -----------------------------------------------------------------
COMMANDS = {
    "show": (cmd_show, "serialize", "print the polytope in text format"),
    "classify": (cmd_classify, "classify", "Delzant / monotone / symmetry report"),
    "fs": (cmd_fs, "symmetric_points_and_fs", "symmetric lattice points and property FS"),
    "energy": (cmd_energy, "energy_profile", "facet distances at a point"),
    "germ": (cmd_germ, "germ_evenness", "pairing of active facets at a point"),
    "real": (cmd_real, "central_fibre_realness", "realness verdict for the central fibre"),
    "smith": (cmd_smith, "smith_filter", "vertex-count Smith filter"),
    "probe": (cmd_probe, "probe_at", "displaceability probe through a point"),
    "chekanov": (cmd_chekanov, "chekanov_polytope", "Chekanov polytope at a vertex"),
    "exotic": (cmd_exotic, "exoticness", "max facet lattice count before and after the transform"),
    "valency": (cmd_valency, "valency_vector", "valency vector, or the signature table with --table"),
    "count-symmetric": (cmd_count_symmetric, "nu_c", "count symmetric monotone polytopes"),
    "catalog": (cmd_catalog, "builtin", "list built-in polytopes"),
    "plot": (cmd_plot, "plot", "SVG of a polygon with level sets"),
}

_NO_INPUT = {"count-symmetric", "catalog"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="realtori", description="Realness and exoticness of toric fibres from moment polytopes.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, _, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_, description=help_)
        if name not in _NO_INPUT:
            s.add_argument("file", nargs="?", help="polytope text file")
            s.add_argument("--builtin", metavar="NAME", help="built-in polytope, e.g. cpn:2, cube:3, dp:4, x1")
        if name in ("energy", "germ", "probe"):
            s.add_argument("--at", required=True, metavar="X", help="point as comma-separated p/q, e.g. --at=1/2,-1/4")
        if name == "chekanov":
            s.add_argument("--vertex", required=True, metavar="V", help="vertex index or coordinates")
            s.add_argument("--sig", metavar="K;M", help="signature, e.g. '2,2;1' (default: n;0)")
        if name == "exotic":
            s.add_argument("--vertex", metavar="V", help="override the vertex choice")
        if name == "valency":
            s.add_argument("--table", type=int, metavar="N", help="signature table in dimension N")
        if name == "count-symmetric":
            s.add_argument("n", type=int)
        if name == "plot":
            s.add_argument("--levels", default="", metavar="L1,L2,...", help="scales in (0,1]")
            s.add_argument("--out", required=True, help="output path, '-' for stdout")
            s.add_argument("--points", action="store_true", help="mark symmetric lattice points")
            s.add_argument("--grid", action="store_true", help="draw the integer grid")
            s.add_argument("--chekanov", metavar="V", help="draw the Chekanov polytope at vertex V instead")
    return p


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        err.write(f"{e}\n")
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    fn, op, _ = COMMANDS[args.command]
    try:
        fn(args, out)
    except UsageError as e:
        err.write(f"realtori {args.command}: {e}\n")
        return 2
    except RealToriError as e:
        if isinstance(e, ParseError):
            op = "parse"
        err.write(f"realtori {args.command}: {op} failed: {type(e).__name__}: {e}\n")
        return 1
    return 0


def main():
    sys.exit(run())
