import io
import re
import subprocess
import sys

import pytest

from realtori.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_real_cpn2():
    code, out, _ = call("real", "--builtin", "cpn:2")
    assert code == 0 and out.splitlines()[0] == "verdict: NotRealByAsymmetry"


def test_real_square_and_inconclusive():
    assert fields(call("real", "--builtin", "s2xs2")[1])["verdict"] == "RealBySymmetry"
    assert fields(call("real", "--builtin", "dp:3")[1])["verdict"] == "Inconclusive"


def test_count_symmetric_9():
    code, out, _ = call("count-symmetric", "9")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "nu_c: 12" and len(lines) == 13
    assert all(l.startswith("decomposition: ") for l in lines[1:])
    assert lines[1] == "decomposition: 8,1"


def test_classify_and_show(tmp_path):
    code, out, _ = call("classify", "--builtin", "dp:3")
    f = fields(out)
    assert code == 0 and f["delzant"] == "no" and f["centrally_symmetric"] == "yes" and "reason" in f
    code, text, _ = call("show", "--builtin", "x2")
    path = tmp_path / "x2.poly"
    path.write_text(text)
    assert call("show", str(path))[1] == text
    assert fields(call("classify", str(path))[1])["monotone"] == "yes"


def test_point_commands():
    f = fields(call("energy", "--builtin", "s2xs2", "--at", "1/2,1/4")[1])
    assert f["minimum"] == "1/2" and f["active"] == "(0)" and f["exact"] == "yes"
    f = fields(call("germ", "--builtin", "s2xs2", "--at=-1/2,0")[1])
    assert f["even"] == "no" and f["unpaired"].endswith("normal (-1,0)")
    f = fields(call("probe", "--builtin", "cpn:2", "--at", "1/2,0")[1])
    assert f["u"] == "(1,0)" and f["length"] == "2" and f["upper_bound"] == "1/2"


def test_fs_and_smith():
    out = call("fs", "--builtin", "cpn:2")[1]
    assert fields(out)["symmetric_points"] == "6" and fields(out)["fs"] == "yes"
    assert len(re.findall(r"^facet \d", out, re.M)) == 3
    f = fields(call("smith", "--builtin", "x2")[1])
    assert f["passes"] == "no" and f["euler"] == "5"


def test_chekanov_command():
    code, out, _ = call("chekanov", "--builtin", "s2xs2", "--vertex", "0", "--sig", "2;0")
    f = fields(out)
    assert code == 0
    assert f["vertices"] == "(-2,-1) (0,1) (2,-1)"
    assert f["volume"] == "4" and f["valency"] == "(2,2,2)" and f["convexity_certified"] == "yes"
    assert f["max_facet_lattice_count"] == "5" and f["realness"] == "NotRealByAsymmetry"
    f = fields(call("chekanov", "--builtin", "cube:4", "--vertex=-1,-1,-1,-1", "--sig", "2,2;0")[1])
    assert f["signature"] == "2,2;0" and f["valency"] == "(4,4,4,4,4,4,4,4,4)"


def test_exotic_and_valency():
    f = fields(call("exotic", "--builtin", "x1")[1])
    assert f["exotic"] == "yes" and (f["base_max"], f["chekanov_max"]) == ("4", "6")
    f = fields(call("valency", "--builtin", "dp:2")[1])
    assert f["valency"] == "(2,2,2,2,2,2)" and f["edges"] == "6" and f["compact"] == "(2x6)"
    f = fields(call("valency", "--table", "4")[1])
    assert f["signatures"] == "4" and f["pairwise_distinct"] == "yes"


def test_catalog_listing():
    out = call("catalog")[1].splitlines()
    assert out[0] == "name\tdim\tfacets\tvertices\tflags"
    assert out[1].startswith("s2xs2\t2\t4\t4\t")


def test_plot_levels(tmp_path):
    path = tmp_path / "f.svg"
    code, out, _ = call("plot", "--builtin", "cube:2", "--levels", "1,3/4,1/2,1/4", "--out", str(path))
    svg = path.read_text()
    assert code == 0 and fields(out)["polygons"] == "5"
    assert svg.count("<polygon") == 5
    assert 'data-level="1/4" stroke="#1f77b4" points="-0.250000,-0.250000 0.250000,-0.250000' in svg


def test_plot_extras():
    code, svg, _ = call("plot", "--builtin", "x1", "--points", "--grid", "--out", "-")
    assert code == 0 and svg.count("<circle") == 6 and svg.count("<polygon") == 1
    code, svg, _ = call("plot", "--builtin", "s2xs2", "--chekanov", "0", "--levels", "1/2", "--out", "-")
    assert code == 0 and svg.count("<polygon") == 2


@pytest.mark.parametrize("argv", [
    (),
    ("frobnicate",),
    ("real",),
    ("real", "--builtin", "x1", "extra.poly"),
    ("energy", "--builtin", "x1"),
    ("energy", "--builtin", "x1", "--at", "1/0,0"),
    ("chekanov", "--builtin", "x1", "--vertex", "a"),
    ("chekanov", "--builtin", "x1", "--vertex", "0", "--sig", "1;1"),
    ("count-symmetric", "0"),
    ("plot", "--builtin", "cube:3", "--out", "-"),
    ("valency", "--table", "3", "--builtin", "x1"),
    ("show", "/nonexistent/file.poly"),
])
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err


@pytest.mark.parametrize("argv, kind", [
    (("real", "--builtin", "hexagon"), "UnknownNameError"),
    (("energy", "--builtin", "s2xs2", "--at", "1,0"), "PointOutsideError"),
    (("probe", "--builtin", "s2xs2", "--at", "0,0"), "NotInChamberError"),
    (("smith", "--builtin", "dp:3"), "NotDelzantError"),
    (("chekanov", "--builtin", "s2xs2", "--vertex", "0", "--sig", "3;0"), "DimensionMismatchError"),
])
def test_operation_errors_exit_1(argv, kind):
    code, out, err = call(*argv)
    assert code == 1 and kind in err and "failed" in err


def test_parse_error_reports_position(tmp_path):
    path = tmp_path / "bad.poly"
    path.write_text("dim 2\n1 0 ; 1\n1 x ; 1\n")
    code, _, err = call("classify", str(path))
    assert code == 1 and "ParseError" in err and "parse failed" in err


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for p in (a, b):
        call("plot", "--builtin", "x2", "--levels", "1,1/2", "--points", "--out", str(p))
    assert a.read_bytes() == b.read_bytes()
    assert call("chekanov", "--builtin", "x3", "--vertex", "2") == call("chekanov", "--builtin", "x3", "--vertex", "2")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "realtori", "count-symmetric", "4"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.startswith("nu_c: 4\n")
