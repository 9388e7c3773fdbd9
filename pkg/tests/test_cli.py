import subprocess
import sys

import pytest

from polyglue.cli import main
from polyglue.construct import excess_pointed, excess_uniform, extend_by_excess, rho, tighten
from polyglue.core import GroundSet, RankVector, restrict
from polyglue.glue import Certificate
from polyglue.io import format_polymatroid, parse_polymatroid
from polyglue.theorems import build_ex1


def report(text):
    out = {}
    for line in text.split("\n\n", 1)[0].splitlines():
        k, _, v = line.partition(": ")
        out.setdefault(k, v)
    return out


@pytest.fixture
def files(tmp_path):
    fx, fy, fxy = build_ex1()
    paths = {}
    for name, f in (("fx", fx), ("fy", fy), ("fxy", fxy)):
        p = tmp_path / f"{name}.txt"
        p.write_text(format_polymatroid(f))
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_table(capsys, files):
    code, out, _ = run(capsys, "check", files["fxy"])
    assert code == 0
    assert report(out)["polymatroid"] == "true"


def test_check_violation(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("ground a b\na = 1\nb = 1\nab = 3\n")
    code, out, _ = run(capsys, "check", str(p))
    assert code == 1
    assert "violated (a,b): -1" in out


def test_tighten(capsys, files, tmp_path):
    out_path = tmp_path / "t.txt"
    code, _, _ = run(capsys, "tighten", files["fy"], "y", "--out", str(out_path))
    assert code == 0
    _, fy, _ = build_ex1()
    assert parse_polymatroid(out_path.read_text()) == fy - rho(fy.ground, "y")
    assert parse_polymatroid(out_path.read_text()) == tighten(fy, "y")


def test_tighten_to_stdout(capsys, files):
    code, out, _ = run(capsys, "tighten", files["fy"], "y")
    assert code == 0 and "ground a b c y" in out


def test_extend_zero(capsys, files):
    code, out, _ = run(capsys, "extend", files["fxy"], "z", "zero")
    assert code == 0
    g = parse_polymatroid(out.split("\n\n", 1)[1])
    _, _, fxy = build_ex1()
    assert restrict(g, "abcxy") == fxy
    assert g["z"] == 0


def test_extend_specs(capsys, tmp_path):
    base = tmp_path / "u.txt"
    base.write_text(format_polymatroid(RankVector.from_function("abc", lambda m: 4 if m in (1, 2, 4) else 6)))
    code, out, _ = run(capsys, "extend", str(base), "x", "uniform:1,2")
    assert code == 0
    _, fy, _ = build_ex1()
    code, out, _ = run(capsys, "extend", str(base), "y", "pointed:c,1,2")
    assert code == 0 and parse_polymatroid(out.split("\n\n", 1)[1]) == fy
    code, out, _ = run(capsys, "extend", str(base), "x", "uniform:0,3")
    assert code == 1 and report(out)["valid"] == "false"
    exc = tmp_path / "e.txt"
    exc.write_text("* = 0\n")
    assert run(capsys, "extend", str(base), "x", str(exc))[0] == 0
    assert run(capsys, "extend", str(base), "x", "copy:ab")[0] == 0
    assert run(capsys, "extend", str(base), "x", "nonsense:1")[0] == 2


def test_amalgam(capsys, files, tmp_path):
    code, out, _ = run(capsys, "amalgam", files["fx"], files["fy"])
    assert code == 0 and report(out)["status"] == "FEASIBLE"
    cert = tmp_path / "c.txt"
    code, out, _ = run(capsys, "amalgam", files["fx"], files["fy"], "--adhesive", "--out", str(cert))
    assert code == 1
    r = report(out)
    assert r["status"] == "INFEASIBLE" and r["certificate_verified"] == "true"
    c = Certificate.from_text(cert.read_text())
    assert not c.feasible and c.adhesive


def test_amalgam_two_element_base(capsys, tmp_path):
    f = RankVector.from_mapping("ab", {"a": 2, "b": 2, "ab": 3})
    fx = extend_by_excess(f, "x", excess_uniform(f, 1, 1))
    fy = extend_by_excess(f, "y", excess_pointed(f, "a", 0, 1))
    px, py = tmp_path / "x.txt", tmp_path / "y.txt"
    px.write_text(format_polymatroid(fx))
    py.write_text(format_polymatroid(fy))
    code, out, _ = run(capsys, "amalgam", str(px), str(py), "--adhesive")
    assert code == 0 and report(out)["status"] == "FEASIBLE"


def test_mismatch_diff(capsys, files, tmp_path):
    bad = tmp_path / "bad.txt"
    text = open(files["fy"]).read().replace("a = 4", "a = 5")
    bad.write_text(text)
    code, _, err = run(capsys, "amalgam", files["fx"], str(bad))
    assert code == 2
    assert "restrictions to the base differ" in err and "a: 4 != 5" in err


def test_parse_error(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("ground a b\na = 1\nb = one\n")
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "line 3" in err


def test_missing_file(capsys):
    assert run(capsys, "check", "/nonexistent/file")[0] == 2


def test_usage(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_project_diagnostic(capsys, tmp_path):
    omit = ["--omit", "(a|bcxy)", "--omit", "(b|acxy)", "--omit", "(c|abxy)"]
    code, out, _ = run(capsys, "project", "abcxy", "--side", "abcx", "--side", "abcy", "--no-filter", *omit)
    r = report(out)
    assert code == 0 and (r["rows"], r["rays"]) == ("27", "154")
    code, out, _ = run(capsys, "project", "abcxy", "--side", "abcx", "--side", "abcy", "--no-filter")
    r = report(out)
    assert (r["rows"], r["rays"]) == ("30", "211")
    assert run(capsys, "project", "abcxy", "--omit", "(q|r)")[0] == 2


def test_project_keep_everything(capsys, tmp_path):
    out_path = tmp_path / "f.txt"
    code, out, _ = run(capsys, "project", "abc", "--out", str(out_path))
    assert code == 0 and report(out)["dropped"] == "0"
    assert len(out_path.read_text().splitlines()) == 9


def test_project_facets(capsys, tmp_path):
    out_path = tmp_path / "f.txt"
    code, out, _ = run(capsys, "project", "abxy", "--side", "abx", "--side", "aby", "--out", str(out_path), "--threads", "2")
    r = report(out)
    assert code == 0 and int(r["facets"]) == len(out_path.read_text().splitlines())


@pytest.mark.parametrize("target", ["ex1", "nonsticky1", "nonsticky2", "table1", "table3"])
def test_reproduce(capsys, target):
    code, out, _ = run(capsys, "reproduce", target)
    assert code == 0 and report(out)["status"] == "ok"


def test_report_deterministic(capsys, files):
    outs = [run(capsys, "amalgam", files["fx"], files["fy"], "--adhesive")[1] for _ in range(2)]
    strip = lambda s: [ln for ln in s.splitlines() if not ln.startswith("wall_time")]  # noqa: E731
    assert strip(outs[0]) == strip(outs[1])


def test_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "polyglue.cli", "check", files["fx"]], capture_output=True, text=True)
    assert res.returncode == 0 and "polymatroid: true" in res.stdout
