import json
import subprocess
import sys

from subcad.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_variety_summary(capsys, fixture_path):
    code, out, _ = run(capsys, "variety", fixture_path("circle_phi1"))
    assert code == 0 and "cells: 8" in out


def test_layered_summary(capsys, fixture_path):
    code, out, _ = run(capsys, "layered", fixture_path("circle_phi3"), "--layers", "1")
    assert code == 0 and "cells: 8, dims: {2:8}" in out


def test_cad_json(capsys, fixture_path):
    code, out, _ = run(capsys, "cad", fixture_path("circle_phi1"), "--format", "json", "--compact")
    d = json.loads(out)
    assert code == 0 and len(d["cells"]) == 23 and "\n" not in out.strip()


def test_dump_projection(capsys, fixture_path, tmp_path):
    f = tmp_path / "proj.json"
    code, _, _ = run(capsys, "variety", fixture_path("circle_phi1"), "--dump-projection", f)
    assert code == 0 and json.loads(f.read_text())["operator"] == "mccallum_ec"


def test_usage_errors(capsys, fixture_path, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("vars: x, y\nphi: x^2 + + y < 0\n")
    code, _, err = run(capsys, "cad", bad)
    assert code == 2 and "error" in err
    assert run(capsys, "cad", tmp_path / "missing.txt")[0] == 2
    assert run(capsys, "layered", fixture_path("circle_phi3"))[0] == 2
    assert run(capsys, "nosuch")[0] == 2


def test_nullified_exit_3(capsys, fixture_path):
    code, out, err = run(capsys, "variety", fixture_path("nullified"))
    assert code == 3
    d = json.loads(out)
    assert d["status"] == "FAIL" and d["cell"] == [1, 2, 2] and d["dimension"] == 1
    assert "nullified" in err
    code, out, _ = run(capsys, "variety", fixture_path("nullified"), "--nullification", "include-stack")
    assert code == 0 and "cells: 21" in out


def test_bounds(capsys, tmp_path):
    code, out, _ = run(capsys, "bounds", "--kind", "pEA_size", "--kind", "heindel")
    assert code == 0 and "pEA_size: 4" in out and "pEA_degree forms: max 18, stated 9" in out
    code, out, _ = run(capsys, "bounds", "--csv", "-")
    lines = out.strip().splitlines()
    assert lines[0].startswith("n,collins_full") and len(lines) == 8
    assert run(capsys, "bounds", "--params", "n=2,m_A=1")[0] == 2


def test_plot2d(capsys, fixture_path, tmp_path):
    f = tmp_path / "p.svg"
    code, out, _ = run(capsys, "plot2d", fixture_path("circle_phi1"), "--kind", "variety", "-o", f)
    svg = f.read_text()
    assert code == 0 and svg.startswith("<svg") and svg.count("<polygon") + svg.count("<circle") == 8


def test_recursive_state(capsys, fixture_path, tmp_path):
    st = tmp_path / "state.json"
    p = fixture_path("circle_phi3")
    counts = []
    for _ in range(3):
        code, out, _ = run(capsys, "layered", p, "--recursive", "--state", st)
        assert code == 0
        counts.append(out.splitlines()[1].split(",")[0])
    assert counts == ["cells: 8", "cells: 19", "cells: 23"]


def test_verify_and_bench(capsys, fixture_path):
    code, out, _ = run(capsys, "verify", fixture_path("circle_phi1"), "--kind", "variety")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "bench", fixture_path("circle_phi1"), "--rows", "variety,lv1")
    assert code == 0 and "variety" in out.splitlines()[1]


def test_module_entry_point(fixture_path):
    r = subprocess.run([sys.executable, "-m", "subcad", "variety", str(fixture_path("circle_phi1"))],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "cells: 8" in r.stdout
