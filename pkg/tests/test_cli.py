from __future__ import annotations

import json
import subprocess
import sys

import pytest

from koszulkit.cli import main
from koszulkit.corpus import structured_posets
from koszulkit.poset import boolean, parse, sphere_cross_interval_hat


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, p in [("b3", boolean(3)), ("s2xi", sphere_cross_interval_hat()),
                    ("nc", next(e.poset for e in structured_posets()
                                if e.name == "disconnected_interval"))]:
        path = tmp_path / f"{name}.txt"
        path.write_text(p.to_text())
        out[name] = str(path)
    bad = tmp_path / "bad.txt"
    bad.write_text("a > b\nb > a\n")
    out["bad"] = str(bad)
    nonuniform = tmp_path / "nonuniform.txt"
    nonuniform.write_text("a > *\nb > *\nc > *\nd > *\nx > a\nx > b\ny > c\ny > d\nz > x\nz > y\n")
    out["nonuniform"] = str(nonuniform)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_koszul_text_output(files, capsys):
    code, out = run(capsys, "koszul", files["b3"], "--field", "Q")
    assert code == 0
    assert out.splitlines()[0] == "Koszul over Q: yes (CM ✓, recursion ✓)"


def test_s2xi_reports(files, capsys):
    code, out = run(capsys, "nkd", files["s2xi"])
    assert code == 0 and out.splitlines()[0] == "NKD = -t^5; bad pairs: (X,5)"
    code, out = run(capsys, "cm", files["s2xi"])
    assert "interval (*,X) has reduced cohomology in degree 2" in out


def test_assert_flag_sets_the_exit_code(files, capsys):
    assert run(capsys, "koszul", files["b3"], "--assert")[0] == 0
    assert run(capsys, "koszul", files["nc"], "--field", "F2", "--assert")[0] == 1
    assert run(capsys, "cm", files["nc"], "--assert")[0] == 1


def test_validate(files, capsys):
    code, out = run(capsys, "validate", files["b3"])
    assert code == 0 and out.startswith("valid: boolean3")
    assert run(capsys, "validate", files["bad"])[0] == 1


def test_input_errors_exit_2(files, capsys, tmp_path):
    assert run(capsys, "info", files["bad"])[0] == 2
    assert run(capsys, "info", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "nkd", files["nonuniform"])[0] == 2


def test_resource_guards_exit_3(files, capsys):
    assert run(capsys, "order", files["b3"], "--max-cells", "5")[0] == 3
    assert run(capsys, "koszul", files["s2xi"], "--field", "F2", "--ext", "2")[0] == 3


def test_nonuniform_koszul_verdict(files, capsys):
    code, out = run(capsys, "koszul", files["nonuniform"], "--field", "Q")
    assert code == 0 and "not uniform" in out


def test_json_is_deterministic(files, capsys):
    outs = []
    for _ in range(2):
        code, out = run(capsys, "koszul", files["nc"], "--json", "--field", "F2", "--ext", "3")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["schema"] == 1 and data["command"] == "koszul" and "timing" not in data
    res = data["results"][0]
    assert res["koszul_via_cm"] is False and res["koszul_via_recursion"] is False


def test_json_timing_only_on_request(files, capsys):
    _, out = run(capsys, "info", files["b3"], "--json", "--timing")
    assert "timing" in json.loads(out)


def test_hilbert_json_round_trips_series(files, capsys):
    _, out = run(capsys, "hilbert", files["b3"], "--json")
    data = json.loads(out)
    res = data["results"][0]
    assert res["direct"]["coefficients"] == [1, 7, 5, 1]
    assert res["hs2_matches_direct"] and res["hs1_inverse_matches_dual"] and res["product_is_one"]


def test_generate_and_wedge(tmp_path, capsys):
    a, b, w = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "w.txt"
    assert run(capsys, "generate", "boolean", "2", "-o", str(a))[0] == 0
    assert run(capsys, "generate", "random_ranked", "2", "2", "1", "--seed", "4", "--uniform",
               "-o", str(b))[0] == 0
    assert run(capsys, "wedge", str(a), str(b), "--at", "a", "v1_0", "-o", str(w))[0] == 0
    p = parse(w.read_text())
    assert len(p) == len(parse(a.read_text())) + len(parse(b.read_text())) - 2


def test_generate_is_deterministic(capsys):
    outs = [run(capsys, "generate", "random_ranked", "3", "3", "--seed", "9")[1] for _ in range(2)]
    assert outs[0] == outs[1] and outs[0].strip()


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "koszulkit", "info", files["b3"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "uniform: yes" in res.stdout
