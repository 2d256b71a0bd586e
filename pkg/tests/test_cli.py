import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from divfan import io
from divfan.base import BaseVariety
from divfan.cli import main
from divfan.constructions import danilov_gizatullin
from divfan.downgrade import DowngradeData, downgrade_cone
from divfan.geom import Cone, interval
from divfan.ppdiv import PPDivisor


@pytest.fixture()
def dg_doc(tmp_path, dg_gens):
    path = tmp_path / "dg.json"
    io.save_document(io.FanDocument(dg_gens[0].base, list(dg_gens)), path)
    return str(path)


@pytest.fixture()
def chart_doc(tmp_path, nonseparated_chart_fan):
    gens = list(nonseparated_chart_fan.generators)
    path = tmp_path / "charts.json"
    io.save_document(io.FanDocument(gens[0].base, gens), path)
    return str(path)


@pytest.fixture()
def bad_doc(tmp_path):
    base = BaseVariety.proj_space(2, [("D", 1), ("E", 1)])
    zero = Cone.zero(1)
    g1 = PPDivisor(base, zero, {"D": interval(-1, 0), "E": interval(0, 1)})
    g2 = PPDivisor(base, zero, {"D": interval(0, 1), "E": interval(-1, 0)})
    path = tmp_path / "bad.json"
    io.save_document(io.FanDocument(base, [g1, g2]), path)
    return str(path)


def test_console_script():
    out = subprocess.run([sys.executable, "-c",
                          "from divfan.cli import main; import sys; "
                          "sys.exit(main(['--json', 'check', '/nonexistent']))"],
                         capture_output=True, text=True)
    assert out.returncode == 2
    assert "cannot read" in out.stderr
    help_out = subprocess.run(["divfan", "--help"], capture_output=True, text=True)
    assert help_out.returncode == 0
    for word in ("check", "eval", "slice", "render", "build", "downgrade"):
        assert word in help_out.stdout


def test_check_human(dg_doc, capsys):
    assert main(["check", dg_doc]) == 0
    out = capsys.readouterr().out
    assert "valid divisorial fan: 7 elements from 3 generators" in out
    assert "coherent: yes" in out
    assert "separated: SEPARATED (curve base)" in out
    assert "complete: COMPLETE" in out


def test_check_json(dg_doc, capsys):
    assert main(["--json", "check", dg_doc]) == 0
    got = json.loads(capsys.readouterr().out)
    assert got["valid"] is True
    assert got["elements"] == 7 and got["generators"] == 3
    assert got["coherent"] == "coherent"
    assert len(got["certificates"]) == len(got["certificates"])
    assert all(len(c["pair"]) == 2 for c in got["certificates"])
    assert got["separated"] == "SEPARATED"
    assert got["complete"] == "COMPLETE"


def test_check_json_flag_after_subcommand(dg_doc, capsys):
    assert main(["check", dg_doc, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["valid"] is True


def test_check_rejects(bad_doc, capsys):
    assert main(["check", bad_doc]) == 1
    assert "not a divisorial fan" in capsys.readouterr().out
    assert main(["--json", "check", bad_doc]) == 1
    got = json.loads(capsys.readouterr().out)
    assert got["valid"] is False
    assert got["complex_failures"] and got["face_failures"]


def test_check_not_coherent_witness(chart_doc, capsys):
    assert main(["check", chart_doc]) == 0
    out = capsys.readouterr().out
    assert "coherent: no (witness pair" in out
    assert "separated: NOT_SEPARATED" in out
    assert "witness mu = D[0,1]=1, D[1,0]=2" in out


def test_eval(dg_doc, capsys):
    assert main(["eval", dg_doc, "--u", "1"]) == 0
    assert capsys.readouterr().out == "p0: -1/2\n"
    assert main(["--json", "eval", dg_doc, "--u=-1"]) == 0
    assert json.loads(capsys.readouterr().out) == {"p1": {"num": -1, "den": 3}}
    assert main(["eval", dg_doc, "--u", "0"]) == 0
    assert capsys.readouterr().out == "0\n"


def test_eval_errors(dg_doc, capsys):
    # u outside the dual tail cone of the chosen generator
    assert main(["eval", dg_doc, "--divisor", "1", "--u=-1"]) == 2
    assert "outside the dual" in capsys.readouterr().err
    assert main(["eval", dg_doc, "--divisor", "9", "--u", "1"]) == 2
    assert main(["eval", dg_doc, "--u", "1,2"]) == 2
    assert main(["eval", dg_doc, "--u", "x"]) == 2


def test_slice_json(dg_doc, capsys):
    assert main(["--json", "slice", dg_doc, "--prime", "p0"]) == 0
    got = json.loads(capsys.readouterr().out)
    assert len(got) == 1
    entry = got[0]
    assert entry["slice"] == "slice at p0"
    assert entry["is_complex"] is True and entry["covers"] is True
    assert len(entry["cells"]) == 5
    assert entry["mu"] == {"p0": {"num": 1, "den": 1}}


def test_slice_human_default(dg_doc, capsys):
    assert main(["slice", dg_doc]) == 0
    out = capsys.readouterr().out
    assert "tail fan" in out
    for name in ("p0", "p1", "inf"):
        assert f"slice at {name}" in out
    assert "complex: True, covers: True" in out
    assert "conv{" in out


def test_slice_mu_brackets(chart_doc, capsys):
    assert main(["--json", "slice", chart_doc,
                 "--mu", "D[1,0]=2,D[0,1]=1"]) == 0
    got = json.loads(capsys.readouterr().out)
    assert got[0]["mu"] == {"D[0,1]": {"num": 1, "den": 1},
                            "D[1,0]": {"num": 2, "den": 1}}
    assert got[0]["covers"] is False


def test_slice_errors(dg_doc, capsys):
    assert main(["slice", dg_doc, "--prime", "nope"]) == 2
    assert main(["slice", dg_doc, "--mu", "p0"]) == 2
    assert main(["slice", dg_doc, "--mu", "p0=[1"]) == 2


def test_render_cli(dg_doc, tmp_path, capsys):
    out = tmp_path / "dg.svg"
    assert main(["render", dg_doc, "--prime", "p0", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("<svg ")
    assert main(["render", dg_doc, "--tail"]) == 0
    assert capsys.readouterr().out.startswith("<svg ")


def test_build_dg(tmp_path, capsys):
    out = tmp_path / "built.json"
    assert main(["build", "dg", "--r", "2", "--s", "3", "--out", str(out)]) == 0
    doc = io.load_document(out)
    assert doc.generators == danilov_gizatullin(2, 3)
    assert main(["check", str(out)]) == 0
    capsys.readouterr()
    assert main(["build", "dg", "--r", "3/2", "--s", "1"]) == 2
    assert "positive integers" in capsys.readouterr().err


def test_build_cotangent(tmp_path, capsys):
    out = tmp_path / "cot.json"
    assert main(["build", "cotangent", "--fan", "p2", "--out", str(out)]) == 0
    doc = io.load_document(out)
    assert len(doc.generators) == 6
    assert main(["build", "cotangent", "--fan", "p1"]) == 2
    assert "rank at least 2" in capsys.readouterr().err
    assert main(["build", "cotangent", "--fan", "nope"]) == 2


def test_build_cotangent_fan_file(tmp_path):
    fan_file = tmp_path / "fan.json"
    fan_file.write_text(json.dumps({
        "max_cones": [[[1, 0], [0, 1]], [[0, 1], [-1, 0]],
                      [[-1, 0], [0, -1]], [[0, -1], [1, 0]]]}))
    out = tmp_path / "cot.json"
    assert main(["build", "cotangent", "--fan", str(fan_file),
                 "--out", str(out)]) == 0
    assert len(io.load_document(out).generators) == 8


def test_build_rank2(tmp_path, capsys):
    data = tmp_path / "charts.json"
    data.write_text(json.dumps({"charts": [
        {"cone": [[1]], "u1": [0], "u2": [0]},
        {"cone": [[-1]], "u1": [0], "u2": [-1]},
    ]}))
    out = tmp_path / "r2.json"
    assert main(["build", "rank2", "--data", str(data), "--out", str(out)]) == 0
    doc = io.load_document(out)
    assert len(doc.generators) == 4
    assert doc.base.prime_names == ("P1", "P2")
    data.write_text(json.dumps({"nope": 1}))
    assert main(["build", "rank2", "--data", str(data)]) == 2
    assert "charts" in capsys.readouterr().err


def test_downgrade_cli(capsys):
    assert main(["downgrade", "--cone", "1,0;0,1", "--deg", "1,1"]) == 0
    got = io.divisor_from_json(json.loads(capsys.readouterr().out))
    want = downgrade_cone(Cone.from_rays([[1, 0], [0, 1]]),
                          DowngradeData.from_deg([[1, 1]]))
    assert got == want
    assert main(["downgrade", "--cone", "1,0;0,1", "--deg", "1,1",
                 "--section", "1;0"]) == 0
    capsys.readouterr()
    assert main(["downgrade", "--cone", "1,0;0,1", "--deg", "2,0"]) == 2
    assert "surjective" in capsys.readouterr().err
    assert main(["downgrade", "--cone", "1,0;0", "--deg", "1,1"]) == 2
    assert main(["downgrade", "--cone", "1,0;0,1", "--deg", "1,1/2"]) == 2


def test_malformed_document(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["check", str(path)]) == 2
    assert "malformed" in capsys.readouterr().err
    path.write_text(json.dumps({"format_version": 3,
                                "base": {"kind": "A1", "primes": []}}))
    assert main(["check", str(path)]) == 2
    assert "unsupported format_version" in capsys.readouterr().err


def test_empty_document(tmp_path, capsys):
    path = tmp_path / "empty.json"
    io.save_document(io.FanDocument(BaseVariety.proj_line(["a", "b"]), []), path)
    assert main(["eval", str(path), "--u", "1"]) == 2
    assert main(["slice", str(path)]) == 2
    assert "no generators" in capsys.readouterr().err
