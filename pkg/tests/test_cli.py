import json

from cocal.certificate import Certificate
from cocal.classify import Verdict
from cocal.cli import run


def test_classify_exists(capsys):
    assert run(["classify", "A_{4,8}+e(1,1)"]) == 0
    assert capsys.readouterr().out.startswith("Exists")


def test_classify_not_exists_json(capsys):
    assert run(["classify", "A_{4,10}+e(2)", "--json"]) == 1
    v = Verdict.from_json(json.loads(capsys.readouterr().out))
    assert not v.exists and v.obstruction == "orbit-sign"


def test_classify_explain(capsys):
    run(["classify", "A_{4,9}^{1}+r_{3,-1/3}", "--explain"])
    out = capsys.readouterr().out
    assert "NotExists" in out and "\n  " in out


def test_bad_input_exits_2(capsys):
    assert run(["classify", "nonsense"]) == 2
    assert "cocal:" in capsys.readouterr().err
    assert run(["frobnicate"]) == 2
    assert run(["verify", "/nonexistent/cert.json"]) == 2


def test_construct_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert run(["construct", "A_{4,12}+r_{3,1}", "-o", str(out)]) == 0
    cert = Certificate.loads(out.read_text())
    assert cert.route == "listed-example"
    assert run(["verify", str(out)]) == 0
    assert capsys.readouterr().out.splitlines()[-1].startswith("valid")


def test_construct_route_flag(capsys):
    assert run(["construct", "A_{4,9}^{1/2}+r'_{3,1}", "--route"]) == 0
    assert capsys.readouterr().out.strip() == "h3-kernel-generic"


def test_classify_writes_certificate(tmp_path):
    out = tmp_path / "c.json"
    assert run(["classify", "A_{5,7}^{-1/2,-1/4,-1/4}+r2", "--certificate", str(out)]) == 0
    assert run(["verify", str(out)]) == 0


def test_tampered_certificate_is_invalid(tmp_path, capsys):
    out = tmp_path / "cert.json"
    run(["construct", "A_{4,12}+r_{3,1}", "-o", str(out)])
    data = json.loads(out.read_text())
    data["psi"]["terms"][0]["coeff"] = "17"
    out.write_text(json.dumps(data))
    capsys.readouterr()
    assert run(["verify", str(out), "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert not report["ok"] and report["reasons"]


def test_cohomology(capsys):
    assert run(["cohomology", "A_{4,8}"]) == 0
    assert capsys.readouterr().out.strip() == "(1,0,1,1)"
    assert run(["cohomology", "r2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["betti"] == [1, 0]


def test_catalog_list(capsys):
    assert run(["catalog", "list", "--dim", "3", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 10 and all("fixtures" in r for r in rows)


def test_sweep_with_params_file(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"A_{4,9}": [["1"], ["-1/3"]], "r_{3,mu}": [["-1/3"], ["-1/2"]]}))
    assert run(["sweep", "--params", str(grid), "--json", "--no-certificates"]) == 0
    data = json.loads(capsys.readouterr().out)
    names = {tuple(r["pair"]) for r in data["rows"]}
    assert ("A_{4,9}^{1}", "r_{3,-1/3}") in names
    assert ("A_{4,9}^{1/2}", "r_{3,1/2}") not in names
