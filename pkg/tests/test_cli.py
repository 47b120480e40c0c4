import json

from pistar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_identity(capsys):
    code, out, _ = run(capsys, "check", "--algebra", "A1", "--poly", "[x1- x2-, x3-]", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "identity"


def test_check_modes(capsys):
    assert run(capsys, "check", "--algebra", "A2", "--poly", "x1+", "--mode", "proper-central")[0] == 0
    assert run(capsys, "check", "--algebra", "A2", "--poly", "x1+")[0] == 1
    assert run(capsys, "check", "--algebra", "A1", "--poly", "[x1+,x2+]", "--mode", "central")[0] == 1


def test_check_envelope_uses_degree(capsys):
    code, out, _ = run(capsys, "check", "--algebra", "A3", "--poly", "[x1-,x2-,x1+]",
                       "--mode", "proper-central")
    assert code == 0 and out.splitlines()[0] == "proper_central"


def test_usage_errors(capsys):
    code, _, err = run(capsys, "check", "--algebra", "A1", "--poly", "[x1+,")
    assert code == 2 and "position" in err
    assert run(capsys, "check", "--algebra", "A99", "--poly", "x1+")[0] == 2
    assert run(capsys, "check", "--poly", "x1+")[0] == 2
    assert run(capsys, "check", "--algebra", "A1", "--poly", "x1+ x1+")[0] == 2
    assert run(capsys, "codim", "--algebra", "A1", "--n", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", "--algebra", "trp(1)", "--poly", "x1+")[0] == 2


def test_exponent(capsys):
    code, out, _ = run(capsys, "exponent", "--algebra", "A5")
    data = json.loads(out)
    assert code == 0 and data["exp_star"] == 3 and data["confirmed"] is True


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "show", "A9", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 8 and len(data["basis"]) == 8
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and out.split()[:2] == ["A1", "4"]


def test_algebra_file_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "catalog", "show", "A5", "--format", "json")
    path = tmp_path / "a5.json"
    path.write_text(out)
    code, out, _ = run(capsys, "check", "--algebra-file", str(path), "--poly", "[x1+,x2+][x3+,x4+][x5+,x6+]",
                       "--mode", "proper-central")
    assert code == 0


def test_codim(capsys):
    code, out, _ = run(capsys, "codim", "--algebra", "A2", "--n", "1", "--format", "json")
    assert code == 0 and json.loads(out) == {"algebra": "A2", "c_star": 2, "c_z": 1, "c_delta": 1,
                                             "mode": "exact", "n": 1}
    code, out, _ = run(capsys, "codim", "--algebra", "FplusF", "--n", "1", "--kind", "delta")
    assert out.strip() == "2"
    assert run(capsys, "codim", "--algebra", "A1", "--n", "5")[0] == 2
    assert run(capsys, "codim", "--algebra", "A1", "--n", "5", "--row-cap", "5000",
               "--mode", "modular")[0] == 0


def test_lemma(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"pattern": "inner3", "algebra": "A6",
                                "idempotents": ["e11+e66", "e22+e55", "e33+e44"],
                                "js": ["e12+e56", "e23+e45", "e36-e14"]}))
    code, out, _ = run(capsys, "lemma", "--file", str(path))
    data = json.loads(out)
    assert code == 0 and data["alpha"] == -1 and data["target"] == "A6"
    path.write_text(json.dumps({"pattern": "inner3", "algebra": "A6",
                                "idempotents": ["e11+e66", "e11+e66", "e33+e44"],
                                "js": ["e12+e56", "e23+e45", "e36-e14"]}))
    assert run(capsys, "lemma", "--file", str(path))[0] == 1


def test_verify_ledger(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "L3.1-A2,P4.8-b16", "--format", "json")
    data = json.loads(out)
    assert code == 0
    status = {r["id"]: r["status"] for r in data["results"]}
    assert status["L3.1-A2"] == "verified" and status["P4.8-b16"] == "ambiguous_resolved"
    assert run(capsys, "verify-paper", "--only", "nope")[0] == 2


def test_json_is_byte_identical(capsys):
    argv = ("check", "--algebra", "A7", "--poly", "[x1+,x2+][x3-,x4+]", "--format", "json")
    first = run(capsys, *argv, "--threads", "1")[1]
    second = run(capsys, *argv, "--threads", "4")[1]
    assert first and first == second
