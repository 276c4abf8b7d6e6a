import json
import subprocess
import sys
from fractions import Fraction

import pytest

from ratmono.cli import main
from ratmono.field import Mobius, make_field, mobius_apply


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_order_example(capsys):
    code, doc = run_json(capsys, "order", "2x^3+3x^2+4x+5")
    assert code == 0 and doc["schema"] == 1
    assert [e["text"] for e in doc["omega_basis"]] == ["1", "2θ", "2θ^2 + 3θ"]
    assert doc["discriminant"] == "-1448"
    assert doc["discriminant_matches_min_poly"] is True
    assert doc["primitive"] == {"status": "primitive"}


def test_order_over_zs_and_coordinates(capsys):
    code, doc = run_json(capsys, "order", "x^3-x-1", "--elem", '["0", "3/2", "0"]', "--S", "2,3")
    assert code == 0
    assert doc["base"] != "Z" and doc["primitive"] == {"status": "not applicable"}
    assert doc["discriminant"] == "-23"


def test_equiv_example(capsys):
    code, doc = run_json(capsys, "equiv", "x^3-x-1", "--a", "θ", "--b", "θ²")
    assert code == 0
    reports = {r["relation"]: r for r in doc["reports"]}
    assert reports["gl2z"]["verdict"] == "yes"
    assert reports["gl2z"]["witness"]["matrix"] == [["1", "1"], ["1", "0"]]
    assert reports["z_equiv"]["verdict"] == "no"


def test_equiv_witness_reverifies_offline(capsys):
    code, doc = run_json(capsys, "equiv", "x^3-x-1", "--a", "θ", "--b", "(3/2)θ", "--S", "2,3")
    reports = {r["relation"]: r for r in doc["reports"]}
    assert reports["gl2s"]["verdict"] == "yes"
    m = reports["gl2s"]["witness"]["matrix"]
    K = make_field("x^3 - x - 1")
    C = Mobius(*(Fraction(v) for row in m for v in row))
    assert mobius_apply(C, K.gen) == K.parse_element(doc["b"]["text"])
    _, doc = run_json(capsys, "equiv", "x^3-x-1", "--a", "θ", "--b", "(3/2)θ")
    assert {r["relation"]: r["verdict"] for r in doc["reports"]}["gl2z"] == "no"


def test_classify(capsys, tmp_path):
    gens = tmp_path / "gens.jsonl"
    gens.write_text('[0, 1, 0, 0]\n[5, -1, 0, 0]\n[0, 0, 1, 0]\n', encoding="utf-8")
    code, doc = run_json(capsys, "classify", "x^4-x-1", "--gens", str(gens))
    assert code == 0
    (group,) = doc["groups"]
    assert group["classes"] == [[0, 1], [2]] and group["monogenizations"] == 2
    assert group["discriminant"] == "-283"


def test_cross_with_plot(capsys, tmp_path):
    fig = tmp_path / "eps.png"
    code, doc = run_json(capsys, "cross", "x^5-x-1", "--a", "θ", "--b", "θ^2", "--plot", str(fig))
    assert code == 0
    assert {c["status"] for c in doc["identities"]} == {"pass"}
    assert doc["unit_certificate"]["passed"] is True
    assert fig.exists() and fig.stat().st_size > 0
    assert doc["plot"] == str(fig)


def test_cross_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("MONO_DEFAULT_PREC", "128")
    _, doc = run_json(capsys, "cross", "x^4-x-1", "--a", "θ", "--b", "θ^2")
    assert doc["precision"] == 128
    _, doc = run_json(capsys, "cross", "x^4-x-1", "--a", "θ", "--b", "θ^2", "--prec", "200")
    assert doc["precision"] == 200


def test_family_commands(capsys):
    code, doc = run_json(capsys, "family", "thmc", "--r", "0", "--s", "1")
    assert code == 0 and doc["status"] == "verified" and doc["discriminant"] == "-283"
    code, doc = run_json(capsys, "family", "thmc", "--r", "1", "--s", "1")
    assert code == 0 and doc["status"] == "rejected" and "factor" in doc
    code, doc = run_json(capsys, "family", "unit", "x^3-x-1")
    assert code == 0 and doc["verified"] is True


def test_thmc_scan_json_lines(capsys):
    code, out, _ = run(capsys, "family", "thmc-scan", "--range", "3")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(lines) == 50
    assert lines[-1]["summary"] == {"verified": 36, "rejected": 13, "failed": 0}


def test_family_scale(capsys):
    code, doc = run_json(capsys, "family", "scale", "x^3-x-1", "--p", "2", "--q", "3", "--box", "100")
    assert code == 0
    assert doc["scaled_poly"]["text"] == "8x^3 - 18x - 27"
    assert doc["discriminant"] == "-1073088" and doc["discriminant_ok"]
    search = doc["search"]
    assert "not a proof" in search["label"]
    assert ["4", "3", "1"] in search["compatible"]
    assert all(w["monogenic"] for w in search["monogenic_witnesses"])


def test_hermite(capsys):
    code, doc = run_json(capsys, "hermite", "x^5-x-1", "--a", "θ", "--b", "θ^2", "--bound", "10")
    assert code == 0 and doc["verdict"] == "yes" and doc["lambda"]["text"] == "1"
    _, doc = run_json(capsys, "hermite", "x^3-x-1", "--a", "θ", "--b", "(3/2)θ", "--bound", "2")
    assert doc["verdict"] == "inconclusive" and doc["result"] == "none-found"


@pytest.mark.parametrize("argv, error", [
    (["order", "x^4-x-2"], "reducible"),
    (["family", "scale", "x^3-x-1", "--p", "2", "--q", "2"], "ValueError"),
    (["family", "unit", "x^3-x-2"], "ValueError"),
    (["classify", "x^3-x-1", "--gens", "/nonexistent/gens.jsonl"], "FileNotFoundError"),
    (["equiv", "x^3-x-1", "--a", "θ", "--b", "2"], "NotGeneratorError"),
])
def test_domain_errors_exit_2(capsys, argv, error):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    doc = json.loads(err)
    assert doc["schema"] == 1 and doc["error"] == error


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["order"])
    assert exc.value.code == 2


def test_byte_identical_output():
    argv = [sys.executable, "-m", "ratmono.cli", "equiv", "x^4-x-1", "--a", "θ", "--b", "5-θ"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first.endswith(b"\n")


def test_witnesses_reproduce_mobius_action(capsys):
    K = make_field("x^4 - x - 1")
    beta = mobius_apply(Mobius(3, 1, 5, 2), K.gen)
    coords = json.dumps([str(c) for c in beta.coords])
    _, doc = run_json(capsys, "equiv", "x^4-x-1", "--a", "θ", "--b", coords)
    m = {r["relation"]: r for r in doc["reports"]}["gl2z"]["witness"]["matrix"]
    assert mobius_apply(Mobius(*(Fraction(v) for row in m for v in row)), K.gen) == beta
