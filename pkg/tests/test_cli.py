from __future__ import annotations

import json
import re
import subprocess
import sys

import pytest

from hopfrenorm.characters import character_from_json, character_to_json, unit_map
from hopfrenorm.cli import main
from hopfrenorm.fixtures import holomorphic, ladder_exponential, random_polar


def write(tmp_path, phi, name="phi.json"):
    path = tmp_path / name
    path.write_text(json.dumps(character_to_json(phi)))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_ladder_toy(tmp_path, capsys):
    phi = ladder_exponential(6)
    code, out, _ = run(capsys, "decompose", "--input", write(tmp_path, phi), "--degree", "6")
    assert code == 0
    report = json.loads(out)
    assert report["agreement"] is True and report["first_mismatch"] is None
    plus = character_from_json(report["phi_plus"])
    assert plus == unit_map(plus.H)
    minus = character_from_json(report["phi_minus"])
    assert str(minus.values[next(f for f in minus.values if f.degree == 1)]) == "-eps^-1"
    modes = {(f["mode"], f["level"]) for f in report["factors"]}
    assert ("plain", 6) in modes and ("accelerated", 3) in modes


def test_holomorphic_report_has_trivial_counterterm(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", "-i", write(tmp_path, holomorphic(4)))
    assert code == 0
    minus = character_from_json(json.loads(out)["phi_minus"])
    assert minus == unit_map(minus.H)


def test_report_roundtrip(tmp_path, capsys):
    phi = random_polar(4, 3)
    code, out, _ = run(capsys, "decompose", "-i", write(tmp_path, phi))
    report = json.loads(out)
    for key in ("phi_minus", "phi_plus"):
        parsed = character_from_json(report[key])
        assert character_to_json(parsed) == report[key]


@pytest.mark.parametrize("method", ["bogoliubov", "zassenhaus", "accelerated", "all"])
def test_methods_agree(tmp_path, capsys, method):
    path = write(tmp_path, random_polar(4, 8))
    code, out, _ = run(capsys, "decompose", "-i", path, "--method", method)
    assert code == 0
    ref = json.loads(run(capsys, "decompose", "-i", path, "--method", "bogoliubov")[1])
    assert json.loads(out)["phi_minus"] == ref["phi_minus"]


def test_table_format_and_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.txt"
    code, out, _ = run(capsys, "decompose", "-i", write(tmp_path, ladder_exponential(3)),
                       "--format", "table", "-o", str(out_path))
    assert code == 0 and out == ""
    text = out_path.read_text()
    assert "phi_minus([]) = -eps^-1" in text and "agreement: true" in text


def test_malformed_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "decompose", "-i", str(bad))[0] == 2
    bad.write_text(json.dumps({"hopf": "rooted_trees", "truncation": 2,
                               "values": {"[],[]": {"floor": 0, "cap": 3, "coeffs": {}}}}))
    assert run(capsys, "decompose", "-i", str(bad))[0] == 2
    assert run(capsys, "decompose", "-i", str(tmp_path / "missing.json"))[0] == 2


def test_pole_bound_exits_3(tmp_path, capsys):
    path = tmp_path / "deep.json"
    path.write_text(json.dumps({"hopf": "ladders", "truncation": 3, "values": {
        "[]": {"floor": -9, "cap": 4, "coeffs": {"-9": "1"}}}}))
    assert run(capsys, "decompose", "-i", str(path))[0] == 3


def test_degree_cap_exits_3(tmp_path, capsys):
    assert run(capsys, "decompose", "-i", write(tmp_path, random_polar(3, 1)), "--degree", "7")[0] == 3


def test_idempotents(capsys):
    code, out, _ = run(capsys, "idempotents", "--degree", "2")
    assert code == 0
    assert "2: 1·(2) − 1/2·(1,1)" in out.splitlines()
    code, out, _ = run(capsys, "idempotents", "--degree", "1")
    assert "1: 1·(1)" in out.splitlines()
    assert run(capsys, "idempotents", "--degree", "9")[0] == 3


def test_idempotents_series_and_json(capsys):
    code, out, _ = run(capsys, "idempotents", "-N", "3", "--series", "right")
    assert "3: 1·(3) − 1·(2,1) + 1/3·(1,1,1)" in out
    code, out, _ = run(capsys, "idempotents", "-N", "3", "--series", "dynkin")
    assert "2: 2·(2) − 1·(1,1)" in out
    assert "3: 3·Z~(3) − 2·Z~(1,2) + 2·Z~(2,1)" in out
    code, out, _ = run(capsys, "idempotents", "-N", "3", "--format", "json")
    data = json.loads(out)
    assert data["elements"][1]["element"] == {"2": "1", "1,1": "-1/2"}
    assert data["dynkin_in_right_zassenhaus_words"][1]["element"] == {"2": "2"}


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("RENORM_MAX_DEGREE", "9")
    assert run(capsys, "idempotents", "-N", "9")[0] == 0


def test_verify_rota_baxter(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rota-baxter", "--seed", "1")
    assert code == 0 and "FAIL" not in out


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--suite", "nonsense")[0] == 2


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decompose"])
    assert exc.value.code == 2


def test_beta_command(tmp_path, capsys):
    code, out, _ = run(capsys, "beta", "-i", write(tmp_path, ladder_exponential(3)))
    assert code == 0
    data = json.loads(out)
    assert data["beta"][0]["values"]["[]"]["coeffs"] == {"-1": "-1"}


def test_deterministic_output(tmp_path, capsys):
    path = write(tmp_path, random_polar(5, 21))
    first = run(capsys, "decompose", "-i", path)[1]
    second = run(capsys, "decompose", "-i", path)[1]
    assert first == second
    # a fresh interpreter (different hash seed) gives the same bytes
    proc = subprocess.run([sys.executable, "-m", "hopfrenorm", "decompose", "-i", path],
                          capture_output=True, text=True, env={"PYTHONHASHSEED": "123"})
    assert proc.returncode == 0 and proc.stdout == first


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--degree", "5", "--seed", "1")
    assert code == 0, out
    assert re.search(r"PASS: \d+/\d+ checks in [\d.]+s", out)
