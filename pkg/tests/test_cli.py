import json
import subprocess
import sys

import pytest

from lieform import checks
from lieform.cli import main
from lieform.constructions import simple3


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def s_json(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(simple3().dumps())
    return p


def test_build_emits_a_table_that_validates(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"construct": "extend", "U": [0, 1]}))
    code, out, _ = run(capsys, "build", str(spec))
    assert code == 0
    table = json.loads(out)
    assert table["dim"] == 15 and table["provenance"]["construct"] == "extend"
    alg = tmp_path / "alg.json"
    alg.write_text(out)
    code, out, _ = run(capsys, "validate", str(alg))
    assert code == 0 and json.loads(out)["payload"]["valid"]


def test_cohomology_of_s(s_json, capsys):
    code, out, _ = run(capsys, "cohomology", str(s_json), "--module", "adjoint", "--degree", "2")
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["dimH"] == 2 and payload["by_weight"] == {"-2": 1, "2": 1}
    code, out, _ = run(capsys, "cohomology", str(s_json), "--module", "adjoint", "--degree", "2", "--positive")
    assert json.loads(out)["payload"]["dimH"] == 1
    code, out, _ = run(capsys, "cohomology", str(s_json), "--module", "adjoint", "--degree", "2", "--weight", "-2")
    assert json.loads(out)["payload"]["dimH"] == 1


def test_payload_is_deterministic(s_json, capsys):
    outs = []
    for _ in range(2):
        run(capsys, "cohomology", str(s_json), "--module", "adjoint", "--degree", "1")
        code, out, _ = run(capsys, "invariants", str(s_json), "--deep")
        outs.append(json.loads(out))
    assert json.dumps(outs[0]["payload"], sort_keys=True) == json.dumps(outs[1]["payload"], sort_keys=True)
    assert "timestamp" in outs[0]["meta"] and "timestamp" not in json.dumps(outs[0]["payload"])


def test_corrupted_table_exits_one_with_witness(tmp_path, capsys):
    data = simple3().to_json()
    data["products"][0]["out"] = [0, 2]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", str(p))
    payload = json.loads(out)["payload"]
    assert code == 1 and not payload["valid"]
    assert all(len(v["witness"]) >= 2 for v in payload["violations"])


def test_malformed_json_exits_two_with_location(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text('{"dim": 3,\n "kind": }')
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["cohomology", "MISSING.json", "--module", "adjoint", "--degree", "1"],
        ["frobnicate"],
        ["cohomology", "S", "--module", "wrong", "--degree", "1"],
    ],
)
def test_usage_errors_exit_two(argv, capsys, s_json):
    argv = [str(s_json) if a == "S" else a for a in argv]
    assert main(argv) == 2


def test_schema_errors_exit_two(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"dim": 2, "kind": "lie", "products": [{"i": 0, "j": 1, "out": [7]}]}))
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2 and "products[0]" in err


def test_dimension_cap_exits_two(tmp_path, capsys):
    spec = tmp_path / "big.json"
    spec.write_text(
        json.dumps(
            {
                "construct": "current",
                "L": {"construct": "zassenhaus_derived", "n": 2},
                "A": {"construct": "divided_powers", "n": 3},
            }
        )
    )
    _, out, _ = run(capsys, "build", str(spec))
    alg = tmp_path / "big_alg.json"
    alg.write_text(out)
    code, _, err = run(capsys, "invariants", str(alg), "--deep")
    assert code == 2 and "16" in err


def test_degree_cap_exits_two(s_json, capsys):
    code, _, err = run(capsys, "cohomology", str(s_json), "--module", "trivial", "--degree", "5")
    assert code == 2 and "0..3" in err


def test_deform_commands(tmp_path, capsys):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"family": "extension", "U": [0, 1], "v": [0], "xi": [3]}))
    code, out, _ = run(capsys, "deform", str(p))
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["jacobi_ok"] is False and payload["constraints_ok"] is False
    p.write_text(json.dumps({"family": "fifteen_dim", "beta": 1, "delta": 0}))
    code, out, _ = run(capsys, "deform", str(p))
    payload = json.loads(out)["payload"]
    assert payload["jacobi_ok"] and payload["matches_table"]
    p.write_text(json.dumps({"family": "extension", "U": [], "enumerate": True, "w_all": True}))
    code, out, _ = run(capsys, "deform", str(p))
    payload = json.loads(out)["payload"]
    assert payload["tuples"] == 32 and payload["disagreements"] == 0
    p.write_text(json.dumps({"family": "extension", "U": [0, 1], "v": [9]}))
    assert main(["deform", str(p)]) == 2


def test_verify_filter_selects_four_checks(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-paper", "--filter", "lemma3.3*", "--report", str(report))
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["total"] == 4 and payload["passed"] == 4
    assert [r["name"] for r in payload["results"]] == [f"lemma3.3.h{n}" for n in range(4)]
    assert json.loads(report.read_text())["payload"] == payload


def test_verify_reports_failures_with_exit_one(tmp_path, capsys):
    fixture = [c for c in checks.load_fixture() if c["name"] == "lemma3.3.h1"]
    fixture[0] = dict(fixture[0], expected=3)
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"checks": fixture}))
    code, out, _ = run(capsys, "verify-paper", "--fixtures", str(p))
    assert code == 1 and json.loads(out)["payload"]["results"][0]["computed"] == 2


def test_verify_parallel_run_matches_serial(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify-paper", "--filter", "sec7.b0d0.h*")
    serial = json.loads(out)["payload"]
    monkeypatch.setenv("LIEFORM_THREADS", "2")
    code, out, _ = run(capsys, "verify-paper", "--filter", "sec7.b0d0.h*")
    assert json.loads(out)["payload"] == serial


def test_broken_fixture_exits_two(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text("{not json")
    assert main(["verify-paper", "--fixtures", str(p)]) == 2


def test_pretty_output(s_json, capsys):
    code, out, _ = run(capsys, "cohomology", str(s_json), "--module", "adjoint", "--degree", "2", "--pretty")
    assert "dimH" in out and not out.lstrip().startswith("{")


def test_console_script_entry_point(s_json):
    proc = subprocess.run(
        [sys.executable, "-m", "lieform.cli", "cohomology", str(s_json), "--module", "adjoint", "--degree", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["payload"]["dimH"] == 2
