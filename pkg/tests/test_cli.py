import json
import subprocess
import sys

import pytest

from puncodes.cli import load_manifest, main
from puncodes.gf2m import is_irreducible


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


def test_list_functions(capsys):
    code, data, _ = run_json(capsys, "list-functions", "--m", "9")
    assert code == 0
    assert "gold" in data["families"] and "T5.3" in data["cases"]
    assert data["ab_monomial_exponents"][:3] == [3, 5, 13]
    assert data["pairsum_exponents"] == [9, 65, 72]
    code, out, _ = run(capsys, "list-functions", "--format", "table")
    assert code == 0 and "R5-RM" in out


def test_spectrum_even_m_refuses_ab_but_decides_apn(capsys):
    code, data, _ = run_json(capsys, "spectrum", "--m", "6", "--family", "gold", "--param", "h=1")
    assert code == 0
    assert data["ab"]["verdict"] is None and "odd" in data["ab"]["refused"]
    assert data["apn"] is True
    assert sum(data["walsh_values"].values()) == 63 * 64  # a != 0, every b
    assert data["differential_uniformity"] == 2


def test_spectrum_odd_m(capsys):
    code, data, _ = run_json(capsys, "spectrum", "--m", "5", "--family", "monomial", "--param", "d=7")
    assert data["ab"]["verdict"] is True and data["apn"] is True
    code, data, _ = run_json(capsys, "spectrum", "--m", "5", "--family", "monomial", "--param", "d=30")
    assert data["ab"]["verdict"] is False


@pytest.mark.parametrize("argv,nkd", [
    (["--m", "7", "--family", "gold", "--param", "h=1", "--param", "c=1", "--nu", "1"], [56, 14, 20]),
    (["--m", "6", "--family", "gold", "--param", "h=1", "--recipe", "trace-support"], [32, 12, 8]),
    (["--m", "6", "--family", "cyclopower", "--param", "d=3", "--recipe", "cyclotomic", "--t", "3"],
     [21, 9, 8]),
    (["--m", "9", "--family", "pairsum", "--param", "t1=9", "--param", "t2=65",
      "--recipe", "cyclotomic", "--t", "1"], None),
])
def test_build_parameters(capsys, argv, nkd):
    code, data, _ = run_json(capsys, "build", *argv)
    assert code == 0
    if nkd:
        assert [data["n"], data["k"], data["d"]] == nkd
    assert sum(data["distribution"].values()) == 2 ** data["k"]


def test_build_examples_from_the_docs(capsys):
    _, data, _ = run_json(capsys, "build", "--m", "6", "--family", "gold", "--param", "h=2",
                          "--recipe", "trace-support")
    assert [data["n"], data["k"], data["d"]] == [32, 12, 8]
    _, data, _ = run_json(capsys, "build", "--m", "9", "--family", "pairsum", "--param", "t1=9",
                          "--param", "t2=65", "--recipe", "trace-support")
    assert [data["n"], data["k"], data["d"]] == [256, 15, 96]
    assert data["dual"]["d"] == 4 and data["bounds"]["dual_sphere_packing_optimal_even_step"] is True


def test_build_csv_and_table(capsys):
    argv = ["build", "--m", "5", "--family", "gold", "--param", "h=1"]
    code, out, _ = run(capsys, *argv, "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "weight,count"
    code, out, _ = run(capsys, *argv, "--format", "table")
    assert "code [" in out and "dual [" in out


def test_verify_exit_codes(capsys):
    code, data, _ = run_json(capsys, "verify", "T4.2c3", "--param", "m=8", "--param", "k=4")
    assert code == 0 and data["verdict"] == "pass"
    assert [data["enumerated"]["n"], data["enumerated"]["k"], data["enumerated"]["d"]] == [128, 12, 56]
    code, data, err = run_json(capsys, "verify", "T4.2c3", "--param", "m=8", "--param", "k=3")
    assert code == 2 and data is None
    assert json.loads(err)["error"]["type"] == "HypothesisError"
    code, _, err = run(capsys, "verify", "T5.3", "--param", "m=10", "--param", "k=1",
                       "--guard-k", "10", "--format", "table")
    assert code == 2 and err.startswith("puncodes: error:")


def test_verify_lambda_and_t_flags(capsys):
    code, data, _ = run_json(capsys, "verify", "T3.3nu0", "--m", "7", "--lambda", "1")
    assert code == 0 and data["params"]["lambda"] == 1 and data["enumerated"]["n"] == 63
    code, data, _ = run_json(capsys, "verify", "T5.2div3", "--m", "6", "--t", "3")
    assert code == 0 and data["enumerated"]["n"] == 21


def test_verify_non_strict_reports_with_notes(capsys):
    code, data, _ = run_json(capsys, "verify", "C3.6nu0", "--m", "7", "--param", "d=7", "--no-strict")
    assert code in (0, 1)
    assert any("not almost bent" in n for n in data["notes"])


def test_no_timestamp_output_is_byte_identical(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["verify-all", "--m-max", "7", "--no-timestamp", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"runtime_ms" not in outs[0]


def test_verify_all_subset_and_report_rerender(capsys, tmp_path):
    path = tmp_path / "all.json"
    assert main(["verify-all", "--m-max", "6", "--out", str(path), "--format", "json"]) == 0
    data = json.loads(path.read_text())
    manifest = load_manifest(None)
    expected = [c for c in manifest["cases"] if c["params"]["m"] <= 6]
    assert data["manifest_version"] == manifest["version"]
    assert data["summary"] == {"total": len(expected), "passed": len(expected), "failed": 0, "refused": 0}
    assert [c["theorem_id"] for c in data["cases"]] == [c["theorem_id"] for c in expected]
    code, out, _ = run(capsys, "report", str(path), "--format", "table")
    assert code == 0 and f"{len(expected)}/{len(expected)} passed" in out
    code, out, _ = run(capsys, "report", str(path), "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "theorem_id,params,n,k,d,dual_d,verdict"
    assert len(lines) == len(expected) + 1 and all(line.endswith(",pass") for line in lines[1:])


def test_verify_all_jobs_parity(tmp_path):
    paths = [tmp_path / "serial.json", tmp_path / "parallel.json"]
    for jobs, path in zip(("1", "3"), paths):
        assert main(["verify-all", "--m-max", "8", "--no-timestamp", "--jobs", jobs, "--out", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_all_records_refusals(capsys, tmp_path):
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps({"version": 7, "cases": [
        {"theorem_id": "T4.6", "params": {"m": 5, "k": 1}},
        {"theorem_id": "T4.6", "params": {"m": 6, "k": 3}},
    ]}))
    code, data, _ = run_json(capsys, "verify-all", "--manifest", str(manifest), "--no-timestamp")
    assert code == 1
    assert data["summary"] == {"total": 2, "passed": 1, "failed": 0, "refused": 1}
    assert data["cases"][1]["verdict"] == "refused" and data["cases"][1]["error"]["message"]


def test_bad_field_config_is_a_usage_error(capsys, tmp_path):
    cfg = tmp_path / "fields.ini"
    cfg.write_text("[moduli]\n5 = 0x26\n")
    assert not is_irreducible(0x26)
    code, _, err = run_json(capsys, "verify-all", "--m-max", "5", "--field-config", str(cfg))
    assert code == 2 and json.loads(err)["error"]["type"] == "FieldError"


def test_field_config_changes_realization_not_result(capsys, tmp_path):
    cfg = tmp_path / "fields.ini"
    cfg.write_text("[moduli]\n7 = 0x89\n")
    code, data, _ = run_json(capsys, "verify", "C3.6nu1", "--m", "7", "--field-config", str(cfg))
    assert code == 0 and data["field"]["modulus"] == 0x89


@pytest.mark.parametrize("argv", [
    ["build", "--family", "gold"],
    ["build", "--m", "5"],
    ["build", "--m", "5", "--family", "nosuch"],
    ["build", "--m", "5", "--family", "gold", "--param", "oops"],
    ["verify", "T4.6"],
    ["verify", "T9.9", "--m", "5"],
    ["verify-all", "--jobs", "0"],
    ["report", "/nonexistent.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv, "--format", "json")
    assert code == 2
    assert "message" in json.loads(err)["error"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "puncodes", "list-functions", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "families" in json.loads(proc.stdout)
