import json

import pytest

from diotrans.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_delta_table_json(capsys):
    code, out, _ = _run(capsys, "delta", "--dmax", "6")
    assert code == 0
    rows = json.loads(out)
    assert [r["d"] for r in rows] == [2, 3, 4, 5, 6]
    assert rows[1]["delta_num"] == 3 and rows[1]["delta_den"] == 4
    assert all(r["bounds_ok"] for r in rows)


def test_delta_table_csv(capsys):
    code, out, _ = _run(capsys, "delta", "--dmax", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "d,delta_num,delta_den,decimal,bounds_ok"


def test_usage_error_exit_1(capsys):
    code, _, err = _run(capsys, "delta", "--dmax")  # missing value
    assert code == 1 and "usage" in err.lower()
    code, _, err = _run(capsys, "estimate")  # no system source
    assert code == 1


def test_hypothesis_violation_exit_2(capsys):
    code, _, err = _run(
        capsys,
        "transfer", "lemma3d", "--preset", "plastic",
        "--v1", "1,0,0", "--v2", "0,1,0", "--h", "1/1000", "--r", "1/1000",
    )
    assert code == 2 and "hypothesis" in err.lower()


def test_budget_exceeded_exit_3(capsys):
    code, _, err = _run(
        capsys,
        "best-approx", "--preset", "golden", "--side", "dual",
        "--t-max", "10000", "--budget", "100",
    )
    assert code == 3 and "budget" in err.lower()


def test_estimate_output_parses(capsys):
    code, out, _ = _run(
        capsys, "estimate", "--preset", "golden", "--t-max", "2000"
    )
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"primal", "dual"}
    assert abs(data["primal"]["alpha_fit"] - 1.0) < 0.1


def test_theta_and_random_sources(capsys):
    code, out, _ = _run(
        capsys,
        "best-approx", "--theta", "1/3,1/5", "--n", "1", "--m", "2",
        "--t-max", "30",
    )
    assert code == 0 and '"records"' in out
    code, _, _ = _run(
        capsys, "best-approx", "--random", "7", "--n", "1", "--m", "1",
        "--t-max", "50",
    )
    assert code == 0


def test_transfer_and_verify_roundtrip(tmp_path, capsys):
    cert_file = tmp_path / "cert.json"
    code, out, _ = _run(
        capsys,
        "transfer", "mahler", "--theta", "1/2", "--n", "1", "--m", "1",
        "--X", "10", "--U", "1/10", "--output", str(cert_file),
    )
    assert code == 0
    code, out, _ = _run(capsys, "verify-certificate", str(cert_file))
    assert code == 0
    assert json.loads(out)["verified"] is True
    # tamper with the stored point and the checker must reject it
    data = json.loads(cert_file.read_text())
    data["output_point"] = [v + 99 for v in data["output_point"]]
    cert_file.write_text(json.dumps(data))
    code, out, _ = _run(capsys, "verify-certificate", str(cert_file))
    assert code == 2
    assert json.loads(out)["verified"] is False


def test_campaign_exit_codes_and_determinism(capsys):
    code, out1, _ = _run(capsys, "campaign", "--family", "uniform-bounds")
    assert code == 0
    _, out2, _ = _run(capsys, "campaign", "--family", "uniform-bounds")
    assert out1 == out2


def test_campaign_csv_details(capsys):
    code, out, _ = _run(
        capsys, "campaign", "--family", "uniform-bounds", "--format", "csv"
    )
    assert code == 0
    header = out.splitlines()[0]
    assert "classical" in header and "sharpened" in header


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "diotrans.cfg"
    cfg.write_text("dmax = 3\nformat = csv  # comment\n")
    code, out, _ = _run(capsys, "delta", "--config", str(cfg))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("d,") and len(lines) == 3  # d = 2, 3
    # explicit flag beats the config value
    code, out, _ = _run(capsys, "delta", "--config", str(cfg), "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["d"] == 2


def test_unreadable_config_is_usage_error(capsys):
    code, _, err = _run(capsys, "delta", "--config", "/nonexistent/path.cfg")
    assert code == 1
