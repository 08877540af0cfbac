import json
from pathlib import Path

import pytest

from opqmod import cli
from opqmod.report import CheckResult, Report


def run(argv):
    return cli.main(argv)


def test_verify_liealg_passes_and_writes_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run(["verify", "--p", "2", "--q", "2", "--suite", "liealg", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"config", "checks", "summary"}
    assert payload["summary"]["fail"] == 0
    assert payload["summary"]["total"] == payload["summary"]["pass"]
    for record in payload["checks"]:
        assert set(record) == {"name", "anchor", "status", "details"}
    names = [record["name"] for record in payload["checks"]]
    assert names == sorted(names)


def test_verify_gkmod_small(tmp_path):
    out = tmp_path / "report.json"
    code = run(
        ["verify", "--p", "3", "--q", "3", "--m", "0", "--suite", "gkmod", "--out", str(out)]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["config"]["window"] == 15
    assert payload["summary"]["fail"] == 0


def test_parity_gate_exits_2():
    assert run(["verify", "--p", "3", "--q", "4", "--suite", "module"]) == 2
    assert run(["verify", "--p", "3", "--q", "4", "--suite", "all"]) == 2
    assert run(["verify", "--p", "3", "--q", "5", "--suite", "liealg"]) == 0


def test_out_of_range_ladder_depth_exits_2():
    assert run(["verify", "--p", "4", "--q", "4", "--m", "2", "--suite", "gkmod"]) == 2
    assert run(["ktypes", "--p", "2", "--q", "2", "--m", "0"]) == 2


def test_missing_required_arguments_exit_2():
    assert run(["verify", "--q", "2"]) == 2
    assert run(["gkdim", "--p", "3", "--q", "3"]) == 2
    assert run(["verify", "--p", "3", "--q", "3", "--suite", "gkmod"]) == 2


def test_failure_exit_code_is_1(monkeypatch, tmp_path):
    def fake_suite(p, q):
        return [CheckResult("x.forced", "forced failure", "fail", "injected")]

    monkeypatch.setattr(cli, "liealg_suite", fake_suite)
    out = tmp_path / "report.json"
    code = run(["verify", "--p", "2", "--q", "2", "--suite", "liealg", "--out", str(out)])
    assert code == 1
    payload = json.loads(out.read_text())
    assert payload["summary"]["fail"] == 1


def test_report_exit_code_contract():
    passing = Report({}, [CheckResult("a", "", "pass")])
    failing = Report({}, [CheckResult("a", "", "pass"), CheckResult("b", "", "fail")])
    skipped = Report({}, [CheckResult("a", "", "inapplicable")])
    assert passing.exit_code == 0
    assert failing.exit_code == 1
    assert skipped.exit_code == 0


def test_reports_are_byte_identical_for_same_seed(tmp_path):
    args = ["verify", "--p", "2", "--q", "2", "--suite", "liealg", "--seed", "5"]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_supplies_values_and_flags_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("p=3\nq=3\nm=0\nsuite=gkmod\n# comment\nseed=1\n")
    out = tmp_path / "r.json"
    assert run(["verify", "--config", str(cfg), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["config"]["suite"] == "gkmod"
    assert run(["verify", "--config", str(cfg), "--suite", "liealg", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["config"]["suite"] == "liealg"


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("wibble=1\n")
    assert run(["verify", "--config", str(cfg), "--p", "2", "--q", "2"]) == 2


def test_ktypes_json_and_window_superset(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run(["ktypes", "--p", "14", "--q", "12", "--m", "4", "--out", str(a)]) == 0
    assert run(
        ["ktypes", "--p", "14", "--q", "12", "--m", "4", "--window", "34", "--out", str(b)]
    ) == 0
    small = json.loads(a.read_text())
    large = json.loads(b.read_text())
    keys_small = {(pt["kappa_plus"], pt["kappa_minus"]) for pt in small["points"]}
    keys_large = {(pt["kappa_plus"], pt["kappa_minus"]) for pt in large["points"]}
    assert keys_small <= keys_large
    assert ("7", "7") in keys_small
    by_key = {(pt["kappa_plus"], pt["kappa_minus"]): pt for pt in small["points"]}
    corner = by_key[("7", "11")]
    assert corner["mu"] == 0 and corner["case"] == "ii-a"
    assert corner["transitions"]["SW"]["harmonic_blocked"]


def test_ktypes_csv_and_figure(tmp_path):
    out = tmp_path / "table.csv"
    assert run(
        ["ktypes", "--p", "14", "--q", "12", "--m", "4", "--format", "csv", "--out", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("kappa_plus,kappa_minus,k,l,mu,case,NE_coefficient")
    assert len(lines) > 30
    fig = tmp_path / "fig.txt"
    assert run(
        ["ktypes", "--p", "14", "--q", "12", "--m", "4", "--format", "figure", "--out", str(fig)]
    ) == 0
    text = fig.read_text()
    assert "corner: kappa+ = p/2 = 7, kappa- = q/2 = 6" in text
    assert "line: kappa+ - kappa- = -4" in text
    assert "point kappa+=7 kappa-=11" in text


def test_gkdim_exports(tmp_path):
    out = tmp_path / "growth.json"
    assert run(["gkdim", "--p", "3", "--q", "3", "--m", "0", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["bernstein_degree"] == 8
    assert payload["gk_dimension"] == 3
    assert payload["generating_threshold"] == 3
    assert payload["table"][1] == [1, 9]
    csv_out = tmp_path / "growth.csv"
    assert run(
        ["gkdim", "--p", "4", "--q", "4", "--m", "1", "--format", "csv", "--out", str(csv_out)]
    ) == 0
    lines = csv_out.read_text().splitlines()
    assert lines[0] == "n,dim"
    assert lines[2] == "1,72"


def test_ladder_command(tmp_path):
    out = tmp_path / "ladder.txt"
    assert run(
        [
            "ladder", "--p", "4", "--q", "4", "--k", "0", "--l", "0",
            "--mu", "0", "--nu", "0", "--out", str(out),
        ]
    ) == 0
    text = out.read_text()
    assert "weight 0" in text
    assert "rho_x^0 rho_y^0 psi[2] : 1" in text
    assert "agrees (series oracle)" in text
    json_out = tmp_path / "ladder.json"
    assert run(
        [
            "ladder", "--p", "4", "--q", "4", "--k", "1", "--l", "0",
            "--mu", "1", "--nu", "1", "--format", "json", "--out", str(json_out),
        ]
    ) == 0
    payload = json.loads(json_out.read_text())
    assert payload["agrees_with_iteration"] is True
    assert payload["up_down_constants"][0] == [0, "1"]
