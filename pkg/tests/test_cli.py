"""Command-line surface: exit codes, report text, CSV/JSONL schemas,
environment seeding, and byte-level determinism."""

import json

from lynesslab.cli import main


def _lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


def test_verify_range_passes(capsys):
    code = main(["verify", "--k-range", "3..8", "--a", "1", "--trials", "100", "--seed", "42"])
    out = capsys.readouterr().out
    assert code == 0
    assert "summary:" in out
    assert "FAILED" not in out


def test_verify_reports_parity_gaps(capsys):
    code = main(["verify", "--k", "4", "--a", "7/3", "--trials", "10"])
    out = capsys.readouterr().out
    assert code == 0
    assert "V3 invariance: n/a (even k)" in out


def test_verify_rejects_low_dimension(capsys):
    code = main(["verify", "--k", "2"])
    err = capsys.readouterr().err
    assert code == 2
    assert "k >= 3" in err


def test_verify_rejects_bad_inputs(capsys):
    assert main(["verify", "--k", "3", "--a", "1/0"]) == 2
    assert main(["verify", "--k", "3", "--a", "-1"]) == 2
    assert main(["verify", "--k-range", "8..3"]) == 2
    assert main(["verify", "--k-range", "abc"]) == 2
    assert main(["verify", "--k", "3", "--trials", "0"]) == 2
    capsys.readouterr()


def test_verify_json_report(tmp_path, capsys):
    report = tmp_path / "report.json"
    code = main(["verify", "--k", "3", "--trials", "5", "--json", str(report)])
    capsys.readouterr()
    assert code == 0
    data = json.loads(report.read_text())
    assert data["ok"] is True
    assert data["ks"] == [3]
    assert any(s["name"] == "V1 invariance" and s["status"] == "ok" for s in data["suites"])


def test_orbit_exact_csv_holds_levels_constant(capsys):
    code = main(["orbit", "--k", "3", "--a", "1", "--x0", "1,1,3", "--steps", "10", "--exact"])
    out = capsys.readouterr().out
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "n,x1,x2,x3,V1,V2,V3,signZ"
    assert len(rows) == 12
    v1_col = [r.split(",")[4] for r in rows[1:]]
    assert v1_col == ["32"] * 11
    signs = [r.split(",")[7] for r in rows[1:]]
    assert signs == ["1", "-1"] * 5 + ["1"]


def test_orbit_projection_and_jsonl(capsys):
    code = main(
        ["orbit", "--k", "5", "--a", "1", "--x0", "1,2,3,4,5", "--steps", "2",
         "--proj", "1,3,5", "--format", "jsonl", "--exact"]
    )
    out = capsys.readouterr().out
    assert code == 0
    objs = [json.loads(line) for line in out.splitlines()]
    assert len(objs) == 3
    assert list(objs[0]) == ["n", "x1", "x3", "x5", "V1", "V2", "V3", "signZ"]
    assert objs[0]["V1"] == "96"


def test_orbit_rejects_bad_requests(capsys):
    assert main(["orbit", "--k", "3", "--x0", "1,2"]) == 2
    assert main(["orbit", "--k", "3", "--x0", "1,0,3"]) == 2
    assert main(["orbit", "--k", "3", "--x0", "1,1,3", "--steps", "-1"]) == 2
    assert main(["orbit", "--k", "3", "--x0", "1,1,3", "--proj", "1,2"]) == 2
    assert main(["orbit", "--k", "3", "--x0", "1,1,3", "--proj", "1,2,2"]) == 2
    assert main(["orbit", "--k", "3", "--x0", "1,1,3", "--proj", "1,2,9"]) == 2
    capsys.readouterr()


def test_flow_prints_a_drift_summary(capsys):
    code = main(["flow", "--k", "4", "--a", "4", "--x0", "1,2,3,4", "--dt", "1e-3", "--t-max", "2"])
    out = capsys.readouterr().out
    assert code == 0
    drift_lines = [line for line in out.splitlines() if line.startswith("relative drift")]
    assert len(drift_lines) == 2
    worst = max(float(line.rsplit("=", 1)[1]) for line in drift_lines)
    assert worst <= 1e-6


def test_flow_writes_the_sampled_trace(tmp_path, capsys):
    out_file = tmp_path / "trace.csv"
    code = main(
        ["flow", "--k", "4", "--a", "4", "--x0", "1,2,3,4", "--dt", "1e-2",
         "--t-max", "1", "--out", str(out_file)]
    )
    capsys.readouterr()
    assert code == 0
    rows = _lines(out_file)
    assert rows[0] == "t,x1,x2,x3,x4,V1,V2"
    assert len(rows) == 102
    assert rows[1].startswith("0.0,1.0,2.0,3.0,4.0,")


def test_reduce_replays_the_double_step(capsys):
    code = main(["reduce", "--k", "3", "--a", "1", "--x0", "1,1,3", "--steps", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "kappa = 1/8" in out
    assert "semiconjugacy residual over 4 double-steps: 0" in out
    rows = [line for line in out.splitlines() if "," in line]
    assert rows[0] == "n,y1,y2"
    assert rows[1] == "0,1,3"
    assert rows[2] == "1,3,9"


def test_reduce_rejects_unsupported_dimension(capsys):
    assert main(["reduce", "--k", "4", "--a", "1", "--x0", "1,2,3,4"]) == 2
    capsys.readouterr()


def test_figures_preset_two_schema(tmp_path, capsys):
    out_file = tmp_path / "fig2.csv"
    code = main(["figures", "--which", "2", "--out", str(out_file)])
    capsys.readouterr()
    assert code == 0
    rows = _lines(out_file)
    assert rows[0] == "n,x1,x2,x3,x4,x5,V1,V2,V3,signZ"
    assert len(rows) == 5002  # header plus 5001 states
    signs = [r.rsplit(",", 1)[1] for r in rows[1:]]
    assert all(u != v for u, v in zip(signs, signs[1:]))


def test_figures_preset_one_writes_orbit_and_flow(tmp_path, capsys):
    out_file = tmp_path / "fig1.csv"
    code = main(["figures", "--which", "1", "--out", str(out_file)])
    capsys.readouterr()
    assert code == 0
    orbit_rows = _lines(out_file)
    assert orbit_rows[0] == "n,x1,x2,x3,V1,V2"
    assert len(orbit_rows) == 2002
    flow_rows = _lines(tmp_path / "fig1.flow.csv")
    assert flow_rows[0] == "t,x1,x2,x3,V1,V2"
    assert len(flow_rows) == 10002


def test_figures_preset_three_row_count(tmp_path, capsys):
    out_file = tmp_path / "fig3.csv"
    code = main(["figures", "--which", "3", "--out", str(out_file)])
    capsys.readouterr()
    assert code == 0
    assert len(_lines(out_file)) == 10002  # header plus 10001 states


def test_figures_rejects_unwritable_paths(tmp_path, capsys):
    missing_dir = tmp_path / "no" / "such" / "dir" / "f.csv"
    assert main(["figures", "--which", "2", "--out", str(missing_dir)]) == 2
    capsys.readouterr()


def test_output_files_are_byte_identical_across_runs(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["orbit", "--k", "5", "--a", "1", "--x0", "1,2,3,4,5",
                     "--steps", "500", "--out", str(path)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_environment_variable_seeds_verification(capsys, monkeypatch):
    monkeypatch.setenv("LYNESS_SEED", "7")
    assert main(["verify", "--k", "3", "--trials", "5"]) == 0
    assert "seed=7" in capsys.readouterr().out
    monkeypatch.setenv("LYNESS_SEED", "not-a-number")
    assert main(["verify", "--k", "3", "--trials", "5"]) == 2
    capsys.readouterr()
    monkeypatch.delenv("LYNESS_SEED")
    assert main(["verify", "--k", "3", "--trials", "5"]) == 0
    assert "seed=0" in capsys.readouterr().out


def test_explicit_seed_beats_the_environment(capsys, monkeypatch):
    monkeypatch.setenv("LYNESS_SEED", "7")
    assert main(["verify", "--k", "3", "--trials", "5", "--seed", "11"]) == 0
    assert "seed=11" in capsys.readouterr().out


def test_usage_errors_exit_with_two(capsys):
    assert main([]) == 2
    assert main(["orbit"]) == 2  # missing required flags
    assert main(["figures", "--which", "9"]) == 2
    capsys.readouterr()


def test_seeded_verify_output_is_reproducible(capsys):
    assert main(["verify", "--k", "5", "--trials", "20", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--k", "5", "--trials", "20", "--seed", "3"]) == 0
    second = capsys.readouterr().out
    assert first == second
