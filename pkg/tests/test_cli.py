import json
import subprocess
import sys

from stacklaw.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_scaling_factor_eight(capsys):
    code, out, _ = run(["scaling", "--k", "2", "--b", "1", "--alpha", "0.5", "--format", "json"],
                       capsys)
    assert code == 0
    assert json.loads(out)[0]["capacity_factor"] == 8


def test_scaling_table_prints_8(capsys):
    code, out, _ = run(["scaling", "--k", "2", "--b", "1", "--alpha", "0.5"], capsys)
    assert code == 0 and out.splitlines()[2].split()[3] == "8"


def test_geometry_add_layer(capsys):
    code, out, _ = run(["geometry", "--x", "10", "--n", "4", "--delta", "1"], capsys)
    assert code == 0 and "AddLayer" in out
    code, out, _ = run(["geometry", "--x", "10", "--n", "5", "--delta", "1", "--exact"], capsys)
    assert code == 0 and "GrowFootprint" in out


def test_thermal_check_exit_codes(configs_dir, capsys):
    cfg = str(configs_dir / "two_layer_65C.json")
    code, out, err = run(["thermal-check", cfg, "--t-max", "64"], capsys)
    assert code == 1 and "FAILED" in err and "layer" in out
    code, _, _ = run(["thermal-check", cfg, "--t-max", "65"], capsys)
    assert code == 0


def test_thermal_check_without_limit(tmp_path, configs_dir, capsys):
    d = json.loads((configs_dir / "two_layer_65C.json").read_text())
    del d["constraints"]
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(d))
    code, _, err = run(["thermal-check", str(cfg)], capsys)
    assert code == 2 and "t_max" in err


def test_malformed_config_field_path(tmp_path, configs_dir, capsys):
    d = json.loads((configs_dir / "two_layer_65C.json").read_text())
    d["cache"][1]["line_size"] = 1 << 30
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps(d))
    code, out, err = run(["evaluate", str(cfg)], capsys)
    assert code == 2 and out == ""
    assert "cache[1]" in err and "line_size" in err and "invariant" in err


def test_unparsable_and_schema_errors(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{")
    code, _, err = run(["evaluate", str(cfg)], capsys)
    assert code == 2 and "parse error" in err
    cfg.write_text('{"version": 1, "colour": "red"}')
    code, _, err = run(["sweep", str(cfg)], capsys)
    assert code == 2 and "schema error" in err


def test_usage_errors(capsys):
    assert run([], capsys)[0] == 2
    assert run(["scaling"], capsys)[0] == 2
    assert run(["nope"], capsys)[0] == 2
    assert run(["scaling", "--k", "0"], capsys)[0] == 2
    assert run(["sweep", "x.json", "--jobs", "0"], capsys)[0] == 2


def test_evaluate_and_infeasible_exit(configs_dir, capsys, tmp_path):
    code, out, _ = run(["evaluate", str(configs_dir / "baseline.json"), "--format", "json"], capsys)
    assert code == 0 and json.loads(out)[0]["feasible"] is True
    d = json.loads((configs_dir / "two_layer_65C.json").read_text())
    d["constraints"]["t_max"] = 64
    cfg = tmp_path / "hot.json"
    cfg.write_text(json.dumps(d))
    code, out, _ = run(["evaluate", str(cfg), "--format", "json"], capsys)
    assert code == 1 and json.loads(out)[0]["thermal_infeasible"] is True


def test_sweep_and_pareto(configs_dir, capsys, tmp_path):
    cfg = str(configs_dir / "baseline.json")
    out_path = tmp_path / "s.csv"
    code, out, _ = run(["--format", "csv", "--out", str(out_path), "sweep", cfg], capsys)
    assert code == 0 and out == ""
    assert len(out_path.read_text().splitlines()) == 19
    code, out, _ = run(["pareto", cfg, "--objectives", "throughput:max,cache_capacity:min",
                        "--format", "json"], capsys)
    assert code == 0 and len(json.loads(out)) >= 1
    code, _, err = run(["pareto", cfg, "--objectives", "speed:max"], capsys)
    assert code == 2 and "speed" in err


def test_advise_and_compare(configs_dir, capsys):
    cfg = str(configs_dir / "baseline.json")
    code, out, _ = run(["advise", cfg, "--question", "CapacityForThreadDoubling",
                        "--format", "json"], capsys)
    assert code == 0 and json.loads(out)[0]["value"] == 8
    code, out, _ = run(["advise", cfg, "--question", "GrowthDirection", "--delta", "2.5",
                        "--paper-approx", "--format", "json"], capsys)
    assert json.loads(out)[0]["value"] == "Indifferent"
    code, _, err = run(["advise", cfg, "--question", "GrowthDirection"], capsys)
    assert code == 2
    code, out, _ = run(["compare", cfg, "--format", "csv"], capsys)
    assert code == 0 and out.splitlines()[0].startswith("composition")


def test_jobs_env_default(configs_dir, capsys, monkeypatch):
    cfg = str(configs_dir / "baseline.json")
    monkeypatch.setenv("STACKLAW_JOBS", "2")
    code, out2, _ = run(["sweep", cfg, "--format", "csv"], capsys)
    monkeypatch.setenv("STACKLAW_JOBS", "1")
    code1, out1, _ = run(["sweep", cfg, "--format", "csv"], capsys)
    assert code == code1 == 0 and out1 == out2
    monkeypatch.setenv("STACKLAW_JOBS", "lots")
    assert run(["sweep", cfg], capsys)[0] == 2


def test_internal_error_exit_3(monkeypatch, capsys):
    import stacklaw.cli as cli

    def boom(args):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.COMMANDS, "scaling", boom)
    code, _, err = run(["scaling", "--k", "2"], capsys)
    assert code == 3 and "internal error" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stacklaw", "scaling", "--k", "2", "--format", "csv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].split(",")[3] == "8"
