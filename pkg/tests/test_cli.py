import json

import pytest

from mirrortail.cli import main


def test_check_invariants_exit_zero(capsys):
    assert main(["check-invariants", "--traces", "8", "--seed", "2"]) == 0
    out = capsys.readouterr().out
    assert "one-step" in out and "pass" in out
    assert "max rho_t" in out          # the flagged proof-sketch discrepancy


def test_eval_bounds(tmp_path, capsys):
    cfg = {"breg0": 1.0, "eta": 1.0, "G": 1.0, "nu": 0.0, "theta": 1.0,
           "T": 100, "delta": 0.3,
           "formulas": ["cor1-inverse-sqrt", "cor3-weibull"]}
    path = tmp_path / "b.json"
    path.write_text(json.dumps(cfg))
    assert main(["eval-bounds", "--config", str(path)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("cor1-inverse-sqrt ")
    assert float(lines[0].split()[1]) == pytest.approx(1.1210340372, rel=1e-9)


def test_eval_bounds_unknown_formula(tmp_path, capsys):
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"T": 10, "delta": 0.5}))
    assert main(["eval-bounds", "--config", str(path),
                 "--formula", "not-a-formula"]) == 2


def test_validate_concentration_cli(capsys):
    rc = main(["validate-concentration", "--prop", "e2", "--theta", "0.5",
               "--n", "50", "--delta", "0.05", "--trials", "4000"])
    assert rc == 0
    assert "pass" in capsys.readouterr().out


def test_validate_concentration_moments(capsys):
    rc = main(["validate-concentration", "--prop", "moments", "--theta", "1",
               "--nu", "1", "--pmoment", "2", "--trials", "4000"])
    assert rc == 0


def test_run_experiment_cli(tmp_path, capsys):
    cfg = {"runs": 40, "t_grid": [20, 40], "base_seed": 3,
           "noises": [{"kind": "gaussian"}]}
    cpath = tmp_path / "cfg.json"
    cpath.write_text(json.dumps(cfg))
    out = tmp_path / "res.csv"
    rc = main(["run-experiment", "--config", str(cpath), "--out", str(out)])
    assert rc == 0
    assert out.exists()
    assert len(out.read_text().splitlines()) == 1 + 2 * 2


def test_run_experiment_needs_out(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"runs": 5, "t_grid": [10]}))
    assert main(["run-experiment", "--config", str(cfg)]) == 2


def test_run_experiment_bad_out_is_io_error(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"runs": 5, "t_grid": [10],
                               "noises": [{"kind": "gaussian"}]}))
    rc = main(["run-experiment", "--config", str(cfg), "--out",
               str(tmp_path / "missing_dir" / "x.csv")])
    assert rc == 1


def test_usage_error_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
