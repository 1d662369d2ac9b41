"""Config parsing, emission formats and exit codes of the command line."""

import json
import re
from pathlib import Path

import numpy as np
import pytest

import rydlink.cli as cli
import rydlink.experiments as ex
from rydlink.errors import ConfigError, IntegrationError

PRESETS = Path(__file__).resolve().parents[1] / "presets"


def _write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _dyn_cfg(tmp_path, extra=""):
    return _write(tmp_path, "kind = resonant\nlambda_mhz = 8\nomega_mhz = 24\nsamples = 8\n" + extra)


@pytest.fixture(scope="module")
def dynamics_run(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli")
    cfg = _dyn_cfg(tmp)
    out = tmp / "out"
    code = cli.main(["dynamics", "--config", cfg, "--out", str(out)])
    assert code == cli.EXIT_OK
    return cfg, out


def test_dynamics_csv_schema(dynamics_run):
    _, out = dynamics_run
    lines = (out / "dynamics.csv").read_text().splitlines()
    assert lines[0] == "t_us,fidelity,n_mean,p_g,p_e,p_r,p_s"
    assert len(lines) == 10  # header + 9 samples
    last = [float(v) for v in lines[-1].split(",")]
    assert last[1] == pytest.approx(0.9859, abs=5e-4)
    assert last[4] == pytest.approx(0.9720, abs=5e-4)


def test_emission_is_bit_stable(dynamics_run):
    _, out = dynamics_run
    raw = (out / "dynamics.csv").read_bytes()
    assert b"\r" not in raw
    for cell in raw.decode().splitlines()[1].split(","):
        assert re.fullmatch(r"-?\d+(\.\d+)?(e[+-]\d+)?", cell)
        assert format(float(cell), ".12g") == cell  # 12 significant digits, no more


def test_summary_round_trips_through_parse(dynamics_run, tmp_path):
    cfg_path, out = dynamics_run
    echo = json.loads((out / "summary.json").read_text())["settings"]
    lines = []
    for key, value in echo.items():
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        lines.append(f"{key} = {value}")
    echo_path = _write(tmp_path, "\n".join(lines) + "\n", name="echo.cfg")
    first = cli.parse_config("dynamics", cfg_path, out_dir="o", workers=3)
    second = cli.parse_config("dynamics", echo_path, out_dir="o", workers=3)
    assert first == second


def test_summary_payload(dynamics_run):
    _, out = dynamics_run
    payload = json.loads((out / "summary.json").read_text())
    assert payload["command"] == "dynamics"
    assert payload["conventions"]["target_frame"] == "plain"
    assert payload["summary"]["f_final"] == pytest.approx(0.9859, abs=5e-4)
    assert payload["summary"]["f_max_at"]["t_us"] > 0


def test_set_overrides_file(tmp_path):
    cfg = cli.parse_config(
        "dynamics", _dyn_cfg(tmp_path), overrides=["omega_mhz=8"], out_dir="o"
    )
    assert cfg.get("omega_mhz") == 8.0


def test_unknown_key_rejected(tmp_path):
    with pytest.raises(ConfigError, match="unknown key"):
        cli.parse_config("bloch-sweep", _dyn_cfg(tmp_path))  # samples only fits dynamics


def test_duplicate_key_rejected(tmp_path):
    path = _write(tmp_path, "kind = resonant\nkind = dispersive\n")
    with pytest.raises(ConfigError, match="duplicate"):
        cli.parse_config("dynamics", path)


def test_missing_required_key(tmp_path):
    path = _write(tmp_path, "kind = resonant\nlambda_mhz = 8\n")
    with pytest.raises(ConfigError, match="requires key"):
        cli.parse_config("dynamics", path)


def test_malformed_value(tmp_path):
    path = _write(tmp_path, "kind = resonant\nlambda_mhz = eight\nomega_mhz = 24\n")
    with pytest.raises(ConfigError, match="cannot parse"):
        cli.parse_config("dynamics", path)


def test_dispersive_needs_detuning(tmp_path):
    path = _write(tmp_path, "kind = dispersive\nlambda_mhz = 8\nomega_mhz = 24\n")
    with pytest.raises(ConfigError, match="delta_mhz"):
        cli.parse_config("dynamics", path)


def test_config_error_exit_code(tmp_path):
    path = _dyn_cfg(tmp_path, extra="typo_key = 1\n")
    code = cli.main(["dynamics", "--config", path, "--out", str(tmp_path / "o")])
    assert code == cli.EXIT_CONFIG


def test_integration_error_exit_code(tmp_path, monkeypatch):
    def boom(cfg):
        raise IntegrationError("integrator stalled", last_time=0.01)

    monkeypatch.setitem(cli._RUNNERS, "dynamics", boom)
    code = cli.main(["dynamics", "--config", _dyn_cfg(tmp_path), "--out", str(tmp_path / "o")])
    assert code == cli.EXIT_INTEGRATION


def test_validation_failure_exit_code(tmp_path, monkeypatch):
    report = {"passed": False, "checks": [{"name": "x", "passed": False, "measured": 1.0, "bound": 0.5}]}
    monkeypatch.setattr(ex, "validate", lambda seed=7: report)
    out = tmp_path / "o"
    code = cli.main(["validate", "--out", str(out)])
    assert code == cli.EXIT_VALIDATION
    assert json.loads((out / "summary.json").read_text())["summary"]["passed"] is False


def test_workers_must_be_positive(tmp_path):
    code = cli.main(
        ["dynamics", "--config", _dyn_cfg(tmp_path), "--out", str(tmp_path / "o"), "--workers", "0"]
    )
    assert code == cli.EXIT_CONFIG


def test_all_presets_parse():
    prefix_to_command = {
        "bloch": "bloch-sweep",
        "dynamics": "dynamics",
        "heatmap": "noise-heatmap",
        "thermal": "thermal-sweep",
    }
    presets = sorted(PRESETS.glob("*.cfg"))
    assert len(presets) == 20
    for path in presets:
        command = prefix_to_command[path.name.split("-")[0]]
        cfg = cli.parse_config(command, str(path), out_dir="o")
        assert cfg.get("kind") in ("resonant", "dispersive")


def test_small_sweep_csv_ordering(tmp_path):
    path = _write(
        tmp_path,
        "kind = resonant\nlambda_mhz = 8\nomega_mhz = 24\ntheta_steps = 2\nphi_steps = 3\n",
    )
    out = tmp_path / "sweep"
    assert cli.main(["bloch-sweep", "--config", path, "--out", str(out)]) == cli.EXIT_OK
    rows = np.loadtxt(out / "bloch.csv", delimiter=",", skiprows=1)
    assert rows.shape == (6, 3)
    # row-major: theta slow, phi fast, phi half-open
    assert np.allclose(rows[:3, 0], 0.0) and np.allclose(rows[3:, 0], np.pi)
    assert np.allclose(rows[:3, 1], [0.0, 2 * np.pi / 3, 4 * np.pi / 3])
