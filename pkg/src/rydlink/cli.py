"""Command-line entry point.

Reads a flat key=value config, runs one scenario from `experiments`, and
writes a CSV table plus a JSON summary.  All frequency-like inputs are
ordinary frequencies (lambda_mhz = 8 means lambda / 2pi = 8 MHz, small decay
rates in kHz) and are stored angular internally, so configs can quote
operating points digit-for-digit.  Output formatting is bit-stable: fixed
column schemas, 12 significant digits, '.' decimal separator, '\\n' line
endings, rows in row-major grid order.
"""

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import evolve as ev
from . import experiments as ex
from . import metrics as mt
from . import model as md
from .errors import ConfigError, IntegrationError, ParameterError, StateError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INTEGRATION = 3
EXIT_VALIDATION = 4

TWO_PI = 2.0 * np.pi

_FLOAT_KEYS = frozenset(
    {
        "lambda_mhz",
        "omega_mhz",
        "omega_tilde_mhz",
        "delta_mhz",
        "kappa_mhz",
        "gamma_r_khz",
        "gamma_s_khz",
        "gamma_sq_khz",
        "gamma_phi_khz",
        "nbar",
        "theta_rad",
        "phi_rad",
        "lambda_min",
        "lambda_max",
        "omega_min",
        "omega_max",
    }
)
_INT_KEYS = frozenset(
    {
        "fock_dim",
        "samples",
        "theta_steps",
        "phi_steps",
        "lambda_points",
        "omega_points",
        "seed",
    }
)
_LIST_KEYS = frozenset({"nbar_list"})
_RATE_KEYS = frozenset(
    {"kappa_mhz", "gamma_r_khz", "gamma_s_khz", "gamma_sq_khz", "gamma_phi_khz"}
)

_MODEL_KEYS = (
    "kind",
    "lambda_mhz",
    "omega_mhz",
    "omega_tilde_mhz",
    "delta_mhz",
    "fock_dim",
)
_ALLOWED = {
    "dynamics": frozenset(
        _MODEL_KEYS + tuple(_RATE_KEYS) + ("nbar", "theta_rad", "phi_rad", "samples")
    ),
    "bloch-sweep": frozenset(_MODEL_KEYS + ("theta_steps", "phi_steps")),
    "noise-heatmap": frozenset(
        ("kind", "theta_rad", "phi_rad")
        + tuple(_RATE_KEYS)
        + ("lambda_min", "lambda_max", "lambda_points", "omega_min", "omega_max", "omega_points")
    ),
    "thermal-sweep": frozenset(
        ("kind", "theta_rad", "phi_rad")
        + tuple(_RATE_KEYS)
        + ("nbar_list", "lambda_min", "lambda_max", "lambda_points")
    ),
    "validate": frozenset({"seed"}),
}
_REQUIRED = {
    "dynamics": ("kind", "lambda_mhz", "omega_mhz"),
    "bloch-sweep": ("kind", "lambda_mhz", "omega_mhz"),
    "noise-heatmap": ("kind", "kappa_mhz"),
    "thermal-sweep": ("kind", "kappa_mhz"),
    "validate": (),
}
_CSV_NAME = {
    "dynamics": "dynamics.csv",
    "bloch-sweep": "bloch.csv",
    "noise-heatmap": "heatmap.csv",
    "thermal-sweep": "thermal.csv",
}


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: command, canonical settings, output knobs."""

    command: str
    settings: tuple  # sorted (key, value) pairs after type conversion
    out_dir: str | None = None
    workers: int = 1

    def get(self, key, default=None):
        return dict(self.settings).get(key, default)


def _convert(key, raw):
    """Parse one raw string value into its canonical typed form."""
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _LIST_KEYS:
            return tuple(float(part) for part in str(raw).split(",") if part.strip() != "")
    except ValueError as err:
        raise ConfigError(f"key {key!r}: cannot parse value {raw!r}") from err
    return str(raw)


def _read_config_file(path):
    lines = Path(path).read_text().splitlines()
    pairs = {}
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = stripped.split("=", 1)
        key, value = key.strip(), value.strip()
        if key in pairs:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        pairs[key] = value
    return pairs


def parse_config(command, config_path=None, overrides=(), out_dir=None, workers=1):
    """Load and validate one invocation into a RunConfig.

    Flag overrides (``--set key=value``) replace file values.  Unknown keys,
    missing required keys, negative rates and malformed values are all
    rejected here so runs never start from a half-understood config.
    """
    if command not in _ALLOWED:
        raise ConfigError(f"unknown command {command!r}")
    raw = _read_config_file(config_path) if config_path is not None else {}
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        raw[key.strip()] = value.strip()

    allowed = _ALLOWED[command]
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigError(
            f"unknown key(s) for {command}: {', '.join(unknown)}; "
            f"allowed: {', '.join(sorted(allowed))}"
        )
    settings = {key: _convert(key, value) for key, value in raw.items()}
    missing = [key for key in _REQUIRED[command] if key not in settings]
    if missing:
        raise ConfigError(f"{command} requires key(s): {', '.join(missing)}")
    _check_values(command, settings)
    if workers < 1:
        raise ConfigError(f"workers must be positive, got {workers}")
    return RunConfig(
        command=command,
        settings=tuple(sorted(settings.items())),
        out_dir=out_dir,
        workers=workers,
    )


def _check_values(command, s):
    kind = s.get("kind")
    if kind is not None and kind not in md.KINDS:
        raise ConfigError(f"kind must be one of {md.KINDS}, got {kind!r}")
    for key in sorted(_RATE_KEYS | {"nbar"}):
        if s.get(key, 0.0) < 0:
            raise ConfigError(f"{key} must be nonnegative, got {s[key]}")
    for nbar in s.get("nbar_list", ()):
        if nbar < 0:
            raise ConfigError(f"nbar_list entries must be nonnegative, got {nbar}")
    if s.get("fock_dim", 2) < 2:
        raise ConfigError(f"fock_dim must be at least 2, got {s['fock_dim']}")
    if command in ("dynamics", "bloch-sweep") and kind == "dispersive":
        if s.get("delta_mhz", 0.0) <= 0:
            raise ConfigError("dispersive runs require delta_mhz > 0")
    if command in ("noise-heatmap", "thermal-sweep") and s.get("kappa_mhz", 0.0) <= 0:
        raise ConfigError("kappa_mhz must be positive for noisy sweeps")
    if not 0.0 <= s.get("theta_rad", 0.0) <= np.pi:
        raise ConfigError(f"theta_rad must lie in [0, pi], got {s['theta_rad']}")
    for lo_key, hi_key, n_key in (
        ("lambda_min", "lambda_max", "lambda_points"),
        ("omega_min", "omega_max", "omega_points"),
    ):
        points = s.get(n_key, 2)
        if points < 1:
            raise ConfigError(f"{n_key} must be positive")
        lo, hi = s.get(lo_key), s.get(hi_key)
        if lo is not None and hi is not None and (lo > hi or (lo == hi and points > 1)):
            raise ConfigError(f"{lo_key} must be below {hi_key}")
    if s.get("samples", 1) < 1:
        raise ConfigError("samples must be positive")
    for key, floor in (("theta_steps", 2), ("phi_steps", 1)):
        if s.get(key, floor) < floor:
            raise ConfigError(f"{key} must be at least {floor}")


def _build_params(cfg):
    s = dict(cfg.settings)
    nbar = s.get("nbar", 0.0)
    default_fock = ex.THERMAL_FOCK_DIM if nbar > 0 else ex.VACUUM_FOCK_DIM
    lam = TWO_PI * s["lambda_mhz"]
    return md.ModelParams(
        lambda_i=lam,
        lambda_sq=lam,
        omega=TWO_PI * s["omega_mhz"],
        omega_tilde=TWO_PI * s["omega_tilde_mhz"] if "omega_tilde_mhz" in s else None,
        delta=TWO_PI * s.get("delta_mhz", 0.0),
        kappa=TWO_PI * s.get("kappa_mhz", 0.0),
        gamma_r=TWO_PI * 1e-3 * s.get("gamma_r_khz", 0.0),
        gamma_s=TWO_PI * 1e-3 * s.get("gamma_s_khz", 0.0),
        gamma_sq=TWO_PI * 1e-3 * s.get("gamma_sq_khz", 0.0),
        gamma_phi=TWO_PI * 1e-3 * s.get("gamma_phi_khz", 0.0),
        nbar=nbar,
        fock_dim=s.get("fock_dim", default_fock),
    )


def _build_rates(cfg):
    return ex.NoiseRates(
        kappa=TWO_PI * cfg.get("kappa_mhz", 0.0),
        gamma_r=TWO_PI * 1e-3 * cfg.get("gamma_r_khz", 0.0),
        gamma_s=TWO_PI * 1e-3 * cfg.get("gamma_s_khz", 0.0),
        gamma_sq=TWO_PI * 1e-3 * cfg.get("gamma_sq_khz", 0.0),
        gamma_phi=TWO_PI * 1e-3 * cfg.get("gamma_phi_khz", 0.0),
    )


def _bloch(cfg):
    return mt.BlochAngle(cfg.get("theta_rad", 0.0), cfg.get("phi_rad", 0.0))


def _extrema(columns, coords, values):
    lo, hi = int(np.argmin(values)), int(np.argmax(values))
    return {
        "f_min": float(values[lo]),
        "f_min_at": dict(zip(columns, (float(c) for c in np.atleast_1d(coords[lo])))),
        "f_max": float(values[hi]),
        "f_max_at": dict(zip(columns, (float(c) for c in np.atleast_1d(coords[hi])))),
    }


def _run_dynamics(cfg):
    kind = cfg.get("kind")
    params = _build_params(cfg)
    schedule = md.make_schedule(kind, params)
    samples = cfg.get("samples")
    config = (
        ev.config_for(params, sample_dt=schedule.total_time / samples) if samples else None
    )
    rec = ex.run_dynamics(params, kind, _bloch(cfg), config=config)
    rows = np.column_stack(
        [rec.times, rec.fidelity, rec.n_mean, rec.p_g, rec.p_e, rec.p_r, rec.p_s]
    )
    summary = _extrema(("t_us",), rec.times, rec.fidelity)
    summary["f_final"] = float(rec.fidelity[-1])
    columns = ("t_us", "fidelity", "n_mean", "p_g", "p_e", "p_r", "p_s")
    return columns, rows, summary


def _sweep_payload(result):
    rows = np.column_stack([result.coords, result.fidelity])
    return result.columns + ("fidelity",), rows, dict(result.summary)


def _run_bloch_sweep(cfg):
    grid = ex.bloch_grid(cfg.get("theta_steps", 25), cfg.get("phi_steps", 48))
    result = ex.bloch_sweep(_build_params(cfg), cfg.get("kind"), grid, workers=cfg.workers)
    return _sweep_payload(result)


def _run_noise_heatmap(cfg):
    grid = ex.SweepGrid(
        "heatmap",
        lambda_axis=tuple(
            np.linspace(
                cfg.get("lambda_min", 0.5), cfg.get("lambda_max", 12.0), cfg.get("lambda_points", 40)
            )
        ),
        omega_axis=tuple(
            np.linspace(
                cfg.get("omega_min", 0.5), cfg.get("omega_max", 40.0), cfg.get("omega_points", 40)
            )
        ),
    )
    result = ex.noise_heatmap(
        _build_rates(cfg), cfg.get("kind"), _bloch(cfg), grid, workers=cfg.workers
    )
    return _sweep_payload(result)


def _run_thermal_sweep(cfg):
    lambda_axis = np.linspace(
        cfg.get("lambda_min", 1.0), cfg.get("lambda_max", 12.0), cfg.get("lambda_points", 23)
    )
    result = ex.thermal_sweep(
        _build_rates(cfg),
        cfg.get("kind"),
        _bloch(cfg),
        nbar_list=cfg.get("nbar_list", (0.0, 0.6)),
        lambda_axis=lambda_axis,
        workers=cfg.workers,
    )
    return _sweep_payload(result)


_RUNNERS = {
    "dynamics": _run_dynamics,
    "bloch-sweep": _run_bloch_sweep,
    "noise-heatmap": _run_noise_heatmap,
    "thermal-sweep": _run_thermal_sweep,
}


def _fmt(value):
    """12-significant-digit decimal form, locale independent."""
    return format(float(value), ".12g")


def _round12(value):
    return float(_fmt(value))


def _json_safe(obj):
    if isinstance(obj, dict):
        return {key: _json_safe(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(val) for val in obj]
    if isinstance(obj, (float, np.floating)):
        return _round12(obj)
    if isinstance(obj, (int, np.integer, bool)):
        return int(obj) if not isinstance(obj, bool) else obj
    return obj


def emit_results(cfg, columns, rows, summary):
    """Write the CSV table (when the command has one) and the JSON summary."""
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if rows is not None:
        csv_path = out / _CSV_NAME[cfg.command]
        with open(csv_path, "w", newline="\n") as handle:
            handle.write(",".join(columns) + "\n")
            for row in rows:
                handle.write(",".join(_fmt(value) for value in row) + "\n")
        written.append(csv_path)
    payload = {
        "command": cfg.command,
        "version": __version__,
        "workers": cfg.workers,
        "conventions": {
            "frequency_input": "ordinary frequency (MHz or kHz keys), stored as rad/us",
            "angles": "radians",
            "target_frame": "plain",
            "float_format": "12 significant digits",
        },
        "settings": _json_safe(dict(cfg.settings)),
        "summary": _json_safe(summary),
    }
    json_path = out / "summary.json"
    with open(json_path, "w", newline="\n") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    written.append(json_path)
    return written


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rydlink", description="Transduction protocol simulator."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in _ALLOWED:
        p = sub.add_parser(command)
        p.add_argument("--config", required=command != "validate", default=None)
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE")
        p.add_argument("--out", required=True)
        p.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(
            args.command,
            config_path=args.config,
            overrides=args.overrides,
            out_dir=args.out,
            workers=args.workers,
        )
    except (ConfigError, ParameterError, OSError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if cfg.command == "validate":
            report = ex.validate(cfg.get("seed", 7))
            columns, rows, summary = None, None, report
        else:
            columns, rows, summary = _RUNNERS[cfg.command](cfg)
    except (ConfigError, ParameterError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, StateError) as err:
        print(f"run failed: {err}", file=sys.stderr)
        return EXIT_INTEGRATION

    try:
        written = emit_results(cfg, columns, rows, summary)
    except OSError as err:
        print(f"config error: cannot write output: {err}", file=sys.stderr)
        return EXIT_CONFIG

    for path in written:
        print(f"wrote {path}")
    if cfg.command == "validate" and not summary["passed"]:
        print("validation failed", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
