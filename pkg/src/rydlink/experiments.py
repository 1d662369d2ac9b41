"""Scenario runners: dynamics traces, Bloch sweeps, noise maps, thermal curves.

Every runner assembles states and schedules from `model`, integrates with
`evolve`, and reduces to the quantity the scenario reports (usually the
transfer fidelity at the end of the laser span).  Sweeps fan grid points out
to a process pool; results are merged by grid index so the output is
bit-identical no matter how many workers ran.

All rates are angular (rad/us), matching `model`.
"""

import dataclasses
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import analytic
from . import evolve as ev
from . import hilbert as hb
from . import metrics as mt
from . import model as md
from .errors import ParameterError

VACUUM_FOCK_DIM = 10
THERMAL_FOCK_DIM = 15


@dataclasses.dataclass(frozen=True)
class NoiseRates:
    """Decoherence rate bundle for runners that rebuild ModelParams per point."""

    kappa: float
    gamma_r: float = 0.0
    gamma_s: float = 0.0
    gamma_sq: float = 0.0
    gamma_phi: float = 0.0

    def __post_init__(self):
        for name in ("kappa", "gamma_r", "gamma_s", "gamma_sq", "gamma_phi"):
            if getattr(self, name) < 0:
                raise ParameterError(f"rate {name} must be nonnegative")


#: Operating point of the noisy scenarios: kappa/2pi = 1 MHz, gamma_r and
#: gamma_s at 1 kHz, squbit relaxation 35 kHz, squbit dephasing 130 kHz.
BASELINE_RATES = NoiseRates(
    kappa=2.0 * np.pi * 1.0,
    gamma_r=2.0 * np.pi * 0.001,
    gamma_s=2.0 * np.pi * 0.001,
    gamma_sq=2.0 * np.pi * 0.035,
    gamma_phi=2.0 * np.pi * 0.130,
)


@dataclasses.dataclass(frozen=True)
class SweepGrid:
    """Sample locations of one sweep.

    Bloch sweeps use ``theta_steps`` samples covering [0, pi] inclusive and
    ``phi_steps`` samples covering [0, 2pi) half-open.  Heatmaps and thermal
    sweeps use the ratio axes instead (values in units of kappa), which must
    be strictly increasing.
    """

    scenario: str
    theta_steps: int = 25
    phi_steps: int = 48
    lambda_axis: tuple = ()
    omega_axis: tuple = ()
    nbar_axis: tuple = ()

    def __post_init__(self):
        if self.theta_steps < 2:
            raise ParameterError("theta_steps must be at least 2 to cover [0, pi]")
        if self.phi_steps < 1:
            raise ParameterError("phi_steps must be at least 1")
        for name in ("lambda_axis", "omega_axis"):
            axis = np.asarray(getattr(self, name), dtype=float)
            if axis.size > 1 and not np.all(np.diff(axis) > 0):
                raise ParameterError(f"{name} must be strictly increasing")

    @property
    def theta_values(self):
        return np.linspace(0.0, np.pi, self.theta_steps)

    @property
    def phi_values(self):
        return np.linspace(0.0, 2.0 * np.pi, self.phi_steps, endpoint=False)

    @property
    def cardinality(self):
        if self.scenario == "bloch":
            return self.theta_steps * self.phi_steps
        if self.scenario == "heatmap":
            return len(self.lambda_axis) * len(self.omega_axis)
        if self.scenario == "thermal":
            return len(self.nbar_axis) * len(self.lambda_axis)
        raise ParameterError(f"unknown scenario tag {self.scenario!r}")


def bloch_grid(theta_steps=25, phi_steps=48):
    return SweepGrid("bloch", theta_steps=theta_steps, phi_steps=phi_steps)


def heatmap_grid(lambda_points=40, omega_points=40):
    """Default map over lambda/kappa in [0.5, 12], omega/kappa in [0.5, 40]."""
    return SweepGrid(
        "heatmap",
        lambda_axis=tuple(np.linspace(0.5, 12.0, lambda_points)),
        omega_axis=tuple(np.linspace(0.5, 40.0, omega_points)),
    )


def thermal_grid(nbar_list=(0.0, 0.6), lambda_points=23):
    return SweepGrid(
        "thermal",
        lambda_axis=tuple(np.linspace(1.0, 12.0, lambda_points)),
        nbar_axis=tuple(float(n) for n in nbar_list),
    )


@dataclasses.dataclass(frozen=True)
class SweepResult:
    """Fidelity table of one sweep, row-major over the grid.

    ``coords`` holds one row per grid point in the order named by
    ``columns``; ``summary`` caches the extrema and can always be recomputed
    from the stored values via :meth:`recompute_summary`.
    """

    grid: SweepGrid
    columns: tuple
    coords: np.ndarray
    fidelity: np.ndarray
    summary: dict

    def __post_init__(self):
        n = self.grid.cardinality
        if len(self.fidelity) != n or len(self.coords) != n:
            raise ParameterError(
                f"sweep stores {len(self.fidelity)} values for a grid of cardinality {n}"
            )

    def recompute_summary(self):
        lo, hi = int(np.argmin(self.fidelity)), int(np.argmax(self.fidelity))
        return {
            "f_min": float(self.fidelity[lo]),
            "f_min_at": dict(zip(self.columns, (float(c) for c in self.coords[lo]))),
            "f_max": float(self.fidelity[hi]),
            "f_max_at": dict(zip(self.columns, (float(c) for c in self.coords[hi]))),
        }


def initial_state(params, bloch, resonator_init=None):
    """Protocol input state: atom in r, encoded squbit, resonator as given.

    ``resonator_init`` may be None (vacuum, or the thermal state of
    ``params.nbar`` when that is nonzero) or an explicit resonator density
    matrix on the truncated Fock space.
    """
    layout = params.layout
    qubit = bloch.squbit_amplitudes()
    if resonator_init is None and params.nbar == 0.0:
        return hb.pure_state(hb.ATOM_R, 0, qubit, layout=layout)
    if resonator_init is None:
        resonator_init = hb.thermal_state(params.nbar, params.fock_dim)
    res = (
        resonator_init.entries
        if isinstance(resonator_init, hb.DensityMatrix)
        else np.asarray(resonator_init, dtype=complex)
    )
    if res.shape != (params.fock_dim, params.fock_dim):
        raise ParameterError(
            f"resonator state shape {res.shape} does not match fock_dim {params.fock_dim}"
        )
    atom = hb.ketbra(hb.ATOM_DIM, hb.ATOM_R, hb.ATOM_R)
    squbit = np.outer(qubit, qubit.conj())
    return hb.DensityMatrix(hb.tensor(atom, res, squbit))


def run_dynamics(params, kind, bloch, resonator_init=None, *, config=None):
    """One full protocol run; dissipative whenever any rate is nonzero."""
    schedule = md.make_schedule(kind, params)
    stages = md.protocol_stages(params, schedule)
    rho0 = initial_state(params, bloch, resonator_init)
    target = mt.target_state(bloch)
    cfg = config if config is not None else ev.config_for(params)
    channels = md.collapse_operators(params)
    if channels:
        return ev.evolve_lindblad(
            stages, channels, rho0, schedule, cfg, layout=params.layout, target=target
        )
    return ev.evolve_von_neumann(
        stages, rho0, schedule, cfg, layout=params.layout, target=target
    )


def _final_fidelity(params, kind, bloch):
    """Endpoint fidelity of one run, sampling only the span boundaries."""
    schedule = md.make_schedule(kind, params)
    cfg = ev.config_for(params, sample_dt=schedule.total_time)
    rec = run_dynamics(params, kind, bloch, config=cfg)
    return float(rec.fidelity[-1])


def _bloch_point(payload):
    idx, params, kind, theta, phi = payload
    return idx, _final_fidelity(params, kind, mt.BlochAngle(theta, phi))


def _heatmap_point(payload):
    idx, rates, kind, bloch, lam_ratio, omega_ratio = payload
    lam = lam_ratio * rates.kappa
    params = md.ModelParams(
        lambda_i=lam,
        lambda_sq=lam,
        omega=omega_ratio * rates.kappa,
        delta=12.0 * lam if kind == "dispersive" else 0.0,
        kappa=rates.kappa,
        gamma_r=rates.gamma_r,
        gamma_s=rates.gamma_s,
        gamma_sq=rates.gamma_sq,
        gamma_phi=rates.gamma_phi,
        fock_dim=VACUUM_FOCK_DIM,
    )
    return idx, _final_fidelity(params, kind, bloch)


def _thermal_point(payload):
    idx, rates, kind, bloch, lam_ratio, nbar = payload
    lam = lam_ratio * rates.kappa
    params = md.ModelParams(
        lambda_i=lam,
        lambda_sq=lam,
        omega=3.0 * lam,
        delta=12.0 * lam if kind == "dispersive" else 0.0,
        kappa=rates.kappa,
        gamma_r=rates.gamma_r,
        gamma_s=rates.gamma_s,
        gamma_sq=rates.gamma_sq,
        gamma_phi=rates.gamma_phi,
        nbar=nbar,
        fock_dim=THERMAL_FOCK_DIM if nbar > 0 else VACUUM_FOCK_DIM,
    )
    return idx, _final_fidelity(params, kind, bloch)


def _pooled(point_fn, payloads, workers):
    """Evaluate indexed payloads, merging results by index, not arrival order."""
    values = np.empty(len(payloads))
    if workers <= 1:
        results = map(point_fn, payloads)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(
            point_fn, payloads, chunksize=max(1, len(payloads) // (8 * workers))
        )
    for idx, value in results:
        values[idx] = value
    if workers > 1:
        pool.shutdown()
    return values


def _assemble(grid, columns, coords, fidelity):
    coords = np.asarray(coords, dtype=float)
    probe = SweepResult(grid, columns, coords, fidelity, {})
    return dataclasses.replace(probe, summary=probe.recompute_summary())


def bloch_sweep(params, kind, grid, *, workers=1):
    """Endpoint fidelity over the encoded-state sphere, ideal dynamics only."""
    if md.collapse_operators(params) or params.nbar != 0.0:
        raise ParameterError("bloch_sweep is defined for the lossless protocol; "
                             "clear the decay rates or use noise_heatmap")
    payloads = []
    coords = []
    for i, theta in enumerate(grid.theta_values):
        for j, phi in enumerate(grid.phi_values):
            idx = i * grid.phi_steps + j
            payloads.append((idx, params, kind, theta, phi))
            coords.append((theta, phi))
    fidelity = _pooled(_bloch_point, payloads, workers)
    return _assemble(grid, ("theta_rad", "phi_rad"), coords, fidelity)


def noise_heatmap(base_rates, kind, bloch, grid, *, workers=1):
    """Endpoint fidelity over (lambda/kappa, omega/kappa) at fixed rates.

    Dispersive points pin delta = 12 lambda.  Low-fidelity values are kept;
    masking is a plotting concern.
    """
    if base_rates.kappa <= 0:
        raise ParameterError("noise_heatmap needs kappa > 0 to set the ratio scale")
    payloads = []
    coords = []
    n_omega = len(grid.omega_axis)
    for i, lam_ratio in enumerate(grid.lambda_axis):
        for j, omega_ratio in enumerate(grid.omega_axis):
            idx = i * n_omega + j
            payloads.append((idx, base_rates, kind, bloch, lam_ratio, omega_ratio))
            coords.append((lam_ratio, omega_ratio))
    fidelity = _pooled(_heatmap_point, payloads, workers)
    return _assemble(grid, ("lambda_over_kappa", "omega_over_kappa"), coords, fidelity)


def thermal_sweep(base_rates, kind, bloch, nbar_list=(0.0, 0.6), lambda_axis=None, *, workers=1):
    """Endpoint fidelity vs coupling for thermal resonator seeds.

    The laser rate rides the coupling (omega = 3 lambda) and dispersive
    points pin delta = 12 lambda, so a single ratio axis describes each
    curve.  One curve per nbar, curves concatenated row-major.
    """
    if base_rates.kappa <= 0:
        raise ParameterError("thermal_sweep needs kappa > 0 to set the ratio scale")
    if lambda_axis is None:
        grid = thermal_grid(nbar_list)
    else:
        grid = SweepGrid(
            "thermal",
            lambda_axis=tuple(float(v) for v in lambda_axis),
            nbar_axis=tuple(float(n) for n in nbar_list),
        )
    payloads = []
    coords = []
    n_lambda = len(grid.lambda_axis)
    for i, nbar in enumerate(grid.nbar_axis):
        for j, lam_ratio in enumerate(grid.lambda_axis):
            idx = i * n_lambda + j
            payloads.append((idx, base_rates, kind, bloch, lam_ratio, nbar))
            coords.append((lam_ratio, nbar))
    fidelity = _pooled(_thermal_point, payloads, workers)
    return _assemble(grid, ("lambda_over_kappa", "nbar"), coords, fidelity)


def _ideal_params(fock_dim=VACUUM_FOCK_DIM, omega_ratio=3.0, delta_ratio=0.0):
    lam = 2.0 * np.pi * 8.0
    return md.ModelParams(
        lambda_i=lam,
        lambda_sq=lam,
        omega=omega_ratio * lam,
        delta=delta_ratio * lam,
        fock_dim=fock_dim,
    )


def _stage_one_record(params, kind, rho0, t_end, *, effective=False):
    schedule = md.ProtocolSchedule(kind, transfer_time=t_end, laser_time=0.0)
    stages = md.protocol_stages(params, schedule, effective=effective)
    cfg = ev.config_for(params, sample_dt=t_end)
    return ev.evolve_von_neumann(stages, rho0, schedule, cfg, layout=params.layout)


def _oracle_deviation(kind, draws, rng):
    """Largest density-matrix deviation from the closed-form transfer stage."""
    fock = 6
    worst = 0.0
    if kind == "resonant":
        params = _ideal_params(fock_dim=fock)
        span = md.make_schedule(kind, params).transfer_time
    else:
        params = _ideal_params(fock_dim=fock, omega_ratio=0.6, delta_ratio=12.0)
        span = md.make_schedule(kind, params).transfer_time
    layout = params.layout
    for _ in range(draws):
        bloch = mt.BlochAngle(rng.uniform(0.0, np.pi), rng.uniform(0.0, 2.0 * np.pi))
        t = rng.uniform(0.05, 1.0) * span
        if kind == "resonant":
            rho0 = hb.pure_state(hb.ATOM_R, 0, bloch.squbit_amplitudes(), layout=layout)
            coeffs = analytic.resonant_coefficients(params.lambda_i, params.lambda_sq, bloch, t)
            psi = analytic.resonant_state(coeffs, layout)
            rec = _stage_one_record(params, kind, rho0, t)
        else:
            amps = rng.normal(size=3) + 1j * rng.normal(size=3)
            amps /= np.linalg.norm(amps)
            fock_vec = np.pad(amps, (0, fock - amps.size))
            rho0 = hb.pure_state(hb.ATOM_R, fock_vec, bloch.squbit_amplitudes(), layout=layout)
            coeffs = analytic.dispersive_coefficients(params.chi, bloch, amps, t)
            psi = analytic.dispersive_state(coeffs, layout)
            rec = _stage_one_record(params, kind, rho0, t, effective=True)
        gap = np.max(np.abs(rec.final_state.entries - np.outer(psi, psi.conj())))
        worst = max(worst, float(gap))
    return worst


def _frame_gap():
    """Endpoint fidelity difference between the detuned and effective pictures."""
    params = _ideal_params(omega_ratio=0.6, delta_ratio=12.0)
    kind = "dispersive"
    bloch = mt.BlochAngle(np.pi / 2, 0.3)
    schedule = md.make_schedule(kind, params)
    cfg = ev.config_for(params, sample_dt=schedule.total_time)
    rho0 = initial_state(params, bloch)
    target = mt.target_state(bloch)
    runs = []
    for effective in (False, True):
        stages = md.protocol_stages(params, schedule, effective=effective)
        rec = ev.evolve_von_neumann(
            stages, rho0, schedule, cfg, layout=params.layout, target=target
        )
        runs.append(float(rec.fidelity[-1]))
    return abs(runs[0] - runs[1])


def _fidelity_shift(params_a, params_b, kind, bloch, halve_step=False):
    """|F_a - F_b| for one scenario under a resolution change."""
    f_a = _final_fidelity(params_a, kind, bloch)
    if not halve_step:
        return abs(f_a - _final_fidelity(params_b, kind, bloch))
    schedule = md.make_schedule(kind, params_b)
    base = ev.config_for(params_b, sample_dt=schedule.total_time)
    cfg = dataclasses.replace(base, max_step=0.5 * base.max_step)
    rec = run_dynamics(params_b, kind, bloch, config=cfg)
    return abs(f_a - float(rec.fidelity[-1]))


def validate(rng_seed=7):
    """Cross-check the engine against its closed forms and resolution limits.

    Returns a report dict with one entry per check (name, measured value,
    bound, pass flag) plus an overall flag; the seed fixes the oracle draws
    so reruns are comparable.
    """
    rng = np.random.default_rng(rng_seed)
    bloch = mt.BlochAngle(np.pi / 2, 0.0)
    vac = _ideal_params()
    vac_doubled = dataclasses.replace(vac, fock_dim=2 * vac.fock_dim)

    def thermal_params(fock_dim):
        lam = 3.0 * BASELINE_RATES.kappa
        return md.ModelParams(
            lambda_i=lam,
            lambda_sq=lam,
            omega=3.0 * lam,
            delta=12.0 * lam,
            kappa=BASELINE_RATES.kappa,
            gamma_r=BASELINE_RATES.gamma_r,
            gamma_s=BASELINE_RATES.gamma_s,
            gamma_sq=BASELINE_RATES.gamma_sq,
            gamma_phi=BASELINE_RATES.gamma_phi,
            nbar=0.6,
            fock_dim=fock_dim,
        )

    therm = thermal_params(THERMAL_FOCK_DIM)
    therm_doubled = thermal_params(2 * THERMAL_FOCK_DIM)
    checks = [
        ("resonant_oracle", _oracle_deviation("resonant", 100, rng), 1e-8),
        ("dispersive_oracle", _oracle_deviation("dispersive", 100, rng), 1e-8),
        ("frame_consistency", _frame_gap(), 0.01),
        ("fock_doubling_vacuum", _fidelity_shift(vac, vac_doubled, "resonant", bloch), 1e-6),
        ("step_halving_vacuum", _fidelity_shift(vac, vac, "resonant", bloch, halve_step=True), 1e-6),
        ("fock_doubling_thermal", _fidelity_shift(therm, therm_doubled, "dispersive", bloch), 1e-3),
        ("step_halving_thermal", _fidelity_shift(therm, therm, "dispersive", bloch, halve_step=True), 1e-3),
    ]
    report = {
        "checks": [
            {"name": name, "measured": float(measured), "bound": bound, "passed": bool(measured < bound)}
            for name, measured, bound in checks
        ]
    }
    report["passed"] = all(c["passed"] for c in report["checks"])
    return report
