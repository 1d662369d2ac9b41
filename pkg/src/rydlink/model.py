"""Hamiltonians, dissipators and the two-stage protocol schedule.

All frequencies and rates are angular, in rad/us, and times are in us.
Configuration files speak in ordinary MHz or kHz; the CLI multiplies by
2 pi on load so that this module never sees a bare Hz.

Both protocols run in two spans: a transfer span during which the
resonator swaps the excitation, then a laser span of length pi/(2 omega)
that maps |s> -> -i|e> and |r> -> i|g>.  The resonator couplings stay on
during the laser span; the step function that turns the lasers on equals
one at the switching instant itself.
"""

import dataclasses

import numpy as np

from . import analytic
from . import hilbert as hb
from .errors import ParameterError

KINDS = analytic.KINDS


@dataclasses.dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the chain, in rad/us.

    Parameters
    ----------
    lambda_i : float
        Atom-resonator coupling.
    lambda_sq : float
        Squbit-resonator coupling.
    omega : float
        Laser Rabi rate on the s -> e transition.
    omega_tilde : float or None
        Rabi rate on the r -> g transition; None selects 3 * omega, the
        choice that completes both rotations in the same span.
    delta : float
        Detuning of the dispersive protocol; unused when resonant.
    kappa, gamma_r, gamma_s, gamma_sq, gamma_phi : float
        Decay rates: resonator loss, the two atomic spontaneous channels,
        squbit relaxation and squbit pure dephasing.
    nbar : float
        Mean thermal photon number of the initial resonator state.
    fock_dim : int
        Resonator truncation.
    """

    lambda_i: float
    lambda_sq: float
    omega: float
    omega_tilde: float | None = None
    delta: float = 0.0
    kappa: float = 0.0
    gamma_r: float = 0.0
    gamma_s: float = 0.0
    gamma_sq: float = 0.0
    gamma_phi: float = 0.0
    nbar: float = 0.0
    fock_dim: int = 10

    def __post_init__(self):
        if self.lambda_i <= 0 or self.lambda_sq <= 0:
            raise ParameterError("couplings lambda_i and lambda_sq must be positive")
        if self.omega <= 0:
            raise ParameterError("laser rate omega must be positive")
        if self.omega_tilde is None:
            object.__setattr__(self, "omega_tilde", 3.0 * self.omega)
        elif self.omega_tilde <= 0:
            raise ParameterError("omega_tilde must be positive")
        for name in ("kappa", "gamma_r", "gamma_s", "gamma_sq", "gamma_phi"):
            if getattr(self, name) < 0:
                raise ParameterError(f"rate {name} must be nonnegative")
        if self.nbar < 0:
            raise ParameterError("nbar must be nonnegative")
        # delegate fock_dim validation
        hb.HilbertLayout(self.fock_dim)

    @property
    def layout(self):
        return hb.HilbertLayout(self.fock_dim)

    @property
    def lambda_tilde(self):
        return float(np.hypot(self.lambda_i, self.lambda_sq))

    @property
    def chi(self):
        """Dispersive rate lambda^2 / delta (equal couplings required)."""
        self._require_equal_couplings()
        if self.delta <= 0:
            raise ParameterError(f"dispersive protocol needs delta > 0, got {self.delta}")
        return self.lambda_i**2 / self.delta

    def _require_equal_couplings(self):
        if not np.isclose(self.lambda_i, self.lambda_sq, rtol=1e-12, atol=0.0):
            raise ParameterError(
                "dispersive protocol requires equal couplings, got "
                f"lambda_i={self.lambda_i}, lambda_sq={self.lambda_sq}"
            )


@dataclasses.dataclass(frozen=True)
class ProtocolSchedule:
    """Span boundaries of one protocol run, in us."""

    kind: str
    transfer_time: float
    laser_time: float

    @property
    def total_time(self):
        return self.transfer_time + self.laser_time


def make_schedule(kind, params):
    """Transfer and laser spans for the requested protocol.

    resonant: transfer lasts until the swapped excitation sits entirely in
    |s>, which requires equal couplings.  dispersive: transfer lasts
    pi / (2 chi).  The laser span is pi / (2 omega) in both cases.
    """
    if kind not in KINDS:
        raise ParameterError(f"unknown protocol kind {kind!r}, expected one of {KINDS}")
    if kind == "resonant":
        transfer = analytic.resonant_transfer_time(params.lambda_i, params.lambda_sq)
    else:
        transfer = float(np.pi / (2.0 * params.chi))
    laser = float(np.pi / (2.0 * params.omega))
    return ProtocolSchedule(kind=kind, transfer_time=transfer, laser_time=laser)


def _atom_lower_rs(layout):
    return hb.embed(hb.ketbra(4, hb.ATOM_R, hb.ATOM_S), "atom", layout)


def _sq_lower(layout):
    return hb.embed(hb.ketbra(2, hb.SQ_G, hb.SQ_E), "squbit", layout)


def _annihilator(layout):
    return hb.embed(hb.annihilation(layout.fock_dim), "resonator", layout)


def h_resonant(params):
    """Resonant-stage Hamiltonian: both factors exchange photons on resonance."""
    layout = params.layout
    a = _annihilator(layout)
    rs = _atom_lower_rs(layout)
    sq = _sq_lower(layout)
    return params.lambda_i * (a.dag @ rs + a @ rs.dag) + params.lambda_sq * (
        a.dag @ sq + a @ sq.dag
    )


def h_laser(params):
    """Laser Hamiltonian driving s -> e at omega and r -> g at omega_tilde."""
    layout = params.layout
    se = hb.embed(hb.ketbra(4, hb.ATOM_E, hb.ATOM_S), "atom", layout)
    rg = hb.embed(hb.ketbra(4, hb.ATOM_G, hb.ATOM_R), "atom", layout)
    return params.omega * (se + se.dag) + params.omega_tilde * (rg + rg.dag)


def _dispersive_osc(params):
    """Operator multiplying e^(i delta t) in the detuned-frame Hamiltonian."""
    params._require_equal_couplings()
    layout = params.layout
    a = _annihilator(layout)
    lower = _atom_lower_rs(layout) + _sq_lower(layout)
    return params.lambda_i * (a.dag @ lower)


def h_dispersive_full(params, t):
    """Detuned interaction at time t: osc e^(i delta t) + h.c."""
    osc = _dispersive_osc(params)
    phase = np.exp(1j * params.delta * t)
    return phase * osc + np.conj(phase) * osc.dag


def h_dispersive_effective(params):
    """Second-order effective Hamiltonian of the detuned interaction.

    Number-dependent level shifts of strength chi plus a photon-conserving
    flip-flop between |r, e~> and |s, g~>.  Written with truncated operator
    products, so the top Fock level carries the usual truncation artifact.
    """
    chi = params.chi
    layout = params.layout
    a = _annihilator(layout)
    a_ad = a @ a.dag
    ad_a = a.dag @ a
    ss = hb.embed(hb.ketbra(4, hb.ATOM_S, hb.ATOM_S), "atom", layout)
    rr = hb.embed(hb.ketbra(4, hb.ATOM_R, hb.ATOM_R), "atom", layout)
    ee = hb.embed(hb.ketbra(2, hb.SQ_E, hb.SQ_E), "squbit", layout)
    gg = hb.embed(hb.ketbra(2, hb.SQ_G, hb.SQ_G), "squbit", layout)
    flip = _atom_lower_rs(layout).dag @ _sq_lower(layout)
    shifts = ss @ a_ad - rr @ ad_a + ee @ a_ad - gg @ ad_a
    return chi * shifts + chi * (flip + flip.dag)


def h_of_t(params, schedule, t):
    """Full protocol Hamiltonian at time t, laser included once t >= transfer."""
    if schedule.kind == "resonant":
        h = h_resonant(params)
    else:
        h = h_dispersive_full(params, t)
    if t >= schedule.transfer_time:
        h = h + h_laser(params)
    return h


def collapse_operators(params):
    """Dissipation channels as (rate, operator) pairs, zero rates omitted.

    Channels: resonator photon loss, atomic decay r -> g and s -> e,
    squbit relaxation e~ -> g~ and squbit pure dephasing along sigma_z.
    """
    layout = params.layout
    channels = [
        (params.kappa, _annihilator(layout)),
        (params.gamma_r, hb.embed(hb.ketbra(4, hb.ATOM_G, hb.ATOM_R), "atom", layout)),
        (params.gamma_s, hb.embed(hb.ketbra(4, hb.ATOM_E, hb.ATOM_S), "atom", layout)),
        (params.gamma_sq, _sq_lower(layout)),
        (
            params.gamma_phi,
            hb.embed(
                hb.ketbra(2, hb.SQ_E, hb.SQ_E) - hb.ketbra(2, hb.SQ_G, hb.SQ_G),
                "squbit",
                layout,
            ),
        ),
    ]
    return [(rate, op) for rate, op in channels if rate > 0.0]


@dataclasses.dataclass(frozen=True)
class HamiltonianStage:
    """One span's Hamiltonian in the form h0 + osc e^(i delta t) + h.c.

    The integrator consumes this instead of a bare callable so constant
    spans skip the per-evaluation rebuild.
    """

    h0: np.ndarray
    osc: np.ndarray | None = None
    delta: float = 0.0

    def matrix_at(self, t):
        if self.osc is None:
            return self.h0
        phase = np.exp(1j * self.delta * t)
        return self.h0 + phase * self.osc + np.conj(phase) * self.osc.conj().T


def protocol_stages(params, schedule, *, effective=False):
    """Engine-facing pair of HamiltonianStage objects for the two spans.

    effective=True replaces the oscillating dispersive interaction with its
    second-order constant Hamiltonian; it has no meaning for the resonant
    kind and is a consistency probe, not the production path.
    """
    laser = h_laser(params).entries
    if schedule.kind == "resonant":
        h1 = h_resonant(params).entries
        return (
            HamiltonianStage(h0=h1),
            HamiltonianStage(h0=h1 + laser),
        )
    if effective:
        h1 = h_dispersive_effective(params).entries
        return (
            HamiltonianStage(h0=h1),
            HamiltonianStage(h0=h1 + laser),
        )
    osc = _dispersive_osc(params).entries
    zero = np.zeros_like(osc)
    return (
        HamiltonianStage(h0=zero, osc=osc, delta=params.delta),
        HamiltonianStage(h0=laser, osc=osc, delta=params.delta),
    )


def fastest_frequency(params, schedule=None):
    """Largest ordinary frequency in the problem, in cycles/us.

    Used to cap integrator steps at one twentieth of the fastest period.
    """
    scales = [params.lambda_tilde, params.omega_tilde, abs(params.delta), params.kappa]
    return max(scales) / (2.0 * np.pi)
