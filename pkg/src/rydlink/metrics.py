"""Transfer targets and readout observables.

The quantity reported everywhere is the root fidelity

    F = sqrt(<t| rho_atom |t>)

between the reduced atomic state and the two-level target encoded by a
Bloch angle pair.  Its square is linear in the density matrix, so mixed
states average the way probabilities do.
"""

import dataclasses
import enum

import numpy as np

from . import hilbert as hb
from .errors import ParameterError, StateError


class Frame(enum.Enum):
    """Phase convention attached to a transfer target.

    RESONANT is the plain encoding.  DISPERSIVE multiplies the |g>
    amplitude by the fixed protocol phase i.  The tag travels with the
    target so experiment code cannot mix conventions silently.
    """

    RESONANT = "resonant"
    DISPERSIVE = "dispersive"


@dataclasses.dataclass(frozen=True)
class BlochAngle:
    """Polar and azimuthal angle of the encoded qubit state."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi + 1e-12:
            raise ParameterError(f"theta must lie in [0, pi], got {self.theta}")

    def squbit_amplitudes(self):
        """(g, e) amplitudes of cos(theta/2)|e> + e^(i phi) sin(theta/2)|g>."""
        half = 0.5 * self.theta
        return np.array(
            [np.exp(1j * self.phi) * np.sin(half), np.cos(half)], dtype=complex
        )


@dataclasses.dataclass(frozen=True)
class TargetState:
    """Atomic state the protocol is supposed to deliver.

    ``amplitudes`` has length 4 in the atomic ordering g, e, r, s.
    """

    amplitudes: np.ndarray
    frame: Frame

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (hb.ATOM_DIM,):
            raise StateError(f"target amplitudes must have length 4, got {amps.shape}")
        if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
            raise StateError("target amplitudes not normalized")
        object.__setattr__(self, "amplitudes", amps)


def target_state(bloch, frame=Frame.RESONANT):
    """Build the atomic transfer target for a Bloch angle pair.

    The g amplitude carries the azimuthal phase; in the dispersive frame
    it picks up one extra factor of i, which is a constant of that
    protocol rather than a property of the input state.
    """
    half = 0.5 * bloch.theta
    g_amp = np.exp(1j * bloch.phi) * np.sin(half)
    if frame is Frame.DISPERSIVE:
        g_amp *= 1j
    amps = np.zeros(hb.ATOM_DIM, dtype=complex)
    amps[hb.ATOM_G] = g_amp
    amps[hb.ATOM_E] = np.cos(half)
    return TargetState(amps, frame)


def fidelity(rho_atom, target):
    """Root fidelity of a reduced atomic state against a target.

    Parameters
    ----------
    rho_atom : DensityMatrix or ndarray
        4 x 4 atomic state.
    target : TargetState

    Returns
    -------
    float
    """
    entries = rho_atom.entries if isinstance(rho_atom, hb.DensityMatrix) else np.asarray(rho_atom)
    if entries.shape != (hb.ATOM_DIM, hb.ATOM_DIM):
        raise StateError(f"expected a 4 x 4 atomic state, got shape {entries.shape}")
    t = target.amplitudes
    overlap = np.vdot(t, entries @ t).real
    return float(np.sqrt(max(overlap, 0.0)))


@dataclasses.dataclass(frozen=True)
class SnapshotObservables:
    """Populations and mean photon number extracted from one state."""

    n_mean: float
    p_g: float
    p_e: float
    p_r: float
    p_s: float
    p_sq_g: float
    p_sq_e: float


def observables(rho, layout):
    """Atomic and squbit populations plus the resonator mean photon number.

    Only the diagonal of the full-space state enters, so this stays cheap
    even when called at every sample time.
    """
    entries = rho.entries if isinstance(rho, hb.DensityMatrix) else np.asarray(rho)
    dim = layout.total_dim
    if entries.shape != (dim, dim):
        raise StateError(f"state shape {entries.shape} does not match layout dim {dim}")
    diag = np.diag(entries).real.reshape(layout.dims)
    atom_pops = diag.sum(axis=(1, 2))
    sq_pops = diag.sum(axis=(0, 1))
    n_weights = diag.sum(axis=(0, 2))
    n_mean = float(np.arange(layout.fock_dim) @ n_weights)
    return SnapshotObservables(
        n_mean=n_mean,
        p_g=float(atom_pops[hb.ATOM_G]),
        p_e=float(atom_pops[hb.ATOM_E]),
        p_r=float(atom_pops[hb.ATOM_R]),
        p_s=float(atom_pops[hb.ATOM_S]),
        p_sq_g=float(sq_pops[hb.SQ_G]),
        p_sq_e=float(sq_pops[hb.SQ_E]),
    )
