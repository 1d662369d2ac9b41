"""Closed-form solutions of the two ideal transfer stages.

For the resonant stage the dynamics close on four basis states,

    |r, 0, e~>,  |r, 0, g~>,  |r, 1, g~>,  |s, 0, g~>,

and the amplitudes admit elementary expressions in the collective rate
lambda_tilde = sqrt(lambda_i^2 + lambda_sq^2).  For the dispersive stage
each photon-number sector evolves independently, which is what makes the
protocol work for any resonator state of fixed photon parity.

These formulas are the independent oracle the numerical integrator is
validated against; they must not import anything from the model or
evolve modules.
"""

import dataclasses

import numpy as np

from . import hilbert as hb
from .errors import ParameterError, StateError, TransferTimeError

KINDS = ("resonant", "dispersive")

ZERO_AMPLITUDE = 1e-12


def _check_kind(kind):
    if kind not in KINDS:
        raise ParameterError(f"unknown protocol kind {kind!r}, expected one of {KINDS}")


def _check_couplings(lambda_i, lambda_sq):
    if lambda_i <= 0 or lambda_sq <= 0:
        raise ParameterError(
            f"couplings must be positive, got lambda_i={lambda_i}, lambda_sq={lambda_sq}"
        )


@dataclasses.dataclass(frozen=True)
class ResonantCoefficients:
    """Amplitudes of the resonant stage at one instant.

    c_e multiplies |r, 0, e~>, c_g multiplies |r, 0, g~>, alpha_1
    multiplies |r, 1, g~> and alpha_0 multiplies |s, 0, g~>.
    """

    c_e: complex
    c_g: complex
    alpha_1: complex
    alpha_0: complex

    def norm(self):
        return float(
            np.sqrt(
                abs(self.c_e) ** 2
                + abs(self.c_g) ** 2
                + abs(self.alpha_1) ** 2
                + abs(self.alpha_0) ** 2
            )
        )


def resonant_coefficients(lambda_i, lambda_sq, bloch, t):
    """Exact resonant-stage amplitudes at time t for an encoded Bloch state.

    The g~ component is dark (it never exchanges an excitation), while the
    e~ component Rabi-oscillates through the one-photon state into |s>.
    """
    _check_couplings(lambda_i, lambda_sq)
    lt = np.hypot(lambda_i, lambda_sq)
    lt2 = lt * lt
    half = 0.5 * bloch.theta
    ce0 = np.cos(half)
    c_e = ce0 * (lambda_sq**2 * np.cos(lt * t) + lambda_i**2) / lt2
    c_g = np.exp(1j * bloch.phi) * np.sin(half)
    alpha_1 = -1j * ce0 * lambda_sq * np.sin(lt * t) / lt
    alpha_0 = -ce0 * (2.0 * lambda_i * lambda_sq / lt2) * np.sin(0.5 * lt * t) ** 2
    return ResonantCoefficients(complex(c_e), complex(c_g), complex(alpha_1), complex(alpha_0))


def resonant_state(coeffs, layout):
    """Assemble the full-space state vector from resonant coefficients."""
    vec = np.zeros(layout.total_dim, dtype=complex)
    vec[layout.index(hb.ATOM_R, 0, hb.SQ_E)] = coeffs.c_e
    vec[layout.index(hb.ATOM_R, 0, hb.SQ_G)] = coeffs.c_g
    vec[layout.index(hb.ATOM_R, 1, hb.SQ_G)] = coeffs.alpha_1
    vec[layout.index(hb.ATOM_S, 0, hb.SQ_G)] = coeffs.alpha_0
    return vec


def resonant_transfer_time(lambda_i, lambda_sq):
    """First time at which the e~ excitation sits entirely in |s>.

    A real solution requires the arcsine argument
    (lambda_tilde^4 / (4 lambda_i^2 lambda_sq^2))^(1/4) <= 1, which by the
    arithmetic-geometric mean inequality happens only for equal couplings;
    unequal couplings raise TransferTimeError.  At equality the time is
    pi / (sqrt(2) lambda).
    """
    _check_couplings(lambda_i, lambda_sq)
    lt = np.hypot(lambda_i, lambda_sq)
    arg = lt * lt / (2.0 * lambda_i * lambda_sq)  # square of the arcsine argument
    if arg > 1.0 + 1e-12:
        raise TransferTimeError(
            "complete transfer needs equal couplings: "
            f"lambda_i={lambda_i}, lambda_sq={lambda_sq} leave |c_e| > 0 at all times"
        )
    return float(2.0 / lt * np.arcsin(min(1.0, np.sqrt(arg)) ** 0.5))


@dataclasses.dataclass(frozen=True)
class DispersiveCoefficients:
    """Photon-number-resolved amplitudes of the dispersive stage.

    Arrays indexed by n: c_e_n multiplies |r, n, e~>, c_g_n multiplies
    |r, n, g~> and c_s_n multiplies |s, n, g~>.
    """

    c_e_n: np.ndarray
    c_g_n: np.ndarray
    c_s_n: np.ndarray

    def norm(self):
        return float(
            np.sqrt(
                np.sum(np.abs(self.c_e_n) ** 2)
                + np.sum(np.abs(self.c_g_n) ** 2)
                + np.sum(np.abs(self.c_s_n) ** 2)
            )
        )


def _check_fock_amplitudes(fock_amplitudes):
    amps = np.asarray(fock_amplitudes, dtype=complex)
    if amps.ndim != 1:
        raise StateError("fock amplitudes must be a vector")
    if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
        raise StateError("fock amplitudes not normalized")
    return amps


def dispersive_coefficients(chi, bloch, fock_amplitudes, t):
    """Exact dispersive-stage amplitudes at time t.

    Each photon sector n sees a two-state rotation between |r, n, e~> and
    |s, n, g~> at rate 2 chi, while the dark g~ amplitudes only collect
    number-dependent phases e^(2 i n chi t).
    """
    if chi <= 0:
        raise ParameterError(f"chi must be positive, got {chi}")
    amps = _check_fock_amplitudes(fock_amplitudes)
    n = np.arange(amps.size)
    half = 0.5 * bloch.theta
    ce0 = np.cos(half)
    rot = np.exp(-2j * chi * t)
    c_e_n = 0.5 * amps * (rot + 1.0) * ce0
    c_g_n = amps * np.exp(2j * n * chi * t) * np.exp(1j * bloch.phi) * np.sin(half)
    c_s_n = 0.5 * amps * (rot - 1.0) * ce0
    return DispersiveCoefficients(c_e_n, c_g_n, c_s_n)


def dispersive_state(coeffs, layout):
    """Assemble the full-space state vector from dispersive coefficients."""
    if coeffs.c_e_n.size > layout.fock_dim:
        raise StateError(
            f"coefficients cover {coeffs.c_e_n.size} photon sectors, "
            f"layout has {layout.fock_dim}"
        )
    vec = np.zeros(layout.total_dim, dtype=complex)
    for n in range(coeffs.c_e_n.size):
        vec[layout.index(hb.ATOM_R, n, hb.SQ_E)] = coeffs.c_e_n[n]
        vec[layout.index(hb.ATOM_R, n, hb.SQ_G)] = coeffs.c_g_n[n]
        vec[layout.index(hb.ATOM_S, n, hb.SQ_G)] = coeffs.c_s_n[n]
    return vec


def ideal_final_state(kind, bloch):
    """Atomic state delivered by a lossless protocol, written as published.

    The resonant form carries a global phase i; the dispersive form is
    conventionally written with that i attached to the |g> amplitude
    instead.  Both are perfect transfers of the encoded qubit.
    """
    _check_kind(kind)
    half = 0.5 * bloch.theta
    amps = np.zeros(hb.ATOM_DIM, dtype=complex)
    if kind == "resonant":
        amps[hb.ATOM_E] = 1j * np.cos(half)
        amps[hb.ATOM_G] = 1j * np.exp(1j * bloch.phi) * np.sin(half)
    else:
        amps[hb.ATOM_E] = np.cos(half)
        amps[hb.ATOM_G] = 1j * np.exp(1j * bloch.phi) * np.sin(half)
    return amps


@dataclasses.dataclass(frozen=True)
class ParityCheck:
    """Whether a resonator state factors out of the dispersive transfer."""

    factorizable: bool
    parity: str | None  # "even" or "odd" when factorizable


def parity_factorization_check(fock_amplitudes):
    """Check that all photon-number support shares one parity.

    At the dispersive transfer time the dark amplitudes pick up phases
    (-1)^n; a fixed parity turns them into a common factor, so the atomic
    state disentangles from the resonator.  Mixed parity does not.
    """
    amps = _check_fock_amplitudes(fock_amplitudes)
    occupied = np.abs(amps) > ZERO_AMPLITUDE
    has_even = bool(np.any(occupied[0::2]))
    has_odd = bool(np.any(occupied[1::2]))
    if has_even and has_odd:
        return ParityCheck(False, None)
    return ParityCheck(True, "odd" if has_odd else "even")
