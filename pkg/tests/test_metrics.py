import numpy as np
import pytest

from rydlink import hilbert as hb
from rydlink import metrics as mt
from rydlink.errors import ParameterError, StateError


def test_target_state_pole_is_e_in_both_frames():
    for frame in (mt.Frame.RESONANT, mt.Frame.DISPERSIVE):
        t = mt.target_state(mt.BlochAngle(0.0, 0.0), frame)
        np.testing.assert_allclose(t.amplitudes, [0, 1, 0, 0], atol=1e-15)
        assert t.frame is frame


def test_target_state_equator_frozen_amplitudes():
    b = mt.BlochAngle(np.pi / 2, 0.0)
    plain = mt.target_state(b, mt.Frame.RESONANT).amplitudes
    np.testing.assert_allclose(plain, [np.sqrt(0.5), np.sqrt(0.5), 0, 0], atol=1e-12)
    rotated = mt.target_state(b, mt.Frame.DISPERSIVE).amplitudes
    np.testing.assert_allclose(rotated, [1j * np.sqrt(0.5), np.sqrt(0.5), 0, 0], atol=1e-12)


def test_target_state_carries_azimuthal_phase_on_g():
    b = mt.BlochAngle(np.pi / 2, 1.3)
    t = mt.target_state(b).amplitudes
    assert t[hb.ATOM_G] == pytest.approx(np.exp(1.3j) * np.sqrt(0.5))
    assert t[hb.ATOM_E] == pytest.approx(np.sqrt(0.5))


def test_bloch_angle_range_guard():
    with pytest.raises(ParameterError):
        mt.BlochAngle(-0.1, 0.0)
    with pytest.raises(ParameterError):
        mt.BlochAngle(3.3, 0.0)


def test_bloch_squbit_amplitudes_ordering():
    # squbit factor orders (g, e); theta = 0 encodes pure e~
    amps = mt.BlochAngle(0.0, 0.0).squbit_amplitudes()
    np.testing.assert_allclose(amps, [0.0, 1.0])
    amps = mt.BlochAngle(np.pi, 0.7).squbit_amplitudes()
    np.testing.assert_allclose(amps, [np.exp(0.7j), 0.0], atol=1e-12)


def test_fidelity_of_target_with_itself_is_one():
    rng = np.random.default_rng(5)
    for _ in range(10):
        b = mt.BlochAngle(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        t = mt.target_state(b)
        rho = np.outer(t.amplitudes, t.amplitudes.conj())
        assert mt.fidelity(rho, t) == pytest.approx(1.0, abs=1e-12)


def test_fidelity_frozen_mixed_example():
    # fully dephased equator state against the north-pole target: F = sqrt(1/2)
    rho = 0.5 * hb.ketbra(4, hb.ATOM_E, hb.ATOM_E) + 0.5 * hb.ketbra(4, hb.ATOM_G, hb.ATOM_G)
    t = mt.target_state(mt.BlochAngle(0.0, 0.0))
    assert mt.fidelity(rho, t) == pytest.approx(np.sqrt(0.5), abs=1e-12)


def test_fidelity_squared_is_linear_in_the_state():
    rng = np.random.default_rng(17)
    t = mt.target_state(mt.BlochAngle(1.1, 0.4))
    rhos, weights = [], [0.3, 0.45, 0.25]
    for _ in range(3):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = m @ m.conj().T
        rhos.append(rho / np.trace(rho).real)
    mixed = sum(w * r for w, r in zip(weights, rhos))
    f2 = sum(w * mt.fidelity(r, t) ** 2 for w, r in zip(weights, rhos))
    assert mt.fidelity(mixed, t) ** 2 == pytest.approx(f2, abs=1e-12)


def test_fidelity_rejects_full_space_state():
    layout = hb.HilbertLayout(fock_dim=4)
    rho = hb.pure_state(hb.ATOM_E, 0, hb.SQ_G, layout)
    with pytest.raises(StateError):
        mt.fidelity(rho, mt.target_state(mt.BlochAngle(0.0, 0.0)))


def test_observables_frozen_basis_state():
    layout = hb.HilbertLayout(fock_dim=6)
    rho = hb.pure_state(hb.ATOM_E, 2, hb.SQ_G, layout)
    obs = mt.observables(rho, layout)
    assert obs.p_e == pytest.approx(1.0)
    assert obs.p_g == obs.p_r == obs.p_s == pytest.approx(0.0)
    assert obs.n_mean == pytest.approx(2.0)
    assert obs.p_sq_g == pytest.approx(1.0)


def test_observables_populations_sum_to_one():
    layout = hb.HilbertLayout(fock_dim=5)
    rng = np.random.default_rng(23)
    for _ in range(5):
        m = rng.normal(size=(40, 40)) + 1j * rng.normal(size=(40, 40))
        rho = m @ m.conj().T
        rho /= np.trace(rho).real
        obs = mt.observables(rho, layout)
        atom_sum = obs.p_g + obs.p_e + obs.p_r + obs.p_s
        assert atom_sum == pytest.approx(1.0, abs=1e-8)
        assert obs.p_sq_g + obs.p_sq_e == pytest.approx(1.0, abs=1e-8)


def test_observables_thermal_photon_number():
    layout = hb.HilbertLayout(fock_dim=15)
    rho_res = hb.thermal_state(0.6, 15)
    rho = hb.DensityMatrix(
        hb.tensor(hb.ketbra(4, 0, 0), rho_res.entries, hb.ketbra(2, 0, 0))
    )
    obs = mt.observables(rho, layout)
    # truncated and renormalized, so slightly below the nominal 0.6
    assert obs.n_mean == pytest.approx(0.6, abs=1e-4)
