import numpy as np
import pytest

from rydlink import hilbert as hb
from rydlink.errors import LayoutError, StateError


def test_layout_dims_and_flat_index():
    layout = hb.HilbertLayout(fock_dim=10)
    assert layout.dims == (4, 10, 2)
    assert layout.total_dim == 80
    # hand-computed flat rows: (atom*fock + n)*2 + sq
    assert layout.index(0, 0, 0) == 0
    assert layout.index(hb.ATOM_S, 0, hb.SQ_G) == 60
    assert layout.index(hb.ATOM_E, 0, hb.SQ_G) == 20
    assert layout.index(hb.ATOM_R, 1, hb.SQ_G) == 42
    assert layout.index(3, 9, 1) == 79


def test_layout_rejects_bad_inputs():
    with pytest.raises(LayoutError):
        hb.HilbertLayout(fock_dim=1)
    with pytest.raises(LayoutError):
        hb.HilbertLayout(fock_dim=10).index(4, 0, 0)
    with pytest.raises(LayoutError):
        hb.HilbertLayout(fock_dim=10).index(0, 10, 0)


def test_tensor_matches_nested_kron():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    c = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    np.testing.assert_allclose(hb.tensor(a, b, c), np.kron(np.kron(a, b), c))


def test_embed_atom_operator_moves_s_to_e():
    # |e><s| embedded on the atom factor must map flat row 60 to flat row 20
    layout = hb.HilbertLayout(fock_dim=10)
    op = hb.embed(hb.ketbra(4, hb.ATOM_E, hb.ATOM_S), "atom", layout)
    vec = layout.basis_vector(hb.ATOM_S, 0, hb.SQ_G)
    out = op.entries @ vec
    np.testing.assert_allclose(out, layout.basis_vector(hb.ATOM_E, 0, hb.SQ_G))
    assert out[20] == 1.0


def test_embed_respects_factor_ordering():
    layout = hb.HilbertLayout(fock_dim=3)
    x = hb.ketbra(4, 1, 2)
    y = hb.ketbra(2, 0, 1)
    lifted = hb.embed(x, "atom", layout) @ hb.embed(y, "squbit", layout)
    expected = hb.tensor(x, np.eye(3), y)
    np.testing.assert_allclose(lifted.entries, expected)


def test_embed_rejects_wrong_shape_and_slot():
    layout = hb.HilbertLayout(fock_dim=5)
    with pytest.raises(LayoutError):
        hb.embed(np.eye(3), "atom", layout)
    with pytest.raises(LayoutError):
        hb.embed(np.eye(4), "cavity", layout)


def test_annihilation_ladder_action():
    a = hb.annihilation(6)
    vec = np.zeros(6, dtype=complex)
    vec[3] = 1.0
    np.testing.assert_allclose(a @ vec, np.sqrt(3.0) * np.eye(6)[2])
    assert np.all(a @ np.eye(6)[0] == 0)


def test_commutator_identity_breaks_only_at_truncation():
    # [a, a+] = 1 except in the top Fock level, where the truncated
    # product a a+ vanishes and the commutator reads 1 - fock_dim.
    layout = hb.HilbertLayout(fock_dim=10)
    a = hb.embed(hb.annihilation(10), "resonator", layout)
    comm = (a @ a.dag - a.dag @ a).entries
    diag = np.diag(comm).real.reshape(4, 10, 2)
    assert np.allclose(diag[:, :9, :], 1.0)
    assert np.allclose(diag[:, 9, :], -9.0)
    assert np.max(np.abs(comm - np.diag(np.diag(comm)))) == 0.0


def test_composite_operator_algebra_and_layout_guard():
    layout = hb.HilbertLayout(fock_dim=3)
    other = hb.HilbertLayout(fock_dim=4)
    a = hb.embed(hb.annihilation(3), "resonator", layout)
    assert np.allclose((2.0 * a - a).entries, a.entries)
    assert np.allclose(a.dag.entries, a.entries.conj().T)
    with pytest.raises(LayoutError):
        _ = a + hb.embed(hb.annihilation(4), "resonator", other)


def test_pure_state_from_indices_and_amplitudes():
    layout = hb.HilbertLayout(fock_dim=4)
    rho = hb.pure_state(hb.ATOM_R, 0, hb.SQ_E, layout)
    idx = layout.index(hb.ATOM_R, 0, hb.SQ_E)
    assert rho.entries[idx, idx] == 1.0
    assert np.trace(rho.entries).real == pytest.approx(1.0)

    amps = np.array([1.0, 1.0j]) / np.sqrt(2.0)
    rho2 = hb.pure_state(hb.ATOM_G, 0, amps, layout)
    red = hb.partial_trace(rho2, "squbit", layout)
    np.testing.assert_allclose(red.entries, np.outer(amps, amps.conj()), atol=1e-12)


def test_pure_state_rejects_unnormalized_amplitudes():
    layout = hb.HilbertLayout(fock_dim=4)
    with pytest.raises(StateError):
        hb.pure_state(hb.ATOM_G, 0, np.array([1.0, 1.0]), layout)
    with pytest.raises(StateError):
        hb.pure_state(7, 0, hb.SQ_G, layout)


def test_partial_trace_of_product_state_recovers_factors():
    layout = hb.HilbertLayout(fock_dim=5)
    rng = np.random.default_rng(11)
    res = rng.normal(size=5) + 1j * rng.normal(size=5)
    res /= np.linalg.norm(res)
    rho = hb.pure_state(hb.ATOM_E, res, hb.SQ_G, layout)
    red_res = hb.partial_trace(rho, "resonator", layout)
    np.testing.assert_allclose(red_res.entries, np.outer(res, res.conj()), atol=1e-12)
    red_atom = hb.partial_trace(rho, "atom", layout)
    np.testing.assert_allclose(red_atom.entries, hb.ketbra(4, 1, 1), atol=1e-12)


def test_partial_trace_of_entangled_state_is_mixed():
    layout = hb.HilbertLayout(fock_dim=3)
    psi = (layout.basis_vector(hb.ATOM_G, 0, hb.SQ_G)
           + layout.basis_vector(hb.ATOM_E, 0, hb.SQ_E)) / np.sqrt(2.0)
    rho = hb.DensityMatrix(np.outer(psi, psi.conj()))
    red = hb.partial_trace(rho, "atom", layout)
    np.testing.assert_allclose(np.diag(red.entries).real, [0.5, 0.5, 0.0, 0.0], atol=1e-12)
    assert red.purity() == pytest.approx(0.5)
    # keeping two factors preserves purity of the pure joint state
    joint = hb.partial_trace(rho, ("atom", "squbit"), layout)
    assert joint.purity() == pytest.approx(1.0)
    assert joint.dim == 8


def test_partial_trace_keeps_layout_order_for_nonadjacent_factors():
    layout = hb.HilbertLayout(fock_dim=3)
    rho = hb.pure_state(hb.ATOM_S, 2, hb.SQ_E, layout)
    red = hb.partial_trace(rho, ("atom", "squbit"), layout)
    expected = hb.tensor(hb.ketbra(4, 3, 3), hb.ketbra(2, 1, 1))
    np.testing.assert_allclose(red.entries, expected, atol=1e-12)


def test_partial_trace_preserves_trace_on_random_states():
    layout = hb.HilbertLayout(fock_dim=4)
    rng = np.random.default_rng(3)
    for _ in range(5):
        m = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
        rho = m @ m.conj().T
        rho /= np.trace(rho).real
        for keep in ("atom", "resonator", "squbit", ("atom", "resonator")):
            red = hb.partial_trace(rho, keep, layout)
            assert np.trace(red.entries).real == pytest.approx(1.0, abs=1e-10)


def test_thermal_state_weights_frozen_values():
    # geometric weights nbar^n/(nbar+1)^(n+1); for nbar = 0.6 the first two
    # are 0.625 and 0.234375 before the (tiny) truncation renormalization
    rho = hb.thermal_state(0.6, 15)
    diag = np.diag(rho.entries).real
    assert diag[0] == pytest.approx(0.625, abs=1e-5)
    assert diag[1] == pytest.approx(0.234375, abs=1e-5)
    assert diag.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(diag) < 0)


def test_thermal_state_nbar_zero_is_vacuum():
    rho = hb.thermal_state(0.0, 10)
    expected = np.zeros((10, 10))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho.entries, expected)


def test_thermal_truncation_weight():
    assert hb.thermal_truncation_weight(0.0, 10) == 0.0
    w = hb.thermal_truncation_weight(0.6, 15)
    assert w == pytest.approx((0.6 / 1.6) ** 15)
    assert w < 1e-4


def test_density_matrix_validation():
    good = np.diag([0.5, 0.5]).astype(complex)
    assert hb.DensityMatrix(good).dim == 2
    with pytest.raises(StateError):
        hb.DensityMatrix(np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex))
    with pytest.raises(StateError):
        hb.DensityMatrix(np.diag([0.7, 0.7]).astype(complex))
    with pytest.raises(StateError):
        hb.DensityMatrix(np.diag([1.5, -0.5]).astype(complex))
    # the relaxed floor used for integrator output accepts small negativity
    slightly = np.diag([1.0 + 5e-8, -5e-8]).astype(complex)
    with pytest.raises(StateError):
        hb.DensityMatrix(slightly)
    assert hb.DensityMatrix(slightly, eig_floor=1e-7).dim == 2
