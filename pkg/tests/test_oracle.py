import numpy as np
import pytest

from entbath import oracle
from entbath.composer import Frame, InitialSpec
from entbath.davydov import D1State
from entbath.errors import DimensionOverflowError
from entbath.model import BathModes, ModelParams, discretize_bath


def small_bath(n_modes=2, alpha=0.05):
    params = ModelParams(delta=0.2, alpha=alpha, n_modes=n_modes, dt=0.02, t_max=5.0)
    return discretize_bath(params)


def test_space_dimensions():
    space = oracle.TruncatedSpace(n_modes=3, n_max=2)
    assert space.bath_dimension == 27
    assert space.dimension == 54


def test_dimension_guard():
    with pytest.raises(DimensionOverflowError):
        oracle.TruncatedSpace(n_modes=10, n_max=9)


def test_annihilation_matrix_elements():
    space = oracle.TruncatedSpace(n_modes=2, n_max=3)
    b0 = oracle.bath_annihilation(space, 0)
    # <n|b|n+1> = sqrt(n+1) on the first mode; mode 0 varies slowest.
    num = np.diag(b0.conj().T @ b0).real
    expected = np.repeat(np.arange(4), 4)
    np.testing.assert_allclose(num, expected)


def test_hamiltonian_hermitian():
    bath = small_bath()
    space = oracle.TruncatedSpace(n_modes=2, n_max=2)
    for frame in (Frame.SB, Frame.RSB):
        h = oracle.build_hamiltonian(0.2, bath, space, frame=frame)
        np.testing.assert_allclose(h, h.conj().T, atol=1e-14)
    h = oracle.build_hamiltonian(0.2, bath, space, frame=Frame.RSB, rwa=True)
    np.testing.assert_allclose(h, h.conj().T, atol=1e-14)


def test_rwa_requires_rotated_frame():
    bath = small_bath()
    space = oracle.TruncatedSpace(n_modes=2, n_max=2)
    with pytest.raises(ValueError):
        oracle.build_hamiltonian(0.2, bath, space, frame=Frame.SB, rwa=True)


def test_rwa_conserves_excitation_number():
    bath = small_bath()
    space = oracle.TruncatedSpace(n_modes=2, n_max=2)
    h = oracle.build_hamiltonian(0.2, bath, space, frame=Frame.RSB, rwa=True)
    n = oracle.excitation_number(space)
    assert np.max(np.abs(h @ n - n @ h)) < 1e-14


def test_coherent_vector_overlap():
    space = oracle.TruncatedSpace(n_modes=1, n_max=25)
    z = 0.4 + 0.3j
    v = oracle.coherent_bath_vector(np.array([z]), space)
    assert np.vdot(v, v).real == pytest.approx(1.0, abs=1e-12)
    w = oracle.coherent_bath_vector(np.array([0.0j]), space)
    expected = np.exp(-0.5 * abs(z) ** 2)
    assert np.vdot(w, v) == pytest.approx(expected, abs=1e-12)


def test_propagator_unitary():
    bath = small_bath()
    space = oracle.TruncatedSpace(n_modes=2, n_max=2)
    h = oracle.build_hamiltonian(0.2, bath, space, frame=Frame.SB)
    psi0 = oracle.spin_bath_vector([1.0, 0.0], space)
    psi = oracle.exact_propagate(h, psi0, 7.3)
    assert np.vdot(psi, psi).real == pytest.approx(1.0, abs=1e-12)


def test_propagator_rejects_nonhermitian():
    with pytest.raises(ValueError):
        oracle.ExactPropagator(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_embed_d1_state_norm():
    space = oracle.TruncatedSpace(n_modes=2, n_max=20)
    st = D1State(
        a_amp=0.6, b_amp=0.8, f=np.array([0.2, -0.1j]), g=np.array([0.1, 0.3])
    )
    v = oracle.embed_d1_state(st, space)
    assert np.vdot(v, v).real == pytest.approx(1.0, abs=1e-10)


def test_free_reference_density():
    # Near-zero coupling: the exact composition reproduces free two-qubit
    # precession of the anti-Bell state.
    delta = 0.2
    bath = BathModes(omegas=np.array([0.3, 0.7]), lambdas=np.array([1e-9, 1e-9]))
    space = oracle.TruncatedSpace(n_modes=2, n_max=1)
    times = np.array([0.0, 4.0, 9.0])
    spec = InitialSpec(kind="anti_bell", a=0.6, frame=Frame.SB)
    rhos = oracle.reference_density_series(spec, delta, bath, space, times)
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    psi0 = np.zeros(4, dtype=complex)
    psi0[1], psi0[2] = 0.6, 0.8
    for i, t in enumerate(times):
        u1 = np.cos(delta * t / 2) * np.eye(2) + 1j * np.sin(delta * t / 2) * sx
        psi = np.kron(u1, u1) @ psi0
        np.testing.assert_allclose(rhos[i], np.outer(psi, psi.conj()), atol=1e-7)
