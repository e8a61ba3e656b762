import numpy as np
import pytest

from entbath.model import BathModes, ModelParams, discretize_bath
from entbath.rwa import RwaState, evolve_rwa, rwa_energy, rwa_rhs


def test_single_resonant_mode_rabi():
    # One mode at omega = delta: vacuum Rabi oscillation |c0|^2 = cos^2(lambda t / 2).
    delta, lam = 0.2, 0.05
    bath = BathModes(omegas=np.array([delta]), lambdas=np.array([lam]))
    times = np.arange(0.0, 200.0 + 1e-9, 2.0)
    initial = RwaState(c_ground=0.0, c_zero=1.0, c_modes=np.zeros(1))
    traj = evolve_rwa(initial, bath, delta, times, dt=0.02)
    c0 = np.array([abs(st.c_zero) ** 2 for st in traj.states])
    np.testing.assert_allclose(c0, np.cos(lam * times / 2.0) ** 2, atol=1e-8)


def test_conservation_laws():
    params = ModelParams(delta=0.2, alpha=0.1, n_modes=50, dt=0.02, t_max=60.0)
    bath = discretize_bath(params)
    times = np.arange(0.0, 50.0 + 1e-9, 1.0)
    initial = RwaState(
        c_ground=1.0 / np.sqrt(2.0), c_zero=1.0 / np.sqrt(2.0), c_modes=np.zeros(50)
    )
    traj = evolve_rwa(initial, bath, 0.2, times, dt=0.02)
    assert np.max(np.abs(traj.norm_series - 1.0)) < 1e-10
    assert np.max(np.abs(traj.energy_series - traj.energy_series[0])) < 1e-10
    # c_ground carries no excitation, so N = |c0|^2 + sum |cl|^2 is conserved.
    assert np.max(np.abs(traj.excitation_series - 0.5)) < 1e-10


def test_ground_amplitude_phase():
    params = ModelParams(delta=0.3, alpha=0.05, n_modes=10, dt=0.02, t_max=20.0)
    bath = discretize_bath(params)
    times = np.array([0.0, 5.0, 10.0])
    initial = RwaState(c_ground=0.6, c_zero=0.8, c_modes=np.zeros(10))
    traj = evolve_rwa(initial, bath, 0.3, times, dt=0.02)
    for i, st in enumerate(traj.states):
        assert st.c_ground == pytest.approx(0.6 * np.exp(1j * 0.15 * times[i]))


def test_rhs_values():
    bath = BathModes(omegas=np.array([0.5]), lambdas=np.array([0.1]))
    st = RwaState(c_ground=0.0, c_zero=1.0, c_modes=np.zeros(1))
    cg_dot, c0_dot, cl_dot = rwa_rhs(st, bath, 0.2)
    assert cg_dot == 0.0
    assert c0_dot == pytest.approx(-1j * 0.1)
    assert cl_dot[0] == pytest.approx(-1j * 0.05)


def test_energy_value():
    bath = BathModes(omegas=np.array([0.5]), lambdas=np.array([0.1]))
    st = RwaState(c_ground=0.0, c_zero=1.0, c_modes=np.zeros(1))
    assert rwa_energy(st, bath, 0.2) == pytest.approx(0.1)


def test_state_and_grid_validation():
    bath = BathModes(omegas=np.array([0.5]), lambdas=np.array([0.1]))
    with pytest.raises(ValueError):
        RwaState(c_ground=0.0, c_zero=1.0, c_modes=np.zeros((2, 2)))
    st = RwaState(c_ground=0.0, c_zero=1.0, c_modes=np.zeros(2))
    with pytest.raises(ValueError):
        rwa_rhs(st, bath, 0.2)
    good = RwaState(c_ground=0.0, c_zero=1.0, c_modes=np.zeros(1))
    with pytest.raises(ValueError):
        evolve_rwa(good, bath, 0.2, np.array([0.0, 0.03]), dt=0.02)
