import numpy as np
import pytest

from entbath.model import BathModes, ModelParams, discretize_bath, spectral_density


def test_spectral_density_ohmic_linear():
    p = ModelParams(alpha=0.1, s=1.0, omega_c=1.0)
    omega = np.array([0.1, 0.5, 0.9])
    np.testing.assert_allclose(spectral_density(omega, p), 2 * 0.1 * omega)


def test_spectral_density_hard_cutoff():
    p = ModelParams(alpha=0.1, omega_c=1.0)
    assert spectral_density(1.5, p) == 0.0
    assert spectral_density(1.0, p) == pytest.approx(0.2)


def test_spectral_density_scalar_and_negative():
    p = ModelParams(alpha=0.2)
    assert isinstance(spectral_density(0.3, p), float)
    with pytest.raises(ValueError):
        spectral_density(-0.1, p)


def test_spectral_density_subohmic_exponent():
    p = ModelParams(alpha=0.1, s=0.5, omega_c=2.0)
    assert spectral_density(0.5, p) == pytest.approx(2 * 0.1 * 2.0**0.5 * 0.5**0.5)


def test_discretize_midpoint_grid():
    p = ModelParams(alpha=0.1, n_modes=4, omega_c=1.0)
    bath = discretize_bath(p)
    np.testing.assert_allclose(bath.omegas, [0.125, 0.375, 0.625, 0.875])
    assert bath.n_modes == 4


def test_discretize_total_coupling_strength():
    # For s=1 the midpoint rule integrates J exactly: sum lambda^2 = alpha omega_c^2.
    for n_modes in (3, 50, 400):
        p = ModelParams(alpha=0.1, n_modes=n_modes)
        bath = discretize_bath(p)
        assert np.sum(bath.lambdas**2) == pytest.approx(0.1, abs=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(delta=-0.1),
        dict(alpha=-0.01),
        dict(s=0.0),
        dict(omega_c=0.0),
        dict(n_modes=0),
        dict(dt=0.0),
        dict(dt=5.0, t_max=1.0),
    ],
)
def test_params_validation(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)


def test_recurrence_warning():
    with pytest.warns(UserWarning, match="recurrence"):
        ModelParams(n_modes=3, t_max=100.0)


def test_bath_modes_validation():
    with pytest.raises(ValueError):
        BathModes(omegas=np.array([0.5, 0.2]), lambdas=np.array([0.1, 0.1]))
    with pytest.raises(ValueError):
        BathModes(omegas=np.array([0.0, 0.2]), lambdas=np.array([0.1, 0.1]))
    with pytest.raises(ValueError):
        BathModes(omegas=np.array([0.1, 0.2]), lambdas=np.array([0.1]))
    with pytest.raises(ValueError):
        BathModes(omegas=np.array([0.1, 0.2]), lambdas=np.array([0.1, -0.1]))
