"""Physical parameters, Ohmic spectral density and bath discretization.

Units: hbar = 1 and the cutoff frequency omega_c sets the energy scale,
so times are measured in 1/omega_c.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModelParams:
    """Physical and numerical parameters of a single qubit-bath pair.

    Parameters
    ----------
    delta : float
        Tunneling amplitude of the two-level system (units of omega_c).
    alpha : float
        Dimensionless qubit-bath coupling constant.
    s : float
        Spectral exponent; s=1 is the Ohmic case.
    omega_c : float
        Bath cutoff frequency (energy unit, default 1).
    n_modes : int
        Number of discretized bath modes.
    dt : float
        Integrator time step.
    t_max : float
        Final simulation time.
    """

    delta: float = 0.2
    alpha: float = 0.1
    s: float = 1.0
    omega_c: float = 1.0
    n_modes: int = 400
    dt: float = 0.02
    t_max: float = 100.0

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.s <= 0:
            raise ValueError("s must be > 0")
        if self.omega_c <= 0:
            raise ValueError("omega_c must be > 0")
        if self.n_modes < 1:
            raise ValueError("n_modes must be >= 1")
        if not 0 < self.dt < self.t_max:
            raise ValueError("require 0 < dt < t_max")
        # The linear grid has a finite-size recurrence time 2*pi/d_omega;
        # simulating past it folds spurious revivals into the dynamics.
        t_rec = 2.0 * np.pi * self.n_modes / self.omega_c
        if self.t_max >= t_rec:
            warnings.warn(
                f"t_max={self.t_max} exceeds the bath recurrence time "
                f"{t_rec:.3g}; increase n_modes",
                stacklevel=2,
            )


@dataclass(frozen=True)
class BathModes:
    """Discretized bath: mode frequencies and coupling strengths."""

    omegas: np.ndarray
    lambdas: np.ndarray

    def __post_init__(self):
        omegas = np.asarray(self.omegas, dtype=float)
        lambdas = np.asarray(self.lambdas, dtype=float)
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "lambdas", lambdas)
        if omegas.ndim != 1 or lambdas.ndim != 1:
            raise ValueError("omegas and lambdas must be 1-d")
        if len(omegas) != len(lambdas):
            raise ValueError("omegas and lambdas must have equal length")
        if not np.all(omegas > 0):
            raise ValueError("mode frequencies must be strictly positive")
        if not np.all(np.diff(omegas) > 0):
            raise ValueError("mode frequencies must be strictly increasing")
        if not np.all(lambdas >= 0):
            raise ValueError("couplings must be nonnegative")

    @property
    def n_modes(self) -> int:
        return len(self.omegas)


def spectral_density(omega, params: ModelParams):
    """Ohmic-family spectral density J(omega) with a hard upper cutoff.

    J(omega) = 2 * alpha * omega_c**(1-s) * omega**s for omega <= omega_c,
    zero above the cutoff.  Accepts scalars or arrays; omega must be
    nonnegative.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("omega must be >= 0")
    j = 2.0 * params.alpha * params.omega_c ** (1.0 - params.s) * omega ** params.s
    j = np.where(omega <= params.omega_c, j, 0.0)
    if j.ndim == 0:
        return float(j)
    return j


def discretize_bath(params: ModelParams) -> BathModes:
    """Discretize J(omega) on a linear midpoint grid.

    Modes sit at omega_l = (l - 1/2) * d_omega with d_omega =
    omega_c / n_modes, and lambda_l**2 = J(omega_l) * d_omega, so the
    discrete sum over lambda_l**2 approximates the integral of J up to
    the cutoff.
    """
    d_omega = params.omega_c / params.n_modes
    omegas = (np.arange(params.n_modes) + 0.5) * d_omega
    lambdas = np.sqrt(spectral_density(omegas, params) * d_omega)
    return BathModes(omegas=omegas, lambdas=np.atleast_1d(lambdas))
