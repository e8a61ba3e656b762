"""Exact dynamics of the rotated spin-boson Hamiltonian under the RWA.

In the rotated frame H = (Delta/2) sigma_z + sum_l w_l b_l^+ b_l
+ (1/2) sum_l lambda_l (b_l^+ sigma_- + b_l sigma_+).  The total
excitation number is conserved, so an initial qubit state with a vacuum
bath stays inside the zero/one-excitation subspace spanned by
|->|0>, |+>|0> and |-> b_l^+|0>.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError
from .model import BathModes


@dataclass
class RwaState:
    """Amplitudes in the zero/one-excitation subspace."""

    c_ground: complex
    c_zero: complex
    c_modes: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.c_modes = np.asarray(self.c_modes, dtype=complex)
        if self.c_modes.ndim != 1:
            raise ValueError("c_modes must be a 1-d vector")

    @property
    def norm(self) -> float:
        return (
            abs(self.c_ground) ** 2
            + abs(self.c_zero) ** 2
            + float(np.sum(np.abs(self.c_modes) ** 2))
        )

    @property
    def excitation_number(self) -> float:
        return abs(self.c_zero) ** 2 + float(np.sum(np.abs(self.c_modes) ** 2))


@dataclass
class RwaTrajectory:
    times: np.ndarray
    states: list
    norm_series: np.ndarray
    energy_series: np.ndarray
    excitation_series: np.ndarray


def rwa_rhs(state: RwaState, bath: BathModes, delta: float):
    """Time derivatives (c_ground_dot, c_zero_dot, c_modes_dot)."""
    if len(state.c_modes) != bath.n_modes:
        raise ValueError("state and bath mode counts differ")
    c0, cl = state.c_zero, state.c_modes
    c0_dot = -1j * (0.5 * delta * c0 + 0.5 * np.dot(bath.lambdas, cl))
    cl_dot = -1j * ((bath.omegas - 0.5 * delta) * cl + 0.5 * bath.lambdas * c0)
    cg_dot = 1j * 0.5 * delta * state.c_ground
    return cg_dot, c0_dot, cl_dot


def rwa_energy(state: RwaState, bath: BathModes, delta: float) -> float:
    """<H> in the zero/one-excitation subspace."""
    c0, cl, cg = state.c_zero, state.c_modes, state.c_ground
    diag = 0.5 * delta * (
        abs(c0) ** 2 - abs(cg) ** 2 - float(np.sum(np.abs(cl) ** 2))
    ) + float(np.dot(bath.omegas, np.abs(cl) ** 2))
    cross = float(np.dot(bath.lambdas, np.real(c0 * np.conj(cl))))
    return diag + cross


def _rk4_step(y, omegas, lambdas, delta, dt):
    def rhs(z):
        c0, cl = z[0], z[1:]
        c0_dot = -1j * (0.5 * delta * c0 + 0.5 * np.dot(lambdas, cl))
        cl_dot = -1j * ((omegas - 0.5 * delta) * cl + 0.5 * lambdas * c0)
        return np.concatenate(([c0_dot], cl_dot))

    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def evolve_rwa(
    initial: RwaState,
    bath: BathModes,
    delta: float,
    times: np.ndarray,
    dt: float,
) -> RwaTrajectory:
    """Propagate with fixed-step RK4, snapshotting at the output times.

    The decoupled ground amplitude evolves by its exact phase
    exp(i Delta t / 2); only the one-excitation sector is integrated.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("times must be a nonempty 1-d grid")
    if np.any(np.diff(times) <= 0) or times[0] < 0:
        raise ValueError("times must be nonnegative and strictly increasing")
    steps = np.rint(times / dt).astype(int)
    if np.max(np.abs(steps * dt - times)) > 1e-9 * max(1.0, times[-1]):
        raise ValueError("output times must be integer multiples of dt")
    if len(initial.c_modes) != bath.n_modes:
        raise ValueError("initial state and bath mode counts differ")

    y = np.concatenate(([complex(initial.c_zero)], initial.c_modes.astype(complex)))
    cg0 = complex(initial.c_ground)

    states = []
    norms = np.empty(len(times))
    energies = np.empty(len(times))
    excitations = np.empty(len(times))
    out = 0
    for k in range(steps[-1] + 1):
        if out < len(steps) and k == steps[out]:
            t = k * dt
            if not np.all(np.isfinite(y)):
                raise SolverError(f"non-finite RWA state at t={t}")
            st = RwaState(
                c_ground=cg0 * np.exp(1j * 0.5 * delta * t),
                c_zero=y[0],
                c_modes=y[1:].copy(),
                time=t,
            )
            norms[out] = st.norm
            energies[out] = rwa_energy(st, bath, delta)
            excitations[out] = st.excitation_number
            states.append(st)
            out += 1
        if k < steps[-1]:
            y = _rk4_step(y, bath.omegas, bath.lambdas, delta, dt)
    return RwaTrajectory(
        times=times,
        states=states,
        norm_series=norms,
        energy_series=energies,
        excitation_series=excitations,
    )
