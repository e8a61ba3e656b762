"""Time-dependent variational dynamics of a single spin-boson pair.

The trial state is a two-branch coherent superposition

    |phi(t)> = A(t)|+> exp(sum_l f_l b_l^+ - h.c.)|0>
             + B(t)|-> exp(sum_l g_l b_l^+ - h.c.)|0>

propagated by the Dirac-Frenkel variational equations of motion under

    H = -(Delta/2) sigma_x + sum_l w_l b_l^+ b_l
        + (sigma_z/2) sum_l lambda_l (b_l^+ + b_l).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError, VariationalBreakdown
from .model import BathModes

# Regularizer for the amplitude ratios B/A and A/B in the displacement
# equations; an exactly-zero amplitude carries no branch weight, so the
# perturbation only affects observables at O(eps).
AMP_EPS = 1e-12

NORM_HARD_BOUND = 1e-4


@dataclass
class D1State:
    """Variational parameters at one instant."""

    a_amp: complex
    b_amp: complex
    f: np.ndarray
    g: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.f = np.asarray(self.f, dtype=complex)
        self.g = np.asarray(self.g, dtype=complex)
        if self.f.shape != self.g.shape or self.f.ndim != 1:
            raise ValueError("f and g must be 1-d vectors of equal length")

    @property
    def norm(self) -> float:
        """|A|^2 + |B|^2 (spin states orthonormal, coherent states normalized)."""
        return abs(self.a_amp) ** 2 + abs(self.b_amp) ** 2


@dataclass
class D1Trajectory:
    """Snapshots of a variational trajectory plus conservation diagnostics."""

    times: np.ndarray
    states: list
    norm_series: np.ndarray
    energy_series: np.ndarray


def overlap_factor(f: np.ndarray, g: np.ndarray) -> complex:
    """Coherent-state overlap <z_f|z_g>.

    Returns exp(sum_l [conj(f_l) g_l - (|f_l|^2 + |g_l|^2)/2]).
    """
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if f.shape != g.shape:
        raise ValueError("displacement vectors must have equal length")
    expo = np.sum(np.conj(f) * g) - 0.5 * (
        np.sum(np.abs(f) ** 2) + np.sum(np.abs(g) ** 2)
    )
    return complex(np.exp(expo))


def _rhs(a, b, f, g, omegas, lambdas, delta):
    """Right-hand side of the variational equations of motion.

    The displacement equations contain no amplitude derivatives, so they
    are solved first and substituted into the amplitude equations.
    """
    r_fg = np.exp(
        np.sum(np.conj(f) * g)
        - 0.5 * (np.sum(np.abs(f) ** 2) + np.sum(np.abs(g) ** 2))
    )
    b_over_a = b * np.conj(a) / (abs(a) ** 2 + AMP_EPS)
    a_over_b = a * np.conj(b) / (abs(b) ** 2 + AMP_EPS)

    fdot = -1j * (
        0.5 * lambdas + omegas * f + 0.5 * delta * b_over_a * (f - g) * r_fg
    )
    gdot = -1j * (
        -0.5 * lambdas + omegas * g + 0.5 * delta * a_over_b * (g - f) * np.conj(r_fg)
    )

    adot = -1j * (
        a * np.imag(np.sum(fdot * np.conj(f)))
        + a * np.dot(lambdas, f.real)
        - 0.5 * delta * b * r_fg
        + a * np.dot(omegas, np.abs(f) ** 2)
    )
    bdot = -1j * (
        b * np.imag(np.sum(gdot * np.conj(g)))
        - b * np.dot(lambdas, g.real)
        - 0.5 * delta * a * np.conj(r_fg)
        + b * np.dot(omegas, np.abs(g) ** 2)
    )
    return adot, bdot, fdot, gdot


def eom_rhs(state: D1State, bath: BathModes, delta: float):
    """Time derivatives (Adot, Bdot, fdot, gdot) of the variational parameters."""
    if not (
        np.isfinite(state.a_amp)
        and np.isfinite(state.b_amp)
        and np.all(np.isfinite(state.f))
        and np.all(np.isfinite(state.g))
    ):
        raise SolverError(f"non-finite variational state at t={state.time}")
    if len(state.f) != bath.n_modes:
        raise ValueError("state and bath mode counts differ")
    return _rhs(
        state.a_amp, state.b_amp, state.f, state.g, bath.omegas, bath.lambdas, delta
    )


def _pack(a, b, f, g):
    return np.concatenate(([a, b], f, g))


def _rhs_flat(y, out, omegas, lam_half, delta, n):
    """In-place variant of the equations of motion on a packed vector."""
    a, b = y[0], y[1]
    f = y[2 : 2 + n]
    g = y[2 + n :]
    fc = np.conj(f)
    gc = np.conj(g)
    abs_f2 = np.real(fc * f)
    abs_g2 = np.real(gc * g)
    r_fg = np.exp(np.sum(fc * g) - 0.5 * (np.sum(abs_f2) + np.sum(abs_g2)))
    b_over_a = b * np.conj(a) / (abs(a) ** 2 + AMP_EPS)
    a_over_b = a * np.conj(b) / (abs(b) ** 2 + AMP_EPS)

    fdot = out[2 : 2 + n]
    gdot = out[2 + n :]
    diff = f - g
    np.multiply(omegas, f, out=fdot)
    fdot += lam_half
    fdot += (0.5 * delta * b_over_a * r_fg) * diff
    fdot *= -1j
    np.multiply(omegas, g, out=gdot)
    gdot -= lam_half
    gdot -= (0.5 * delta * a_over_b * np.conj(r_fg)) * diff
    gdot *= -1j

    out[0] = -1j * (
        a * np.sum(fdot * fc).imag
        + 2.0 * a * np.dot(lam_half, f).real
        - 0.5 * delta * b * r_fg
        + a * np.dot(omegas, abs_f2)
    )
    out[1] = -1j * (
        b * np.sum(gdot * gc).imag
        - 2.0 * b * np.dot(lam_half, g).real
        - 0.5 * delta * a * np.conj(r_fg)
        + b * np.dot(omegas, abs_g2)
    )
    return out


class _Rk4:
    """Classical RK4 with preallocated stage buffers."""

    def __init__(self, omegas, lambdas, delta):
        self.omegas = omegas
        self.lam_half = 0.5 * lambdas
        self.delta = delta
        n = len(omegas)
        self.n = n
        dim = 2 + 2 * n
        self.k1 = np.empty(dim, dtype=complex)
        self.k2 = np.empty(dim, dtype=complex)
        self.k3 = np.empty(dim, dtype=complex)
        self.k4 = np.empty(dim, dtype=complex)
        self.yt = np.empty(dim, dtype=complex)

    def step(self, y, dt):
        w, lh, d, n = self.omegas, self.lam_half, self.delta, self.n
        k1, k2, k3, k4, yt = self.k1, self.k2, self.k3, self.k4, self.yt
        _rhs_flat(y, k1, w, lh, d, n)
        np.multiply(k1, 0.5 * dt, out=yt)
        yt += y
        _rhs_flat(yt, k2, w, lh, d, n)
        np.multiply(k2, 0.5 * dt, out=yt)
        yt += y
        _rhs_flat(yt, k3, w, lh, d, n)
        np.multiply(k3, dt, out=yt)
        yt += y
        _rhs_flat(yt, k4, w, lh, d, n)
        k2 += k3
        k2 *= 2.0
        k2 += k1
        k2 += k4
        k2 *= dt / 6.0
        y = y + k2
        return y


def _rk4_step(y, omegas, lambdas, delta, dt, n):
    return _Rk4(omegas, lambdas, delta).step(y, dt)


def step(state: D1State, bath: BathModes, delta: float, dt: float) -> D1State:
    """Advance the state by one classical fourth-order Runge-Kutta step."""
    if dt <= 0:
        raise ValueError("dt must be > 0")
    n = bath.n_modes
    y = _pack(complex(state.a_amp), complex(state.b_amp), state.f, state.g)
    y = _rk4_step(y, bath.omegas, bath.lambdas, delta, dt, n)
    return D1State(
        a_amp=y[0], b_amp=y[1], f=y[2 : 2 + n], g=y[2 + n :], time=state.time + dt
    )


def energy_expectation(state: D1State, bath: BathModes, delta: float) -> float:
    """<phi|H|phi> for a normalized variational state."""
    w, lam = bath.omegas, bath.lambdas
    a, b, f, g = state.a_amp, state.b_amp, state.f, state.g
    tunneling = -0.5 * delta * 2.0 * np.real(
        np.conj(a) * b * overlap_factor(f, g)
    )
    bath_up = abs(a) ** 2 * (
        np.dot(w, np.abs(f) ** 2) + np.dot(lam, f.real)
    )
    bath_down = abs(b) ** 2 * (
        np.dot(w, np.abs(g) ** 2) - np.dot(lam, g.real)
    )
    return float(tunneling + bath_up + bath_down)


def evolve(
    initial: D1State,
    bath: BathModes,
    delta: float,
    times: np.ndarray,
    dt: float,
    norm_bound: float = NORM_HARD_BOUND,
) -> D1Trajectory:
    """Integrate the equations of motion, snapshotting at the output times.

    Output times must be nonnegative integer multiples of dt.  Raises
    VariationalBreakdown if the norm drifts beyond norm_bound.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("times must be a nonempty 1-d grid")
    if np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    if times[0] < 0:
        raise ValueError("times must be nonnegative")
    steps = np.rint(times / dt).astype(int)
    if np.max(np.abs(steps * dt - times)) > 1e-9 * max(1.0, times[-1]):
        raise ValueError("output times must be integer multiples of dt")

    n = bath.n_modes
    if len(initial.f) != n:
        raise ValueError("initial state and bath mode counts differ")
    y = _pack(complex(initial.a_amp), complex(initial.b_amp), initial.f, initial.g)
    integrator = _Rk4(bath.omegas, bath.lambdas, delta)

    states = []
    norms = np.empty(len(times))
    energies = np.empty(len(times))
    out = 0
    for k in range(steps[-1] + 1):
        if out < len(steps) and k == steps[out]:
            if not np.all(np.isfinite(y)):
                raise SolverError(f"non-finite state at t={k * dt}")
            st = D1State(
                a_amp=y[0], b_amp=y[1], f=y[2 : 2 + n].copy(), g=y[2 + n :].copy(),
                time=k * dt,
            )
            norms[out] = st.norm
            energies[out] = energy_expectation(st, bath, delta)
            if abs(norms[out] - 1.0) > norm_bound:
                raise VariationalBreakdown(
                    f"variational breakdown: norm drift {norms[out] - 1.0:.3e} "
                    f"at t={k * dt}"
                )
            states.append(st)
            out += 1
        if k < steps[-1]:
            y = integrator.step(y, dt)
    return D1Trajectory(
        times=times, states=states, norm_series=norms, energy_series=energies
    )
