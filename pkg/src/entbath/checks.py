"""Desk-scale cross-validation of both solvers against the Fock oracle.

Three checks, each pairing a production solver with the independent
truncated-space propagator:

* RWA solver amplitudes against exact propagation of the RWA Hamiltonian
  (the one-excitation restriction is exact, so agreement is limited only
  by integration error);
* the zero-tunneling limit, where the coherent-branch ansatz contains
  the exact solution of the independent-boson model;
* weak-coupling concurrence of the full variational dynamics against the
  exact composition.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .composer import (
    EvolutionCache,
    Frame,
    InitialSpec,
    Method,
    density_series,
)
from .concurrence import concurrence_general
from .davydov import D1State, evolve
from .model import ModelParams, discretize_bath
from .rwa import RwaState, evolve_rwa


@dataclass
class CheckResult:
    name: str
    max_diff: float
    tolerance: float
    ladder_diff: float
    ladder_tolerance: float

    @property
    def passed(self) -> bool:
        return (
            self.max_diff <= self.tolerance
            and self.ladder_diff <= self.ladder_tolerance
        )

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict} {self.name}: max diff {self.max_diff:.3e} "
            f"(tol {self.tolerance:.1e}), truncation ladder "
            f"{self.ladder_diff:.3e} (tol {self.ladder_tolerance:.1e})"
        )


def _small_bath(alpha: float, s: float = 1.0, omega_c: float = 1.0, n_modes: int = 3):
    params = ModelParams(
        delta=0.2, alpha=alpha, s=s, omega_c=omega_c, n_modes=n_modes,
        dt=0.02, t_max=60.0,
    )
    return discretize_bath(params)


def check_rwa_equivalence(
    delta: float = 0.2,
    alpha: float = 0.1,
    s: float = 1.0,
    omega_c: float = 1.0,
    t_max: float = 20.0,
    dt: float = 0.02,
) -> CheckResult:
    """RWA solver amplitudes vs exact RWA propagation (3 modes, n_max=2)."""
    bath = _small_bath(alpha, s, omega_c)
    times = np.arange(0.0, t_max + dt / 2, 0.5)
    initial = RwaState(c_ground=0.0, c_zero=1.0, c_modes=np.zeros(3))
    traj = evolve_rwa(initial, bath, delta, times, dt)

    def exact_amplitudes(n_max):
        space = oracle.TruncatedSpace(n_modes=3, n_max=n_max)
        h = oracle.build_hamiltonian(delta, bath, space, frame=Frame.RSB, rwa=True)
        psi0 = oracle.spin_bath_vector([1.0, 0.0], space)
        psis = oracle.ExactPropagator(h).propagate(psi0, times)
        nb = space.bath_dimension
        c0 = psis[:, 0]  # |+>|0...0>
        cl = np.empty((len(times), 3), dtype=complex)
        for l in range(3):
            idx = nb + (space.n_max + 1) ** (2 - l)  # |->, one quantum in mode l
            cl[:, l] = psis[:, idx]
        return c0, cl

    c0_ref, cl_ref = exact_amplitudes(2)
    c0_ref4, cl_ref4 = exact_amplitudes(4)
    ladder = max(
        float(np.max(np.abs(c0_ref4 - c0_ref))),
        float(np.max(np.abs(cl_ref4 - cl_ref))),
    )
    c0 = np.array([st.c_zero for st in traj.states])
    cl = np.array([st.c_modes for st in traj.states])
    diff = max(
        float(np.max(np.abs(c0 - c0_ref))), float(np.max(np.abs(cl - cl_ref)))
    )
    return CheckResult("rwa vs truncated-Fock amplitudes", diff, 1e-6, ladder, 1e-8)


def check_independent_boson(
    alpha: float = 0.005,
    s: float = 1.0,
    omega_c: float = 1.0,
    t_max: float = 20.0,
    dt: float = 0.01,
) -> CheckResult:
    """Zero-tunneling variational state vs exact propagation (3 modes)."""
    bath = _small_bath(alpha, s, omega_c)
    times = np.arange(0.0, t_max + dt / 2, 0.5)
    zeros = np.zeros(3, dtype=complex)
    amp = 1.0 / np.sqrt(2.0)
    initial = D1State(a_amp=amp, b_amp=amp, f=zeros, g=zeros.copy())
    traj = evolve(initial, bath, 0.0, times, dt)

    def exact_states(n_max):
        space = oracle.TruncatedSpace(n_modes=3, n_max=n_max)
        h = oracle.build_hamiltonian(0.0, bath, space, frame=Frame.SB)
        psi0 = oracle.embed_d1_state(
            D1State(a_amp=amp, b_amp=amp, f=zeros, g=zeros.copy()), space
        )
        return space, oracle.ExactPropagator(h).propagate(psi0, times)

    space, psis = exact_states(7)
    space_up, psis_up = exact_states(9)
    # Compare the two references on the common (smaller) basis: with three
    # modes the index map between truncations is a reshape.
    small = psis_up.reshape(len(times), 2, 10, 10, 10)[:, :, :8, :8, :8]
    ladder = float(np.max(np.abs(small.reshape(len(times), -1) - psis)))

    diff = 0.0
    for i, st in enumerate(traj.states):
        emb = oracle.embed_d1_state(st, space)
        diff = max(diff, float(np.max(np.abs(emb - psis[i]))))
    return CheckResult(
        "zero-tunneling variational state vs truncated-Fock", diff, 1e-6, ladder, 1e-8
    )


def check_weak_coupling_concurrence(
    delta: float = 0.2,
    alpha: float = 0.05,
    s: float = 1.0,
    omega_c: float = 1.0,
    t_max: float = 50.0,
    dt: float = 0.02,
    a_squared=(0.25, 0.5, 0.8),
) -> CheckResult:
    """Variational two-qubit concurrence vs the exact composition (3 modes)."""
    params = ModelParams(
        delta=delta, alpha=alpha, s=s, omega_c=omega_c, n_modes=3,
        dt=dt, t_max=t_max + dt,
    )
    bath = discretize_bath(params)
    times = np.arange(0.0, t_max + dt / 2, 0.5)

    def reference(spec, n_max):
        space = oracle.TruncatedSpace(n_modes=3, n_max=n_max)
        rhos = oracle.reference_density_series(spec, delta, bath, space, times)
        return np.asarray(concurrence_general(rhos))

    diff = 0.0
    ladder = 0.0
    cache = EvolutionCache(Frame.RSB, Method.D1, params, bath, times)
    for a2 in a_squared:
        spec = InitialSpec(kind="anti_bell", a=float(np.sqrt(a2)), frame=Frame.RSB)
        dens = density_series(spec, Method.D1, params, bath, times, cache=cache)
        c_var = np.asarray(concurrence_general(dens.rhos))
        c_ref = reference(spec, 6)
        diff = max(diff, float(np.max(np.abs(c_var - c_ref))))
        if a2 == a_squared[0]:
            c_ref_up = reference(spec, 8)
            ladder = float(np.max(np.abs(c_ref_up - c_ref)))
    return CheckResult(
        "variational vs truncated-Fock concurrence", diff, 0.03, ladder, 1e-3
    )


def run_all_checks(delta: float = 0.2, alpha: float = 0.05) -> list[CheckResult]:
    return [
        check_rwa_equivalence(delta=delta),
        check_independent_boson(),
        check_weak_coupling_concurrence(delta=delta, alpha=alpha),
    ]
