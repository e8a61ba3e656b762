"""Brute-force propagation in a truncated Fock space.

Desk-scale exact dynamics used as an independent correctness reference
for both the variational and the RWA solvers.  The joint Hilbert space
is spin (x) product of per-mode oscillators truncated at n_max quanta.
Basis ordering: spin index first, then the bath product index with mode
0 slowest.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .composer import Frame, InitialSpec, mixed_members, product_components
from .davydov import D1State
from .errors import DimensionOverflowError
from .model import BathModes

MAX_DIMENSION = 2**20

_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_SPLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |+><-|


@dataclass(frozen=True)
class TruncatedSpace:
    """Spin + truncated multimode Fock space."""

    n_modes: int
    n_max: int

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("n_modes must be >= 1")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.dimension > MAX_DIMENSION:
            raise DimensionOverflowError(
                f"truncated space dimension {self.dimension} exceeds {MAX_DIMENSION}"
            )

    @property
    def bath_dimension(self) -> int:
        return (self.n_max + 1) ** self.n_modes

    @property
    def dimension(self) -> int:
        return 2 * self.bath_dimension


def _mode_lowering(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1).astype(complex)


def bath_annihilation(space: TruncatedSpace, mode: int) -> np.ndarray:
    """b_mode on the bath product space."""
    op = np.eye(1, dtype=complex)
    single = _mode_lowering(space.n_max)
    eye = np.eye(space.n_max + 1, dtype=complex)
    for l in range(space.n_modes):
        op = np.kron(op, single if l == mode else eye)
    return op


def build_hamiltonian(
    delta: float,
    bath: BathModes,
    space: TruncatedSpace,
    frame: Frame = Frame.SB,
    rwa: bool = False,
) -> np.ndarray:
    """Dense Hamiltonian matrix on the truncated space."""
    if bath.n_modes != space.n_modes:
        raise ValueError("bath and space mode counts differ")
    if rwa and frame != Frame.RSB:
        raise ValueError("the RWA Hamiltonian is defined in the rotated frame")
    nb = space.bath_dimension
    eye_b = np.eye(nb, dtype=complex)
    h_bath = np.zeros((nb, nb), dtype=complex)
    coupling_b = np.zeros((nb, nb), dtype=complex)
    lowering = []
    for l in range(space.n_modes):
        b = bath_annihilation(space, l)
        lowering.append(b)
        h_bath += bath.omegas[l] * (b.conj().T @ b)
        coupling_b += bath.lambdas[l] * (b + b.conj().T)

    if rwa:
        h = np.kron(0.5 * delta * _SZ, eye_b) + np.kron(np.eye(2), h_bath)
        for l in range(space.n_modes):
            raise_b = lowering[l].conj().T
            h += 0.5 * bath.lambdas[l] * (
                np.kron(_SPLUS.conj().T, raise_b) + np.kron(_SPLUS, lowering[l])
            )
        return h
    if frame == Frame.SB:
        spin = -0.5 * delta * _SX
        coupling_s = 0.5 * _SZ
    else:
        spin = 0.5 * delta * _SZ
        coupling_s = 0.5 * _SX
    return (
        np.kron(spin, eye_b)
        + np.kron(np.eye(2), h_bath)
        + np.kron(coupling_s, coupling_b)
    )


def excitation_number(space: TruncatedSpace) -> np.ndarray:
    """N = sigma_+ sigma_- + sum_l b_l^+ b_l on the truncated space."""
    nb = space.bath_dimension
    n_bath = np.zeros((nb, nb), dtype=complex)
    for l in range(space.n_modes):
        b = bath_annihilation(space, l)
        n_bath += b.conj().T @ b
    return np.kron(_SPLUS @ _SPLUS.conj().T, np.eye(nb)) + np.kron(np.eye(2), n_bath)


class ExactPropagator:
    """Eigendecomposition-based propagator e^{-iHt}."""

    def __init__(self, h: np.ndarray):
        residual = np.max(np.abs(h - h.conj().T))
        if residual > 1e-10:
            raise ValueError(f"Hamiltonian not Hermitian (residual {residual:.3e})")
        self.evals, self.evecs = np.linalg.eigh(h)

    def propagate(self, psi0: np.ndarray, times) -> np.ndarray:
        """States at the requested times, shape (T, dim)."""
        times = np.atleast_1d(np.asarray(times, dtype=float))
        coeffs = self.evecs.conj().T @ np.asarray(psi0, dtype=complex)
        phases = np.exp(-1j * np.outer(times, self.evals))
        return (phases * coeffs[None, :]) @ self.evecs.T


def exact_propagate(h: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """e^{-iHt} psi0 for a single time."""
    return ExactPropagator(h).propagate(psi0, [t])[0]


def coherent_bath_vector(displacements, space: TruncatedSpace) -> np.ndarray:
    """Truncated multimode coherent state |z_1>...|z_M> on the bath space."""
    displacements = np.asarray(displacements, dtype=complex)
    if displacements.shape != (space.n_modes,):
        raise ValueError("one displacement per mode required")
    vec = np.ones(1, dtype=complex)
    ns = np.arange(space.n_max + 1)
    norms = np.sqrt(np.array([factorial(n) for n in ns], dtype=float))
    for z in displacements:
        single = np.exp(-0.5 * abs(z) ** 2) * z**ns / norms
        vec = np.kron(vec, single)
    return vec


def vacuum_vector(space: TruncatedSpace) -> np.ndarray:
    vec = np.zeros(space.bath_dimension, dtype=complex)
    vec[0] = 1.0
    return vec


def embed_d1_state(state: D1State, space: TruncatedSpace) -> np.ndarray:
    """Variational state as a vector on the truncated space."""
    up = state.a_amp * coherent_bath_vector(state.f, space)
    down = state.b_amp * coherent_bath_vector(state.g, space)
    return np.concatenate([up, down])


def spin_bath_vector(spin, space: TruncatedSpace) -> np.ndarray:
    """|spin> (x) vacuum on the truncated space."""
    return np.kron(np.asarray(spin, dtype=complex), vacuum_vector(space))


def single_qubit_kernel(psi_m: np.ndarray, psi_n: np.ndarray) -> np.ndarray:
    """Bath trace of |psi_m><psi_n|: a 2x2 matrix."""
    a = psi_m.reshape(2, -1)
    b = psi_n.reshape(2, -1)
    return a @ b.conj().T


def reference_density_series(
    spec: InitialSpec,
    delta: float,
    bath: BathModes,
    space: TruncatedSpace,
    times,
    rwa: bool = False,
) -> np.ndarray:
    """Exact reduced two-qubit density matrices, shape (T, 4, 4).

    Mirrors the variational composition but propagates each single-qubit
    factor exactly on the truncated space.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    h = build_hamiltonian(delta, bath, space, frame=spec.frame, rwa=rwa)
    prop = ExactPropagator(h)

    if spec.kind == "mixed":
        members = mixed_members(spec.a)
    else:
        members = [(1.0, product_components(spec))]

    spinors = {}
    for _, components in members:
        for c in components:
            for spin in (c.spin1, c.spin2):
                key = np.asarray(spin, dtype=complex).tobytes()
                if key not in spinors:
                    spinors[key] = prop.propagate(spin_bath_vector(spin, space), times)

    nt = len(times)
    rho = np.zeros((nt, 4, 4), dtype=complex)
    for weight, components in members:
        part = np.zeros_like(rho)
        for cm in components:
            for cn in components:
                w = cm.coeff * np.conj(cn.coeff)
                if w == 0:
                    continue
                psi1m = spinors[np.asarray(cm.spin1, dtype=complex).tobytes()]
                psi1n = spinors[np.asarray(cn.spin1, dtype=complex).tobytes()]
                psi2m = spinors[np.asarray(cm.spin2, dtype=complex).tobytes()]
                psi2n = spinors[np.asarray(cn.spin2, dtype=complex).tobytes()]
                for i in range(nt):
                    k1 = single_qubit_kernel(psi1m[i], psi1n[i])
                    k2 = single_qubit_kernel(psi2m[i], psi2n[i])
                    part[i] += w * np.kron(k1, k2)
        traces = np.real(np.trace(part, axis1=1, axis2=2))
        rho += weight * part / traces[:, None, None]
    return rho
