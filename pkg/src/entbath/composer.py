"""Two-qubit composition: frame rotations, branch decomposition, partial trace.

Each qubit couples to its own bath, so the two-qubit state is a sum of
products of single-qubit qubit+bath wave functions.  The bath trace of a
pair of such wave functions is a 2x2 "cross kernel"; the reduced 4x4
density matrix is assembled from kernel pairs weighted by the initial
product-state coefficients.

Spin basis ordering everywhere: index 0 = |+>, index 1 = |->.  Two-qubit
basis: |1>=|++>, |2>=|+->, |3>=|-+>, |4>=|-->.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import davydov, rwa
from .errors import DegenerateStateError
from .model import BathModes, ModelParams

# U = exp(i pi/4 sigma_y): rotates H_RSB into the spin-boson form H_SB.
ROTATION_U = np.array([[1.0, 1.0], [-1.0, 1.0]]) / np.sqrt(2.0)
ROTATION_U_DAG = ROTATION_U.conj().T

SPIN_UP = np.array([1.0, 0.0], dtype=complex)
SPIN_DOWN = np.array([0.0, 1.0], dtype=complex)


class Frame(enum.Enum):
    """Which Hamiltonian generates the qubit dynamics."""

    SB = "sb"
    RSB = "rsb"


class Method(enum.Enum):
    D1 = "d1"
    RWA = "rwa"


def rotate_spin(spin, inverse: bool = False) -> np.ndarray:
    """Apply the frame rotation U (or its inverse) to a spinor."""
    u = ROTATION_U_DAG if inverse else ROTATION_U
    return u @ np.asarray(spin, dtype=complex)


@dataclass
class BranchState:
    """A qubit+bath state as a sum of (spinor, bath ket) branches.

    kind "coherent": branch k is spins[k] (x) |z = displacements[k]>.
    kind "fock": branch k is spins[k] (x) |labels[k]>, label 0 being the
    vacuum and label l the one-boson state of mode l.
    """

    kind: str
    spins: np.ndarray
    displacements: np.ndarray | None = None
    labels: np.ndarray | None = None
    time: float = 0.0

    def __post_init__(self):
        self.spins = np.asarray(self.spins, dtype=complex)
        if self.kind not in ("coherent", "fock"):
            raise ValueError(f"unknown branch kind {self.kind!r}")
        if self.spins.ndim != 2 or self.spins.shape[1] != 2:
            raise ValueError("spins must have shape (n_branches, 2)")
        if self.kind == "coherent":
            if self.displacements is None:
                raise ValueError("coherent branches need displacement vectors")
            self.displacements = np.asarray(self.displacements, dtype=complex)
            if self.displacements.shape[0] != self.spins.shape[0]:
                raise ValueError("one displacement vector per branch required")
        else:
            if self.labels is None:
                raise ValueError("fock branches need labels")
            self.labels = np.asarray(self.labels, dtype=int)
            if self.labels.shape[0] != self.spins.shape[0]:
                raise ValueError("one label per branch required")


@dataclass
class SingleQubitEvolution:
    """Branch snapshots of one qubit+bath evolution plus diagnostics.

    Arrays are stacked over the output grid: spins has shape (T, K, 2)
    and, for coherent branches, displacements has shape (T, K, M).
    """

    times: np.ndarray
    kind: str
    spins: np.ndarray
    displacements: np.ndarray | None
    labels: np.ndarray | None
    norm_series: np.ndarray
    energy_series: np.ndarray

    def branch_state(self, i: int) -> BranchState:
        return BranchState(
            kind=self.kind,
            spins=self.spins[i],
            displacements=None if self.displacements is None else self.displacements[i],
            labels=self.labels,
            time=float(self.times[i]),
        )

    @property
    def norm_drift(self) -> np.ndarray:
        return np.abs(self.norm_series - 1.0)

    def energy_drift(self, delta: float) -> np.ndarray:
        e0 = self.energy_series[0]
        scale = max(abs(e0), delta) if (abs(e0) > 0 or delta > 0) else 1.0
        return np.abs(self.energy_series - e0) / scale


@dataclass(frozen=True)
class Component:
    """One product term c * |spin1>|spin2> of a pure two-qubit spin state."""

    coeff: complex
    spin1: np.ndarray
    spin2: np.ndarray


@dataclass(frozen=True)
class InitialSpec:
    """Initial two-qubit state and the dynamical frame.

    kind is one of "anti_bell" (a|+-> + sqrt(1-a^2)|-+>), "bell"
    (a|++> + sqrt(1-a^2)|-->), "mixed" (the three-member ensemble used
    for perturbative comparisons) or "custom" with explicit product
    components.
    """

    kind: str
    a: float = 0.5
    frame: Frame = Frame.RSB
    components: tuple = ()

    def __post_init__(self):
        if self.kind not in ("anti_bell", "bell", "mixed", "custom"):
            raise ValueError(f"unknown initial state kind {self.kind!r}")
        if self.kind != "custom" and not 0.0 <= self.a <= 1.0:
            raise ValueError("a must lie in [0, 1]")
        if self.kind == "custom":
            if not self.components:
                raise ValueError("custom initial state needs components")
            norm = _components_norm(self.components)
            if abs(norm - 1.0) > 1e-8:
                raise ValueError(f"custom state norm {norm:.6g} != 1")


def _components_norm(components) -> float:
    total = 0.0
    for m in components:
        for n in components:
            total += np.real(
                m.coeff
                * np.conj(n.coeff)
                * np.vdot(n.spin1, m.spin1)
                * np.vdot(n.spin2, m.spin2)
            )
    return float(total)


def product_components(spec: InitialSpec) -> list[Component]:
    """Product-term decomposition of a pure initial state."""
    a = spec.a
    b = np.sqrt(max(0.0, 1.0 - a * a))
    if spec.kind == "anti_bell":
        return [
            Component(a, SPIN_UP, SPIN_DOWN),
            Component(b, SPIN_DOWN, SPIN_UP),
        ]
    if spec.kind == "bell":
        return [
            Component(a, SPIN_UP, SPIN_UP),
            Component(b, SPIN_DOWN, SPIN_DOWN),
        ]
    if spec.kind == "custom":
        return list(spec.components)
    raise ValueError("mixed states decompose into an ensemble, not components")


def mixed_members(a: float) -> list[tuple[float, list[Component]]]:
    """Ensemble decomposition of the mixed initial density matrix.

    rho(0) = (1-a)/3 |--><--| + a/3 |++><++|
           + 1/3 (|+-> + |-+>)(<+-| + <-+|).
    """
    sym = 1.0 / np.sqrt(2.0)
    return [
        ((1.0 - a) / 3.0, [Component(1.0, SPIN_DOWN, SPIN_DOWN)]),
        (a / 3.0, [Component(1.0, SPIN_UP, SPIN_UP)]),
        (
            2.0 / 3.0,
            [Component(sym, SPIN_UP, SPIN_DOWN), Component(sym, SPIN_DOWN, SPIN_UP)],
        ),
    ]


def evolve_single_qubit(
    initial_spin,
    frame: Frame,
    method: Method,
    params: ModelParams,
    bath: BathModes,
    times: np.ndarray,
) -> SingleQubitEvolution:
    """Evolve one qubit+bath pair from a spinor with a vacuum bath.

    For (D1, RSB) the variational equations are integrated in the
    spin-boson frame: the initial spinor is rotated by U, evolved, and
    each branch spinor is rotated back by U^+ at every snapshot.  RWA
    dynamics is defined in the rotated frame only.
    """
    spin = np.asarray(initial_spin, dtype=complex)
    if spin.shape != (2,):
        raise ValueError("initial_spin must be a 2-component spinor")
    if abs(np.vdot(spin, spin) - 1.0) > 1e-10:
        raise ValueError("initial spinor must be normalized")
    times = np.asarray(times, dtype=float)

    if method == Method.RWA:
        if frame != Frame.RSB:
            raise ValueError("RWA dynamics is defined in the rotated frame only")
        initial = rwa.RwaState(
            c_ground=spin[1], c_zero=spin[0], c_modes=np.zeros(bath.n_modes)
        )
        traj = rwa.evolve_rwa(initial, bath, params.delta, times, params.dt)
        nt, m = len(times), bath.n_modes
        spins = np.zeros((nt, m + 1, 2), dtype=complex)
        for i, st in enumerate(traj.states):
            spins[i, 0, 0] = st.c_zero
            spins[i, 0, 1] = st.c_ground
            spins[i, 1:, 1] = st.c_modes
        return SingleQubitEvolution(
            times=times,
            kind="fock",
            spins=spins,
            displacements=None,
            labels=np.arange(m + 1),
            norm_series=traj.norm_series,
            energy_series=traj.energy_series,
        )

    if frame == Frame.RSB:
        phi0 = ROTATION_U @ spin
        back = ROTATION_U_DAG
    else:
        phi0 = spin
        back = np.eye(2, dtype=complex)
    zeros = np.zeros(bath.n_modes, dtype=complex)
    initial = davydov.D1State(a_amp=phi0[0], b_amp=phi0[1], f=zeros, g=zeros.copy())
    traj = davydov.evolve(initial, bath, params.delta, times, params.dt)
    nt, m = len(times), bath.n_modes
    spins = np.zeros((nt, 2, 2), dtype=complex)
    disps = np.zeros((nt, 2, m), dtype=complex)
    for i, st in enumerate(traj.states):
        spins[i, 0] = st.a_amp * back[:, 0]
        spins[i, 1] = st.b_amp * back[:, 1]
        disps[i, 0] = st.f
        disps[i, 1] = st.g
    return SingleQubitEvolution(
        times=times,
        kind="coherent",
        spins=spins,
        displacements=disps,
        labels=None,
        norm_series=traj.norm_series,
        energy_series=traj.energy_series,
    )


def cross_kernel(m: BranchState, n: BranchState) -> np.ndarray:
    """Bath trace of |m><n| for one qubit: a 2x2 complex matrix.

    K = sum_{k,k'} spin_k^(m) (spin_k'^(n))^+ <bath_k'^(n)|bath_k^(m)>.
    """
    if m.kind != n.kind:
        raise ValueError("cannot mix coherent and fock branch states")
    if m.kind == "coherent":
        zm, zn = m.displacements, n.displacements
        if zm.shape[1] != zn.shape[1]:
            raise ValueError("mode counts differ")
        # ov[q, k] = <z_n[q] | z_m[k]>
        ov = np.exp(
            zn.conj() @ zm.T
            - 0.5 * np.sum(np.abs(zm) ** 2, axis=1)[None, :]
            - 0.5 * np.sum(np.abs(zn) ** 2, axis=1)[:, None]
        )
        return np.einsum("ka,qk,qb->ab", m.spins, ov, n.spins.conj())
    if not np.array_equal(m.labels, n.labels):
        raise ValueError("fock branch labels differ")
    return np.einsum("ka,kb->ab", m.spins, n.spins.conj())


def kernel_series(m: SingleQubitEvolution, n: SingleQubitEvolution) -> np.ndarray:
    """cross_kernel at every snapshot, vectorized: shape (T, 2, 2)."""
    if m.kind != n.kind:
        raise ValueError("cannot mix coherent and fock branch states")
    if m.kind == "coherent":
        zm, zn = m.displacements, n.displacements
        ov = np.exp(
            np.einsum("tql,tkl->tqk", zn.conj(), zm)
            - 0.5 * np.sum(np.abs(zm) ** 2, axis=2)[:, None, :]
            - 0.5 * np.sum(np.abs(zn) ** 2, axis=2)[:, :, None]
        )
        return np.einsum("tka,tqk,tqb->tab", m.spins, ov, n.spins.conj())
    if not np.array_equal(m.labels, n.labels):
        raise ValueError("fock branch labels differ")
    return np.einsum("tka,tkb->tab", m.spins, n.spins.conj())


def reduced_density(coeffs, kernels1, kernels2):
    """Assemble and trace-normalize the two-qubit reduced density matrix.

    kernels1[m][n] and kernels2[m][n] are the per-qubit cross kernels for
    component pair (m, n).  Returns (rho, raw_trace) where raw_trace is
    the pre-normalization trace diagnostic.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    nc = len(coeffs)
    rho = np.zeros((4, 4), dtype=complex)
    for m in range(nc):
        for n in range(nc):
            weight = coeffs[m] * np.conj(coeffs[n])
            if weight == 0:
                continue
            rho += weight * np.kron(kernels1[m][n], kernels2[m][n])
    raw_trace = float(np.real(np.trace(rho)))
    if raw_trace < 1e-6:
        raise DegenerateStateError(f"density trace collapsed to {raw_trace:.3e}")
    return rho / raw_trace, raw_trace


@dataclass
class DensitySeries:
    """Reduced two-qubit density matrices on an output grid."""

    times: np.ndarray
    rhos: np.ndarray  # (T, 4, 4)
    raw_traces: np.ndarray
    norm_drift: np.ndarray  # max over contributing trajectories
    energy_drift: np.ndarray


class EvolutionCache:
    """Memoizes single-qubit evolutions keyed by initial spinor.

    Both qubits share identical parameters, so one evolution per distinct
    spinor serves both tensor slots and every value of the initial-state
    parameter a.
    """

    def __init__(self, frame, method, params, bath, times):
        self.frame = frame
        self.method = method
        self.params = params
        self.bath = bath
        self.times = np.asarray(times, dtype=float)
        self._evolutions = {}
        self._kernels = {}

    def evolution(self, spin) -> SingleQubitEvolution:
        key = np.asarray(spin, dtype=complex).tobytes()
        if key not in self._evolutions:
            self._evolutions[key] = evolve_single_qubit(
                spin, self.frame, self.method, self.params, self.bath, self.times
            )
        return self._evolutions[key]

    def kernels(self, spin_m, spin_n) -> np.ndarray:
        key = (
            np.asarray(spin_m, dtype=complex).tobytes(),
            np.asarray(spin_n, dtype=complex).tobytes(),
        )
        if key not in self._kernels:
            self._kernels[key] = kernel_series(
                self.evolution(spin_m), self.evolution(spin_n)
            )
        return self._kernels[key]


def _pure_density_series(components, cache: EvolutionCache) -> DensitySeries:
    times = cache.times
    nt = len(times)
    nc = len(components)
    coeffs = np.array([c.coeff for c in components], dtype=complex)

    rhos = np.zeros((nt, 4, 4), dtype=complex)
    for m in range(nc):
        for n in range(nc):
            weight = coeffs[m] * np.conj(coeffs[n])
            if weight == 0:
                continue
            k1 = cache.kernels(components[m].spin1, components[n].spin1)
            k2 = cache.kernels(components[m].spin2, components[n].spin2)
            rhos += weight * np.einsum("tab,tcd->tacbd", k1, k2).reshape(nt, 4, 4)

    raw_traces = np.real(np.trace(rhos, axis1=1, axis2=2))
    if np.any(raw_traces < 1e-6):
        raise DegenerateStateError("density trace collapsed during evolution")
    rhos /= raw_traces[:, None, None]

    evolutions = [
        cache.evolution(spin)
        for c in components
        for spin in (c.spin1, c.spin2)
    ]
    norm_drift = np.max([e.norm_drift for e in evolutions], axis=0)
    energy_drift = np.max(
        [e.energy_drift(cache.params.delta) for e in evolutions], axis=0
    )
    return DensitySeries(
        times=times,
        rhos=rhos,
        raw_traces=raw_traces,
        norm_drift=norm_drift,
        energy_drift=energy_drift,
    )


def density_series(
    spec: InitialSpec,
    method: Method,
    params: ModelParams,
    bath: BathModes,
    times: np.ndarray,
    cache: EvolutionCache | None = None,
) -> DensitySeries:
    """Reduced density matrix series for any supported initial state."""
    if cache is None:
        cache = EvolutionCache(spec.frame, method, params, bath, times)
    if spec.kind == "mixed":
        return evolve_mixed(spec, method, params, bath, times, cache=cache)
    return _pure_density_series(product_components(spec), cache)


def evolve_mixed(
    spec: InitialSpec,
    method: Method,
    params: ModelParams,
    bath: BathModes,
    times: np.ndarray,
    cache: EvolutionCache | None = None,
) -> DensitySeries:
    """Weight-summed evolution of the mixed-state ensemble members.

    Valid because the baths start in a pure vacuum state and the total
    evolution is unitary, so rho(t) is affine in rho(0).
    """
    if spec.kind != "mixed":
        raise ValueError("evolve_mixed requires a mixed initial spec")
    if cache is None:
        cache = EvolutionCache(spec.frame, method, params, bath, times)
    nt = len(cache.times)
    rhos = np.zeros((nt, 4, 4), dtype=complex)
    raw = np.zeros(nt)
    norm_drift = np.zeros(nt)
    energy_drift = np.zeros(nt)
    for weight, components in mixed_members(spec.a):
        if weight == 0:
            continue
        member = _pure_density_series(components, cache)
        rhos += weight * member.rhos
        raw += weight * member.raw_traces
        norm_drift = np.maximum(norm_drift, member.norm_drift)
        energy_drift = np.maximum(energy_drift, member.energy_drift)
    return DensitySeries(
        times=cache.times,
        rhos=rhos,
        raw_traces=raw,
        norm_drift=norm_drift,
        energy_drift=energy_drift,
    )
