"""Entanglement dynamics of two qubits coupled individually to Ohmic baths.

Variational coherent-branch dynamics of the full spin-boson coupling,
an exact rotating-wave solver for comparison, a truncated-Fock-space
oracle, Wootters concurrence, and a deterministic sweep CLI.
"""

from .composer import (
    BranchState,
    Component,
    EvolutionCache,
    Frame,
    InitialSpec,
    Method,
    cross_kernel,
    density_series,
    evolve_mixed,
    evolve_single_qubit,
    reduced_density,
    rotate_spin,
)
from .concurrence import (
    ConcurrenceSeries,
    concurrence_general,
    concurrence_series,
    concurrence_x,
)
from .config import ScenarioConfig, load_config, loads_config, preset_text
from .davydov import (
    D1State,
    D1Trajectory,
    energy_expectation,
    eom_rhs,
    evolve,
    overlap_factor,
    step,
)
from .errors import (
    ConfigError,
    DegenerateStateError,
    DimensionOverflowError,
    EntbathError,
    SolverError,
    VariationalBreakdown,
)
from .model import BathModes, ModelParams, discretize_bath, spectral_density
from .oracle import TruncatedSpace, build_hamiltonian, exact_propagate
from .rwa import RwaState, RwaTrajectory, evolve_rwa, rwa_rhs
from .sweep import run_scenario

__version__ = "0.1.0"

__all__ = [
    "BathModes",
    "BranchState",
    "Component",
    "ConcurrenceSeries",
    "ConfigError",
    "D1State",
    "D1Trajectory",
    "DegenerateStateError",
    "DimensionOverflowError",
    "EntbathError",
    "EvolutionCache",
    "Frame",
    "InitialSpec",
    "Method",
    "ModelParams",
    "RwaState",
    "RwaTrajectory",
    "ScenarioConfig",
    "SolverError",
    "TruncatedSpace",
    "VariationalBreakdown",
    "build_hamiltonian",
    "concurrence_general",
    "concurrence_series",
    "concurrence_x",
    "cross_kernel",
    "density_series",
    "discretize_bath",
    "energy_expectation",
    "eom_rhs",
    "evolve",
    "evolve_mixed",
    "evolve_rwa",
    "evolve_single_qubit",
    "exact_propagate",
    "load_config",
    "loads_config",
    "overlap_factor",
    "preset_text",
    "reduced_density",
    "rotate_spin",
    "run_scenario",
    "rwa_rhs",
    "spectral_density",
    "step",
]
