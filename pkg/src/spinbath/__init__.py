"""Dissipative XY spin chain in finite-temperature memory baths.

Co-integrates the density matrix of a small XY chain (with optional DM
interaction and magnetic field) with the 2N bath-memory operators that
encode each site's non-Markovian environment, and reports the energy
current between system and baths together with the l1 coherence of the
state over time.
"""

from .config import RunConfig, SweepConfig, apply_axis, parse_config
from .errors import ConfigError, IntegrationDivergedError, UnsupportedConfigError
from .model import (
    BathSpec,
    ChainSpec,
    InitSpec,
    build_hamiltonian,
    build_lindblads,
    gibbs_state,
    high_temp_state,
    initial_state,
    pseudo_pure_state,
    site_operator,
    spectral_density,
    validity_ratio,
)
from .observables import (
    TrajectoryRecord,
    coherence_l1,
    energy_current,
    energy_current_fd,
    system_energy,
)
from .oracle import convergence_order, spectrum_fixture, unitary_evolve
from .presets import preset, preset_names
from .propagator import (
    SimState,
    SpinBathModel,
    StepSpec,
    build_model,
    drift_operator,
    memory_rhs,
    propagate,
    rho_rhs,
    step_rk4,
)
from .runner import run_single, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BathSpec",
    "ChainSpec",
    "ConfigError",
    "InitSpec",
    "IntegrationDivergedError",
    "RunConfig",
    "SimState",
    "SpinBathModel",
    "StepSpec",
    "SweepConfig",
    "TrajectoryRecord",
    "UnsupportedConfigError",
    "apply_axis",
    "build_hamiltonian",
    "build_lindblads",
    "build_model",
    "coherence_l1",
    "convergence_order",
    "drift_operator",
    "energy_current",
    "energy_current_fd",
    "gibbs_state",
    "high_temp_state",
    "initial_state",
    "memory_rhs",
    "parse_config",
    "preset",
    "preset_names",
    "propagate",
    "pseudo_pure_state",
    "rho_rhs",
    "run_single",
    "run_sweep",
    "site_operator",
    "spectral_density",
    "spectrum_fixture",
    "step_rk4",
    "system_energy",
    "unitary_evolve",
    "validity_ratio",
    "__version__",
]
