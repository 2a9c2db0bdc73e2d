"""Co-integration of the density matrix with its bath-memory operators.

The open-chain equation of motion couples the density matrix to 2N
auxiliary "memory operators" (one lowering-channel and one raising-channel
operator per site) that carry the finite-memory information of each bath.
All 2N+1 matrices are advanced together as a single first-order ODE system
with classical fixed-step RK4: the trajectories are smooth at the studied
parameters, and a fixed grid keeps runs bitwise reproducible and makes
convergence-order checks clean.

The memory operators start at zero (they are integrals over the elapsed
interaction window, which is empty at t = 0); consequently the initial
energy current vanishes for every initial state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import IntegrationDivergedError
from .model import BathSpec, ChainSpec, build_hamiltonian, build_lindblads
from .observables import TrajectoryRecord, attach_finite_difference, make_record


@dataclass(frozen=True)
class StepSpec:
    """Fixed integration grid: step size, horizon, and recording stride."""

    dt: float = 1e-3
    t_max: float = 15.0
    record_stride: int = 10

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.t_max < 0:
            raise ValueError(f"t_max must be >= 0, got {self.t_max}")
        if self.record_stride < 1:
            raise ValueError(f"record_stride must be >= 1, got {self.record_stride}")
        # t_max = 0 is allowed as a boundary case (single record at t = 0);
        # otherwise the recording grid must fit inside the horizon.
        if self.t_max > 0 and self.dt * self.record_stride > self.t_max:
            raise ValueError(
                f"dt * record_stride = {self.dt * self.record_stride:g} exceeds t_max = {self.t_max:g}"
            )

    @property
    def n_steps(self) -> int:
        return round(self.t_max / self.dt)


@dataclass
class SpinBathModel:
    """Hamiltonian, coupling operators, and per-site bath coefficients.

    ``coeff_lower`` multiplies L_j in the lowering-channel memory equation
    and carries both the thermal drive and the imaginary spectral-width
    part; ``coeff_raise`` multiplies L_j^dag in the raising channel and is
    purely thermal, so it vanishes for zero-temperature baths.
    """

    h: np.ndarray
    lindblads: np.ndarray  # (n, d, d)
    gamma: np.ndarray  # (n,) memory rates
    coeff_lower: np.ndarray  # (n,) complex
    coeff_raise: np.ndarray  # (n,) complex
    chain: ChainSpec | None = None
    baths: tuple[BathSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        self.h = np.ascontiguousarray(self.h, dtype=np.complex128)
        self.lindblads = np.ascontiguousarray(self.lindblads, dtype=np.complex128)
        self.lindblads_dag = np.ascontiguousarray(self.lindblads.conj().transpose(0, 2, 1))
        self.gamma = np.asarray(self.gamma, dtype=np.float64)
        self.coeff_lower = np.asarray(self.coeff_lower, dtype=np.complex128)
        self.coeff_raise = np.asarray(self.coeff_raise, dtype=np.complex128)

    @property
    def n_sites(self) -> int:
        return self.lindblads.shape[0]

    @property
    def dim(self) -> int:
        return self.h.shape[0]


def build_model(chain: ChainSpec, bath: BathSpec | Sequence[BathSpec]) -> SpinBathModel:
    """Assemble the coupled model from a chain and one bath spec per site.

    A single BathSpec is shared by every site (the default, matching chains
    whose sites sit in indistinguishable environments); a sequence assigns
    baths per site.
    """
    baths = tuple([bath] * chain.n_sites) if isinstance(bath, BathSpec) else tuple(bath)
    if len(baths) != chain.n_sites:
        raise ValueError(f"need {chain.n_sites} bath specs, got {len(baths)}")
    gam = np.array([b.memory_rate for b in baths])
    strength = np.array([b.coupling_strength for b in baths])
    temp = np.array([b.bath_temperature for b in baths])
    c_low = strength * temp * gam / 2.0 - 1j * strength * gam**2 / 2.0
    c_high = (strength * temp * gam / 2.0).astype(np.complex128)
    return SpinBathModel(
        h=build_hamiltonian(chain),
        lindblads=np.array(build_lindblads(chain)),
        gamma=gam,
        coeff_lower=c_low,
        coeff_raise=c_high,
        chain=chain,
        baths=baths,
    )


@dataclass
class SimState:
    """Joint ODE state: time, density matrix, and the 2N memory operators."""

    t: float
    rho: np.ndarray
    mem_lower: np.ndarray  # (n, d, d), lowering-channel memory operators
    mem_raise: np.ndarray  # (n, d, d), raising-channel memory operators

    @classmethod
    def initial(cls, rho0: np.ndarray, n_sites: int) -> "SimState":
        d = rho0.shape[0]
        zeros = np.zeros((n_sites, d, d), dtype=np.complex128)
        return cls(t=0.0, rho=np.array(rho0, dtype=np.complex128), mem_lower=zeros.copy(), mem_raise=zeros.copy())


def _pack(state: SimState) -> np.ndarray:
    n, d = state.mem_lower.shape[0], state.rho.shape[0]
    y = np.empty((2 * n + 1, d, d), dtype=np.complex128)
    y[0] = state.rho
    y[1 : 1 + n] = state.mem_lower
    y[1 + n :] = state.mem_raise
    return y


def _unpack(y: np.ndarray, t: float) -> SimState:
    n = (y.shape[0] - 1) // 2
    return SimState(t=t, rho=y[0].copy(), mem_lower=y[1 : 1 + n].copy(), mem_raise=y[1 + n :].copy())


def _rhs_packed(y: np.ndarray, model: SpinBathModel) -> np.ndarray:
    out = np.empty_like(y)
    kernels.rhs(
        y,
        model.h,
        model.lindblads,
        model.lindblads_dag,
        model.coeff_lower,
        model.coeff_raise,
        model.gamma,
        out,
    )
    return out


def drift_operator(state: SimState, model: SpinBathModel) -> np.ndarray:
    """Shared drift -iH - sum_j (L_j^dag A_j + L_j B_j).

    This is the commutator partner of every memory-operator equation; the
    site sum inside it is global, so it is evaluated once per derivative
    call and reused for all 2N equations.
    """
    m = -1j * model.h
    for j in range(model.n_sites):
        m = m - model.lindblads_dag[j] @ state.mem_lower[j] - model.lindblads[j] @ state.mem_raise[j]
    return m


def memory_rhs(state: SimState, model: SpinBathModel) -> tuple[np.ndarray, np.ndarray]:
    """Time derivatives of the lowering- and raising-channel memory operators."""
    m = drift_operator(state, model)
    d_lower = np.empty_like(state.mem_lower)
    d_raise = np.empty_like(state.mem_raise)
    for j in range(model.n_sites):
        a = state.mem_lower[j]
        b = state.mem_raise[j]
        d_lower[j] = model.coeff_lower[j] * model.lindblads[j] - model.gamma[j] * a + (m @ a - a @ m)
        d_raise[j] = model.coeff_raise[j] * model.lindblads_dag[j] - model.gamma[j] * b + (m @ b - b @ m)
    return d_lower, d_raise


def rho_rhs(state: SimState, model: SpinBathModel) -> np.ndarray:
    """Time derivative of the density matrix.

    Commutator structure only, so the trace is conserved identically; the
    lowering/raising pairs are mutual adjoints, so hermiticity of rho is
    preserved as well.
    """
    return _rhs_packed(_pack(state), model)[0]


def step_rk4(state: SimState, model: SpinBathModel, dt: float) -> SimState:
    """One classical RK4 step of the joint system."""
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    y = _pack(state)
    bad = kernels.advance_rk4(
        y,
        model.h,
        model.lindblads,
        model.lindblads_dag,
        model.coeff_lower,
        model.coeff_raise,
        model.gamma,
        dt,
        1,
    )
    if bad >= 0:
        raise IntegrationDivergedError(state.t + dt)
    return _unpack(y, state.t + dt)


Observer = Callable[[SimState, np.ndarray], None]


def propagate(
    model: SpinBathModel,
    init: np.ndarray,
    spec: StepSpec,
    observer: Observer | None = None,
) -> list[TrajectoryRecord]:
    """Integrate from t = 0 to t_max, recording every ``record_stride`` steps.

    Observables are evaluated from the same analytic derivative the stepper
    uses, so the recorded energy current is exact at every record instant
    rather than reconstructed afterwards.  The final step is always
    recorded, also when the stride does not divide the step count.  The
    optional observer receives the current SimState and d(rho)/dt at each
    record instant.

    Central-difference energy-current estimates are attached to interior
    records before returning.
    """
    n = model.n_sites
    d = model.dim
    y = np.zeros((2 * n + 1, d, d), dtype=np.complex128)
    y[0] = init

    records: list[TrajectoryRecord] = []
    n_steps = spec.n_steps
    step = 0
    while True:
        t = step * spec.dt
        deriv = _rhs_packed(y, model)
        records.append(make_record(t, y[0], deriv[0], model.h))
        if observer is not None:
            observer(_unpack(y, t), deriv[0].copy())
        if step >= n_steps:
            break
        todo = min(spec.record_stride, n_steps - step)
        bad = kernels.advance_rk4(
            y,
            model.h,
            model.lindblads,
            model.lindblads_dag,
            model.coeff_lower,
            model.coeff_raise,
            model.gamma,
            spec.dt,
            todo,
        )
        if bad >= 0:
            raise IntegrationDivergedError((step + bad + 1) * spec.dt)
        step += todo

    attach_finite_difference(records)
    return records
