"""Independent references: exact unitary evolution, convergence studies,
spectrum fixtures.

No closed-form solution of the coupled open-system equations exists for a
4-site chain, so the trustworthy references are (a) the zero-coupling limit,
where evolution is exactly unitary and computable by eigendecomposition,
and (b) self-convergence of the integrator under step refinement.  Both are
implemented here, stated as such, and used by the test suite and the
``validate`` subcommand.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import kernels
from .errors import IntegrationDivergedError
from .linalg import hermitian_eig
from .model import ChainSpec, build_hamiltonian
from .propagator import SpinBathModel

# fixture eigenvalues are printed with 12 significant digits
_FIXTURE_FMT = "{:.11e}"


def unitary_evolve(h: np.ndarray, rho0: np.ndarray, t: float) -> np.ndarray:
    """Closed-system rho(t) = U rho0 U^dag with U = exp(-iHt), via eigenbasis."""
    w, v = hermitian_eig(h)
    phases = np.exp(-1j * w * t)
    u = (v * phases) @ v.conj().T
    return u @ rho0 @ u.conj().T


def convergence_order(
    model: SpinBathModel,
    init: np.ndarray,
    t_probe: float,
    dts: Sequence[float],
    noise_floor: float = 1e-13,
) -> float:
    """Observed order of the stepper by log-log slope of the error in dt.

    Runs the configuration to ``t_probe`` at every step size; the finest run
    is the reference and the coarser runs supply the error points.  Returns
    NaN when all errors sit at the rounding floor (stationary states carry
    no convergence information).
    """
    dts = [float(x) for x in dts]
    if len(dts) < 3:
        raise ValueError(f"need at least 3 step sizes, got {len(dts)}")
    if any(b >= a for a, b in zip(dts, dts[1:])):
        raise ValueError(f"step sizes must be strictly decreasing, got {dts}")

    finals = [integrate_final_state(model, init, dt, t_probe) for dt in dts]
    ref = finals[-1]
    errors = [float(np.abs(f - ref).max()) for f in finals[:-1]]
    if max(errors) <= noise_floor:
        return float("nan")
    slope, _ = np.polyfit(np.log(dts[:-1]), np.log(errors), 1)
    return float(slope)


def integrate_final_state(model: SpinBathModel, init: np.ndarray, dt: float, t_probe: float) -> np.ndarray:
    """Packed joint state (density matrix in slot 0) after integrating to t_probe."""
    n, d = model.n_sites, model.dim
    y = np.zeros((2 * n + 1, d, d), dtype=np.complex128)
    y[0] = init
    nsteps = round(t_probe / dt)
    bad = kernels.advance_rk4(
        y,
        model.h,
        model.lindblads,
        model.lindblads_dag,
        model.coeff_lower,
        model.coeff_raise,
        model.gamma,
        dt,
        nsteps,
    )
    if bad >= 0:
        raise IntegrationDivergedError((bad + 1) * dt)
    return y


def spectrum_fixture(c: ChainSpec) -> np.ndarray:
    """Full sorted spectrum of the chain Hamiltonian (N <= 8)."""
    if c.n_sites > 8:
        raise ValueError(f"spectrum fixtures are limited to N <= 8, got {c.n_sites}")
    w, _ = hermitian_eig(build_hamiltonian(c))
    return w


def save_spectrum_fixture(c: ChainSpec, path) -> np.ndarray:
    """Write the spectrum as plain text: one header line, one eigenvalue per line."""
    w = spectrum_fixture(c)
    header = (
        f"# n_sites={c.n_sites} j_coupling={c.j_coupling:g} dm_strength={c.dm_strength:g} "
        f"field_strength={c.field_strength:g} boundary={c.boundary}"
    )
    lines = [header] + [_FIXTURE_FMT.format(x) for x in w]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return w


def load_spectrum_fixture(path) -> np.ndarray:
    with open(path) as fh:
        vals = [float(line) for line in fh if line.strip() and not line.startswith("#")]
    return np.array(vals)
