"""Observables along a trajectory: energy, energy current, l1 coherence.

The energy current is the time derivative of tr(rho H), evaluated from the
analytic right-hand side of the master equation, so it is exact at every
record instant.  A central-difference estimate over the recorded energies
is attached as an independent cross-check.  Real parts are taken with an
asserted imaginary residual instead of silently, so hermiticity drift in a
long run surfaces as an error rather than a quietly wrong number.

Coherence is the l1 measure: the sum of moduli of all off-diagonal density
matrix entries, in the fixed computational basis of the model module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import IMAG_TOL


@dataclass
class TrajectoryRecord:
    """Per-record observables; one CSV row."""

    t: float
    energy: float
    energy_current: float
    energy_current_fd: float | None
    coherence_l1: float
    trace_residual: float
    herm_residual: float
    min_eig: float


def coherence_l1(rho: np.ndarray) -> float:
    """Sum of |rho_ab| over all a != b."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    mags = np.abs(rho)
    return float(mags.sum() - np.trace(mags))


def _real_with_residual_check(z: complex, what: str, imag_tol: float) -> float:
    if abs(z.imag) > imag_tol:
        raise FloatingPointError(f"{what} has imaginary residual {z.imag:.3e} > {imag_tol:.1e}")
    return float(z.real)


def system_energy(rho: np.ndarray, h: np.ndarray, imag_tol: float = IMAG_TOL) -> float:
    """tr(rho H), real part with asserted imaginary residual."""
    if rho.shape != h.shape:
        raise ValueError(f"shape mismatch: rho {rho.shape} vs h {h.shape}")
    return _real_with_residual_check(complex(np.trace(rho @ h)), "tr(rho H)", imag_tol)


def energy_current(rho_dot: np.ndarray, h: np.ndarray, imag_tol: float = IMAG_TOL) -> float:
    """tr(d(rho)/dt * H): instantaneous energy flow, positive = baths -> system."""
    if rho_dot.shape != h.shape:
        raise ValueError(f"shape mismatch: rho_dot {rho_dot.shape} vs h {h.shape}")
    return _real_with_residual_check(complex(np.trace(rho_dot @ h)), "tr(rho_dot H)", imag_tol)


def energy_current_fd(records: list[TrajectoryRecord], i: int) -> float:
    """Central difference of the recorded energies at interior index i."""
    if not 0 < i < len(records) - 1:
        raise IndexError(f"central difference needs an interior index, got {i} of {len(records)}")
    span = records[i + 1].t - records[i - 1].t
    return (records[i + 1].energy - records[i - 1].energy) / span


def attach_finite_difference(records: list[TrajectoryRecord]) -> None:
    """Fill the fd column on interior records; endpoints stay None."""
    for i in range(1, len(records) - 1):
        records[i].energy_current_fd = energy_current_fd(records, i)


def make_record(t: float, rho: np.ndarray, rho_dot: np.ndarray, h: np.ndarray) -> TrajectoryRecord:
    return TrajectoryRecord(
        t=t,
        energy=system_energy(rho, h),
        energy_current=energy_current(rho_dot, h),
        energy_current_fd=None,
        coherence_l1=coherence_l1(rho),
        trace_residual=float(abs(np.trace(rho) - 1.0)),
        herm_residual=float(np.abs(rho - rho.conj().T).max()),
        min_eig=float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()),
    )
