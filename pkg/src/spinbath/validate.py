"""Self-check suite behind the ``validate`` subcommand.

Runs the cross-validations that do not need figure-level runtimes: exact
coherence fixtures of the pseudo-pure state, zero initial current for every
preset, trace/hermiticity conservation, the zero-coupling unitary oracle,
observed integrator order, and the finite-difference cross-check of the
analytic energy current.  Prints one line per check and reports overall
success.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .constants import DYN_TOL, IMAG_TOL, UNITARY_ORACLE_TOL
from .errors import IntegrationDivergedError
from .model import ChainSpec, initial_state, pseudo_pure_state
from .observables import coherence_l1, energy_current
from .oracle import convergence_order, integrate_final_state, unitary_evolve
from .presets import preset, preset_names
from .propagator import SimState, StepSpec, build_model, propagate, rho_rhs


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _fig2b_model():
    cfg = preset("fig2b").base
    return cfg, build_model(cfg.chain, cfg.bath)


def check_coherence_fixtures() -> tuple[bool, str]:
    chain = ChainSpec()
    rho_hot, _ = pseudo_pure_state(chain, 100.0)
    rho_cold, _ = pseudo_pure_state(chain, 10.0)
    c_hot = coherence_l1(rho_hot)
    c_cold = coherence_l1(rho_cold)
    ok = abs(c_hot - 0.09) <= 1e-12 and abs(c_cold - 0.9) <= 1e-12
    return ok, f"coherence(T_s=100) = {c_hot:.12g}, coherence(T_s=10) = {c_cold:.12g}"


def check_initial_current_zero() -> tuple[bool, str]:
    worst = 0.0
    for name in preset_names():
        sweep = preset(name)
        cfg = sweep.base
        model = build_model(cfg.chain, cfg.bath)
        rho0, _ = initial_state(cfg.chain, cfg.init)
        state = SimState.initial(rho0, model.n_sites)
        e0 = energy_current(rho_rhs(state, model), model.h)
        worst = max(worst, abs(e0))
    return worst <= IMAG_TOL, f"max |E(0)| over presets = {worst:.3e}"


def check_conservation(dt: float, t_max: float) -> tuple[bool, str]:
    cfg, model = _fig2b_model()
    rho0, _ = initial_state(cfg.chain, cfg.init)
    records = propagate(model, rho0, StepSpec(dt=dt, t_max=t_max, record_stride=10))
    tr = max(r.trace_residual for r in records)
    he = max(r.herm_residual for r in records)
    return tr <= DYN_TOL and he <= DYN_TOL, f"max |tr-1| = {tr:.2e}, max herm dev = {he:.2e}"


def localized_excitation_state(dim: int) -> np.ndarray:
    """Identity background mixed with one localized excitation.

    Unlike the uniform-superposition pseudo-pure state, this does not
    commute with the chain Hamiltonian, so the zero-coupling check
    exercises genuine unitary dynamics.
    """
    rho = np.eye(dim, dtype=np.complex128) / (2 * dim)
    rho[1, 1] += 0.5
    return rho


def check_unitary_oracle(dt: float, t_probe: float) -> tuple[bool, str]:
    cfg, _ = _fig2b_model()
    decoupled = build_model(cfg.chain, replace(cfg.bath, coupling_strength=0.0))
    probe = localized_excitation_state(decoupled.dim)
    records = propagate(decoupled, probe, StepSpec(dt=dt, t_max=t_probe, record_stride=10))
    worst_cur = max(abs(r.energy_current) for r in records)
    final = integrate_final_state(decoupled, probe, dt, t_probe)[0]
    err = float(np.abs(final - unitary_evolve(decoupled.h, probe, t_probe)).max())
    ok = err <= UNITARY_ORACLE_TOL and worst_cur <= IMAG_TOL
    return ok, f"entrywise error vs unitary oracle = {err:.2e}, max |E| = {worst_cur:.2e}"


def check_convergence_order(dt_scale: float, t_probe: float) -> tuple[bool, str]:
    cfg, model = _fig2b_model()
    rho0, _ = initial_state(cfg.chain, cfg.init)
    dts = [1e-2 * dt_scale, 5e-3 * dt_scale, 2.5e-3 * dt_scale, 1.25e-3 * dt_scale]
    try:
        order = convergence_order(model, rho0, t_probe, dts)
    except IntegrationDivergedError as exc:
        return False, f"diverged during convergence study: {exc}"
    ok = not math.isnan(order) and 3.5 < order < 4.5
    return ok, f"observed order = {order:.3f} (want 3.5..4.5)"


def check_fd_cross(dt: float, t_max: float) -> tuple[bool, str]:
    cfg, model = _fig2b_model()
    rho0, _ = initial_state(cfg.chain, cfg.init)
    records = propagate(model, rho0, StepSpec(dt=dt, t_max=t_max, record_stride=10))
    diffs = [
        abs(r.energy_current_fd - r.energy_current)
        for r in records
        if r.energy_current_fd is not None
    ]
    worst = max(diffs)
    # second-order truncation bound calibrated on this configuration
    spacing = 10 * dt
    bound = 3.0e-4 * (spacing / 1e-2) ** 2
    return worst <= bound, f"max |fd - analytic| = {worst:.3e} (bound {bound:.1e} at spacing {spacing:g})"


def run_validation(fast: bool = False, dt: float = 1e-3) -> list[CheckResult]:
    t_max = 3.0 if fast else 15.0
    t_probe = 2.0 if fast else 10.0
    t_conv = 0.5 if fast else 2.0

    checks = [
        ("coherence fixtures (0.09 / 0.9)", lambda: check_coherence_fixtures()),
        ("initial energy current is zero", lambda: check_initial_current_zero()),
        ("trace/hermiticity conservation", lambda: check_conservation(dt, t_max)),
        ("zero-coupling unitary oracle", lambda: check_unitary_oracle(dt, t_probe)),
        ("integrator convergence order", lambda: check_convergence_order(dt / 1e-3, t_conv)),
        ("energy-current fd cross-check", lambda: check_fd_cross(dt, t_max)),
    ]
    results = []
    for name, fn in checks:
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # surface, do not hide, unexpected failures
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail, time.perf_counter() - start))
    return results


def print_validation_table(results: list[CheckResult]) -> bool:
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        all_ok &= r.ok
        print(f"  {status}  {r.name.ljust(width)}  {r.detail}  [{r.seconds:.1f}s]")
    print(f"validate: {'all checks passed' if all_ok else 'FAILURES present'}")
    return all_ok
