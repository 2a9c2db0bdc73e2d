"""Throughput comparison of the numba and numpy integration kernels.

Usage::

    python benchmarks/bench_kernels.py [--steps N] [--sites N]

Runs the same RK4 loop on both backends (when numba is available) and
prints steps/second plus the speedup.  The configuration matches the
warm-bath preset family: 4-site ring, pseudo-pure initial state.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spinbath import kernels
from spinbath.model import BathSpec, ChainSpec, pseudo_pure_state
from spinbath.propagator import build_model


def packed_problem(n_sites: int):
    chain = ChainSpec(n_sites=n_sites)
    model = build_model(chain, BathSpec(coupling_strength=0.003, memory_rate=5.0, bath_temperature=80.0))
    if n_sites == 4:
        rho0, _ = pseudo_pure_state(chain, 10.0)
    else:
        rho0 = np.eye(model.dim, dtype=np.complex128) / model.dim
    y = np.zeros((2 * n_sites + 1, model.dim, model.dim), dtype=np.complex128)
    y[0] = rho0
    args = (
        model.h,
        model.lindblads,
        model.lindblads_dag,
        model.coeff_lower,
        model.coeff_raise,
        model.gamma,
    )
    return y, args


def time_backend(advance, y, args, steps: int, dt: float = 1e-3) -> float:
    work = y.copy()
    start = time.perf_counter()
    status = advance(work, *args, dt, steps)
    elapsed = time.perf_counter() - start
    assert status == -1, "benchmark configuration diverged"
    return elapsed


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=3000)
    parser.add_argument("--sites", type=int, default=4)
    args = parser.parse_args()

    y, kernel_args = packed_problem(args.sites)

    t_np = time_backend(kernels.advance_rk4_numpy, y, kernel_args, args.steps)
    print(f"numpy : {args.steps / t_np:10.0f} steps/s  ({t_np:.2f} s for {args.steps} steps)")

    if kernels.HAVE_NUMBA:
        # warm-up triggers JIT compilation outside the timed region
        time_backend(kernels.advance_rk4_numba, y, kernel_args, 10)
        t_nb = time_backend(kernels.advance_rk4_numba, y, kernel_args, args.steps)
        print(f"numba : {args.steps / t_nb:10.0f} steps/s  ({t_nb:.2f} s for {args.steps} steps)")
        print(f"speedup: {t_np / t_nb:.1f}x")
    else:
        print("numba : unavailable or disabled (set neither SPINBATH_DISABLE_JIT nor NUMBA_DISABLE_JIT)")


if __name__ == "__main__":
    main()
