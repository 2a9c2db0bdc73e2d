"""Hot integration kernels: numba-compiled with a pure-numpy fallback.

The joint ODE state is packed as one complex128 array of shape
``(2n+1, d, d)``: slot 0 is the density matrix, slots ``1..n`` the
memory operators driven by the lowering couplings, slots ``n+1..2n``
the ones driven by the raising couplings.

Backend selection happens once at import time:

* numba is used when importable, unless ``SPINBATH_DISABLE_JIT`` or
  ``NUMBA_DISABLE_JIT`` is set to a truthy value;
* otherwise a vectorized numpy implementation with identical semantics
  runs the same loop.

Both variants stay importable (``advance_rk4_numpy`` / ``advance_rk4_numba``)
so the benchmark in ``benchmarks/bench_kernels.py`` can compare them.

Kernel contract, shared by both backends::

    rhs(y) slot 0:   -i[H, rho] + sum_j ( [L_j, rho A_j^+] - [L_j^+, A_j rho]
                                        + [L_j^+, rho B_j^+] - [L_j, B_j rho] )
    rhs(y) slot j:   c_low[j]*L_j   - rate[j]*A_j + [M, A_j]
    rhs(y) slot n+j: c_high[j]*L_j^+ - rate[j]*B_j + [M, B_j]
    M = -iH - sum_j (L_j^+ A_j + L_j B_j)

where A_j / B_j are the lowering/raising-channel memory operators, and
``advance(y, ..., dt, nsteps)`` applies classical RK4 ``nsteps`` times
in place, returning the 0-based index of the first step that produced a
non-finite entry, or -1 on success.
"""

from __future__ import annotations

import os

import numpy as np


def _jit_disabled() -> bool:
    for var in ("SPINBATH_DISABLE_JIT", "NUMBA_DISABLE_JIT"):
        if os.environ.get(var, "").strip().lower() in ("1", "true", "yes", "on"):
            return True
    return False


# ---------------------------------------------------------------------------
# numpy fallback: batched matmuls over the stacked site index


def rhs_numpy(y, h, lops, ldags, c_low, c_high, rate, out):
    n = lops.shape[0]
    rho = y[0]
    olow = y[1 : 1 + n]
    ohigh = y[1 + n : 1 + 2 * n]
    olow_dag = olow.conj().transpose(0, 2, 1)
    ohigh_dag = ohigh.conj().transpose(0, 2, 1)

    m = -1j * h - (ldags @ olow).sum(axis=0) - (lops @ ohigh).sum(axis=0)

    a = rho @ olow_dag
    b = olow @ rho
    c = rho @ ohigh_dag
    e = ohigh @ rho
    coupling = (lops @ a - a @ lops) - (ldags @ b - b @ ldags)
    coupling += (ldags @ c - c @ ldags) - (lops @ e - e @ lops)
    out[0] = -1j * (h @ rho - rho @ h) + coupling.sum(axis=0)

    scale = rate[:, None, None]
    out[1 : 1 + n] = c_low[:, None, None] * lops - scale * olow + (m @ olow - olow @ m)
    out[1 + n :] = c_high[:, None, None] * ldags - scale * ohigh + (m @ ohigh - ohigh @ m)
    return out


def advance_rk4_numpy(y, h, lops, ldags, c_low, c_high, rate, dt, nsteps):
    k1 = np.empty_like(y)
    k2 = np.empty_like(y)
    k3 = np.empty_like(y)
    k4 = np.empty_like(y)
    for step in range(nsteps):
        rhs_numpy(y, h, lops, ldags, c_low, c_high, rate, k1)
        rhs_numpy(y + (0.5 * dt) * k1, h, lops, ldags, c_low, c_high, rate, k2)
        rhs_numpy(y + (0.5 * dt) * k2, h, lops, ldags, c_low, c_high, rate, k3)
        rhs_numpy(y + dt * k3, h, lops, ldags, c_low, c_high, rate, k4)
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(y).all():
            return step
    return -1


# ---------------------------------------------------------------------------
# numba variant: explicit site loop, BLAS-backed np.dot on 2D blocks

HAVE_NUMBA = False
advance_rk4_numba = None
rhs_numba = None

if not _jit_disabled():
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _adjoint_into(a, out):
        d = a.shape[0]
        for r in range(d):
            for c in range(d):
                out[r, c] = np.conj(a[c, r])

    @njit(cache=True, nogil=True)
    def _rhs(y, h, lops, ldags, c_low, c_high, rate, out):
        n = lops.shape[0]
        d = h.shape[0]
        rho = y[0]
        m = -1j * h
        for j in range(n):
            m = m - np.dot(ldags[j], y[1 + j]) - np.dot(lops[j], y[1 + n + j])
        drho = -1j * (np.dot(h, rho) - np.dot(rho, h))
        tmp = np.empty((d, d), np.complex128)
        for j in range(n):
            olow = y[1 + j]
            ohigh = y[1 + n + j]
            lop = lops[j]
            ldag = ldags[j]
            _adjoint_into(olow, tmp)
            a = np.dot(rho, tmp)
            drho += np.dot(lop, a) - np.dot(a, lop)
            b = np.dot(olow, rho)
            drho -= np.dot(ldag, b) - np.dot(b, ldag)
            _adjoint_into(ohigh, tmp)
            c = np.dot(rho, tmp)
            drho += np.dot(ldag, c) - np.dot(c, ldag)
            e = np.dot(ohigh, rho)
            drho -= np.dot(lop, e) - np.dot(e, lop)
        out[0] = drho
        for j in range(n):
            olow = y[1 + j]
            ohigh = y[1 + n + j]
            out[1 + j] = c_low[j] * lops[j] - rate[j] * olow + (np.dot(m, olow) - np.dot(olow, m))
            out[1 + n + j] = (
                c_high[j] * ldags[j] - rate[j] * ohigh + (np.dot(m, ohigh) - np.dot(ohigh, m))
            )
        return out

    @njit(cache=True, nogil=True)
    def _advance(y, h, lops, ldags, c_low, c_high, rate, dt, nsteps):
        k1 = np.empty_like(y)
        k2 = np.empty_like(y)
        k3 = np.empty_like(y)
        k4 = np.empty_like(y)
        for step in range(nsteps):
            _rhs(y, h, lops, ldags, c_low, c_high, rate, k1)
            _rhs(y + (0.5 * dt) * k1, h, lops, ldags, c_low, c_high, rate, k2)
            _rhs(y + (0.5 * dt) * k2, h, lops, ldags, c_low, c_high, rate, k3)
            _rhs(y + dt * k3, h, lops, ldags, c_low, c_high, rate, k4)
            y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            flat = y.ravel()
            ok = True
            for i in range(flat.size):
                v = flat[i]
                if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                    ok = False
                    break
            if not ok:
                return step
        return -1

    advance_rk4_numba = _advance
    rhs_numba = _rhs


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# the pair the propagator actually calls
if HAVE_NUMBA:
    advance_rk4 = advance_rk4_numba
    rhs = rhs_numba
else:
    advance_rk4 = advance_rk4_numpy
    rhs = rhs_numpy
