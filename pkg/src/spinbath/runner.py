"""Run execution and CSV emission.

One CSV per trajectory, fixed column order, every number printed with 12
significant digits, so identical inputs produce byte-identical files on a
given platform.  Sweep points are independent trajectories and run
concurrently on a thread pool; the integration kernels release the GIL, so
threads scale on multicore hosts while staying friendly to restricted
sandboxes where process pools are unavailable.  The summary file is written
once, in sweep order, after all points finish.
"""

from __future__ import annotations

import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import RunConfig, SweepConfig, apply_axis
from .constants import HIGH_TEMP_RATIO_WARN
from .errors import IntegrationDivergedError
from .model import initial_state, validity_ratio
from .observables import TrajectoryRecord
from .propagator import build_model, propagate

CSV_COLUMNS = (
    "t",
    "energy",
    "energy_current",
    "energy_current_fd",
    "coherence_l1",
    "trace_residual",
    "herm_residual",
    "min_eig",
)

SUMMARY_COLUMNS = (
    "axis",
    "value",
    "peak_energy_current",
    "t_peak",
    "min_energy_current",
    "t_min",
    "final_coherence",
    "mean_coherence",
    "max_trace_residual",
    "max_herm_residual",
    "min_eigenvalue",
    "psd_warning",
    "status",
)


def _fmt(x: float | None) -> str:
    if x is None:
        return "nan"
    return f"{x:.11e}"


def format_row(rec: TrajectoryRecord) -> str:
    return ",".join(
        (
            _fmt(rec.t),
            _fmt(rec.energy),
            _fmt(rec.energy_current),
            _fmt(rec.energy_current_fd),
            _fmt(rec.coherence_l1),
            _fmt(rec.trace_residual),
            _fmt(rec.herm_residual),
            _fmt(rec.min_eig),
        )
    )


def write_trajectory_csv(path: str, records: list[TrajectoryRecord]) -> None:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(format_row(r) for r in records)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass
class RunResult:
    """Outcome of one trajectory, as summarized in the sweep summary file."""

    label: str
    axis: str
    value: float
    csv_path: str | None
    records: list[TrajectoryRecord] | None
    psd_warning: bool
    error: Exception | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def execute_run(cfg: RunConfig, csv_path: str | None, axis: str = "", value: float = float("nan")) -> RunResult:
    """Integrate one configuration and (optionally) write its CSV."""
    model = build_model(cfg.chain, cfg.bath)
    rho0, psd_ok = initial_state(cfg.chain, cfg.init)
    if not psd_ok:
        print(
            f"warning: [{cfg.label}] initial state is not positive semidefinite "
            f"(mode={cfg.init.mode}, T_s={cfg.init.system_temperature:g}); evolving it anyway",
            file=sys.stderr,
        )
    ratio = validity_ratio(cfg.chain, cfg.init.system_temperature)
    if ratio > HIGH_TEMP_RATIO_WARN:
        print(
            f"warning: [{cfg.label}] ||H||/T_s = {ratio:.2g} exceeds {HIGH_TEMP_RATIO_WARN:g}; "
            "the high-temperature initial-state forms are questionable here",
            file=sys.stderr,
        )
    try:
        records = propagate(model, rho0, cfg.step)
    except (IntegrationDivergedError, FloatingPointError) as exc:
        # FloatingPointError: a run can grow beyond the observable residual
        # tolerances before any entry reaches Inf/NaN; both are run failures
        return RunResult(cfg.label, axis, value, None, None, not psd_ok, error=exc)
    if csv_path is not None:
        write_trajectory_csv(csv_path, records)
    return RunResult(cfg.label, axis, value, csv_path, records, not psd_ok)


def run_single(cfg: RunConfig) -> RunResult:
    os.makedirs(cfg.output_path, exist_ok=True)
    path = os.path.join(cfg.output_path, f"{cfg.label}.csv")
    return execute_run(cfg, path)


def summary_row(res: RunResult) -> str:
    if not res.ok or not res.records:
        return ",".join(
            (res.axis, _fmt(res.value)) + ("nan",) * (len(SUMMARY_COLUMNS) - 4) + (str(int(res.psd_warning)), "diverged")
        )
    cur = np.array([r.energy_current for r in res.records])
    coh = np.array([r.coherence_l1 for r in res.records])
    ts = np.array([r.t for r in res.records])
    return ",".join(
        (
            res.axis,
            _fmt(res.value),
            _fmt(float(cur.max())),
            _fmt(float(ts[int(cur.argmax())])),
            _fmt(float(cur.min())),
            _fmt(float(ts[int(cur.argmin())])),
            _fmt(float(coh[-1])),
            _fmt(float(coh.mean())),
            _fmt(max(r.trace_residual for r in res.records)),
            _fmt(max(r.herm_residual for r in res.records)),
            _fmt(min(r.min_eig for r in res.records)),
            str(int(res.psd_warning)),
            "ok",
        )
    )


def run_sweep(sweep: SweepConfig, workers: int | None = None) -> list[RunResult]:
    """Run all sweep points concurrently; write per-run CSVs and the summary.

    A diverged point is reported in the summary and does not abort its
    siblings; callers map any failed point to a nonzero exit status.
    """
    base = sweep.base
    os.makedirs(base.output_path, exist_ok=True)
    workers = workers or os.cpu_count() or 1
    workers = max(1, min(workers, len(sweep.values)))

    def job(value: float) -> RunResult:
        cfg = apply_axis(base, sweep.axis, value)
        path = os.path.join(base.output_path, f"{base.label}_{sweep.axis}={value:g}.csv")
        return execute_run(cfg, path, axis=sweep.axis, value=value)

    if workers == 1:
        results = [job(v) for v in sweep.values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, sweep.values))

    summary_path = os.path.join(base.output_path, f"{base.label}_summary.csv")
    lines = [",".join(SUMMARY_COLUMNS)]
    lines.extend(summary_row(r) for r in results)
    with open(summary_path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return results
