"""Line-based ``key = value`` run configuration.

Recognized keys and defaults:

============================ =========================== =====================
key                          meaning                     default
============================ =========================== =====================
n_sites                      chain length                4
j_coupling                   XY exchange J               1.0
d_z                          DM strength                 0.0
b_z                          field strength              0.0
boundary                     periodic | open             periodic
coupling_strength            bath noise strength         0.003
memory_rate                  inverse bath memory time    5.0
bath_temperature             bath temperature            80.0
system_temperature           initial-state temperature   10.0
init_mode                    pseudo_pure | high_temp_linear | gibbs   pseudo_pure
epsilon_sign                 paper | positive            paper
dt                           integrator step             1e-3
t_max                        horizon                     15.0
record_stride                steps between records       10
sweep_axis                   gamma|Gamma|T_b|T_s|D_z|B_z (none)
sweep_values                 comma-separated floats      (none)
out                          output directory            results
============================ =========================== =====================

Blank lines and lines starting with ``#`` are ignored.  A config with a
sweep axis parses to a SweepConfig, otherwise to a RunConfig.  Unknown keys
and malformed values raise ConfigError with the offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ConfigError
from .model import BathSpec, ChainSpec, InitSpec
from .propagator import StepSpec

SWEEP_AXES = ("gamma", "Gamma", "T_b", "T_s", "D_z", "B_z")

_FLOAT_KEYS = {
    "j_coupling",
    "d_z",
    "b_z",
    "coupling_strength",
    "memory_rate",
    "bath_temperature",
    "system_temperature",
    "dt",
    "t_max",
}
_INT_KEYS = {"n_sites", "record_stride"}
_STR_KEYS = {"boundary", "init_mode", "epsilon_sign", "sweep_axis", "sweep_values", "out"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS

DEFAULTS = {
    "n_sites": 4,
    "j_coupling": 1.0,
    "d_z": 0.0,
    "b_z": 0.0,
    "boundary": "periodic",
    "coupling_strength": 0.003,
    "memory_rate": 5.0,
    "bath_temperature": 80.0,
    "system_temperature": 10.0,
    "init_mode": "pseudo_pure",
    "epsilon_sign": "paper",
    "dt": 1e-3,
    "t_max": 15.0,
    "record_stride": 10,
    "out": "results",
}


@dataclass(frozen=True)
class RunConfig:
    chain: ChainSpec
    bath: BathSpec
    init: InitSpec
    step: StepSpec
    output_path: str = "results"
    label: str = "run"


@dataclass(frozen=True)
class SweepConfig:
    base: RunConfig
    axis: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ConfigError(f"sweep_axis must be one of {', '.join(SWEEP_AXES)}, got {self.axis!r}")
        if not self.values:
            raise ConfigError("sweep_values must be a nonempty list")
        if not all(v == v and abs(v) != float("inf") for v in self.values):
            raise ConfigError(f"sweep_values must be finite, got {self.values}")


def apply_axis(cfg: RunConfig, axis: str, value: float) -> RunConfig:
    """RunConfig with one swept parameter replaced."""
    if axis == "gamma":
        return replace(cfg, bath=replace(cfg.bath, memory_rate=value))
    if axis == "Gamma":
        return replace(cfg, bath=replace(cfg.bath, coupling_strength=value))
    if axis == "T_b":
        return replace(cfg, bath=replace(cfg.bath, bath_temperature=value))
    if axis == "T_s":
        return replace(cfg, init=replace(cfg.init, system_temperature=value))
    if axis == "D_z":
        return replace(cfg, chain=replace(cfg.chain, dm_strength=value))
    if axis == "B_z":
        return replace(cfg, chain=replace(cfg.chain, field_strength=value))
    raise ConfigError(f"unknown sweep axis {axis!r}")


def parse_config(text: str, label: str = "run") -> RunConfig | SweepConfig:
    """Parse config text to a RunConfig or (when a sweep axis is set) SweepConfig."""
    values: dict[str, object] = {}
    lines_seen: dict[str, int] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=ln)
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", line=ln)
        if key in _FLOAT_KEYS:
            try:
                values[key] = float(val)
            except ValueError:
                raise ConfigError(f"{key} must be a number, got {val!r}", line=ln) from None
        elif key in _INT_KEYS:
            try:
                values[key] = int(val)
            except ValueError:
                raise ConfigError(f"{key} must be an integer, got {val!r}", line=ln) from None
        else:
            values[key] = val
        lines_seen[key] = ln

    merged = dict(DEFAULTS)
    sweep_axis = values.pop("sweep_axis", None)
    sweep_values_raw = values.pop("sweep_values", None)
    merged.update(values)

    def _build(cls, kwargs, keys):
        try:
            return cls(**kwargs)
        except ValueError as exc:
            # point at the offending key's line when it can be identified,
            # otherwise at the last line of the group that was set
            ln = None
            for k in keys:
                if k in lines_seen and k.removeprefix("init_") in str(exc):
                    ln = lines_seen[k]
                    break
            if ln is None:
                ln = max((lines_seen[k] for k in keys if k in lines_seen), default=None)
            raise ConfigError(str(exc), line=ln) from None

    chain = _build(
        ChainSpec,
        dict(
            n_sites=merged["n_sites"],
            j_coupling=merged["j_coupling"],
            dm_strength=merged["d_z"],
            field_strength=merged["b_z"],
            boundary=merged["boundary"],
        ),
        ("n_sites", "j_coupling", "d_z", "b_z", "boundary"),
    )
    bath = _build(
        BathSpec,
        dict(
            coupling_strength=merged["coupling_strength"],
            memory_rate=merged["memory_rate"],
            bath_temperature=merged["bath_temperature"],
        ),
        ("coupling_strength", "memory_rate", "bath_temperature"),
    )
    init = _build(
        InitSpec,
        dict(
            system_temperature=merged["system_temperature"],
            mode=merged["init_mode"],
            epsilon_sign=merged["epsilon_sign"],
        ),
        ("system_temperature", "init_mode", "epsilon_sign"),
    )
    step = _build(
        StepSpec,
        dict(dt=merged["dt"], t_max=merged["t_max"], record_stride=merged["record_stride"]),
        ("dt", "t_max", "record_stride"),
    )
    run = RunConfig(chain=chain, bath=bath, init=init, step=step, output_path=str(merged["out"]), label=label)

    if sweep_axis is None and sweep_values_raw is None:
        return run
    if sweep_axis is None or sweep_values_raw is None:
        raise ConfigError("sweep_axis and sweep_values must be given together")
    try:
        sweep_values = tuple(float(x) for x in str(sweep_values_raw).split(",") if x.strip())
    except ValueError:
        raise ConfigError(
            f"sweep_values must be comma-separated numbers, got {sweep_values_raw!r}",
            line=lines_seen.get("sweep_values"),
        ) from None
    return SweepConfig(base=run, axis=str(sweep_axis), values=sweep_values)
