"""Command-line driver.

Subcommands:

* ``simulate --config FILE [--out DIR]``   one trajectory from a config file
* ``sweep --config FILE [--workers K]``    parameter sweep from a config file
* ``preset NAME [--out DIR] [--workers K] [--dt X] [--t-max Y]``
* ``validate [--fast] [--dt X]``           run the self-check suite

Exit codes: 0 success, 1 validation or integration failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import RunConfig, SweepConfig, parse_config
from .errors import ConfigError
from .presets import preset, preset_description, preset_names
from .runner import run_single, run_sweep
from .validate import print_validation_table, run_validation

USAGE_ERROR = 2
FAILURE = 1


def _read_config(path: str, label: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    return parse_config(text, label=label)


def _cmd_simulate(args) -> int:
    cfg = _read_config(args.config, label=_label_from_path(args.config))
    if isinstance(cfg, SweepConfig):
        print("error: config defines a sweep; use the 'sweep' subcommand", file=sys.stderr)
        return USAGE_ERROR
    if args.out:
        cfg = replace(cfg, output_path=args.out)
    result = run_single(cfg)
    if not result.ok:
        print(f"error: {result.error}", file=sys.stderr)
        return FAILURE
    print(f"wrote {result.csv_path}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _read_config(args.config, label=_label_from_path(args.config))
    if isinstance(cfg, RunConfig):
        print("error: config defines a single run; use the 'simulate' subcommand", file=sys.stderr)
        return USAGE_ERROR
    if args.out:
        cfg = replace(cfg, base=replace(cfg.base, output_path=args.out))
    return _finish_sweep(run_sweep(cfg, workers=args.workers))


def _cmd_preset(args) -> int:
    sweep = preset(args.name, out=args.out, dt=args.dt, t_max=args.t_max)
    print(f"preset {args.name}: {preset_description(args.name)}")
    return _finish_sweep(run_sweep(sweep, workers=args.workers))


def _finish_sweep(results) -> int:
    status = 0
    for res in results:
        if res.ok:
            print(f"wrote {res.csv_path}")
        else:
            print(f"error: {res.axis}={res.value:g} failed: {res.error}", file=sys.stderr)
            status = FAILURE
    return status


def _cmd_validate(args) -> int:
    results = run_validation(fast=args.fast, dt=args.dt)
    return 0 if print_validation_table(results) else FAILURE


def _label_from_path(path: str) -> str:
    import os

    stem = os.path.splitext(os.path.basename(path))[0]
    return stem or "run"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinbath",
        description=(
            "Dissipative XY spin chain in finite-temperature memory baths: "
            "energy current and l1 coherence dynamics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one trajectory from a config file")
    p_sim.add_argument("--config", required=True, help="key = value config file")
    p_sim.add_argument("--out", help="output directory (overrides config)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep from a config file")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", help="output directory (overrides config)")
    p_sweep.add_argument("--workers", type=int, default=None, help="concurrent sweep points (default: CPU count)")
    p_sweep.set_defaults(func=_cmd_sweep)

    descriptions = "\n".join(f"  {n}: {preset_description(n)}" for n in preset_names())
    p_preset = sub.add_parser(
        "preset",
        help="run a named experiment family",
        description="Preset families (grid points marked '(chosen)' are ours, not published):\n" + descriptions,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_preset.add_argument("name", choices=preset_names())
    p_preset.add_argument("--out", default="results")
    p_preset.add_argument("--workers", type=int, default=None)
    p_preset.add_argument("--dt", type=float, default=None, help="override integrator step")
    p_preset.add_argument("--t-max", type=float, default=None, help="override horizon")
    p_preset.set_defaults(func=_cmd_preset)

    p_val = sub.add_parser("validate", help="run the self-check suite")
    p_val.add_argument("--fast", action="store_true", help="shorter horizons, same checks")
    p_val.add_argument("--dt", type=float, default=1e-3, help="integrator step used by the checks")
    p_val.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
