"""Command-line interface.

Subcommands:
  channel    evaluate the thermal-loss channel for one parameter file
  sweep      grid-scan a quantity over one or two parameter axes
  optimize   maximize the capacity bound over the electrical extraction ratio
  figures    write the reference figure datasets (CSV + PNG)
  verify     run the stochastic oracle against the analytic channel noise

Exit codes: 0 success, 2 malformed config/flags, 3 parameter validation
failure, 4 statistical disagreement in `verify`.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path

import numpy as np

from .channel import capacity_lower_bound, channel_correlated, channel_independent
from .figures import write_figure_datasets
from .model import (
    NoiseEnvironment,
    ParameterSchemaError,
    TransducerParams,
    params_from_dict,
    params_to_dict,
    thermal_occupation,
)
from .oracle import DEFAULT_SEED, SimConfig, simulate_output_noise
from .scattering import cross_term
from .sweep import OperatingPoint, SweepAxis, SweepSpec, optimize_zeta_e, run_sweep

_EXIT_OK = 0
_EXIT_PARSE = 2
_EXIT_VALIDATION = 3
_EXIT_VERIFY = 4


def _fmt(value: float) -> str:
    return repr(float(value))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _load_config(path: str) -> tuple[TransducerParams, NoiseEnvironment]:
    try:
        raw = Path(path).read_text()
    except OSError as err:
        raise ParameterSchemaError(f"{path}: {err}") from err
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as err:
        raise ParameterSchemaError(
            f"{path}: invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from err
    try:
        return params_from_dict(data)
    except ParameterSchemaError as err:
        raise ParameterSchemaError(f"{path}: {err}") from err


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ParameterSchemaError(
            f"axis '{text}' must have the form name:min:max:steps")
    name, lo, hi, steps = parts
    try:
        return SweepAxis(name=name, start=float(lo), stop=float(hi), steps=int(steps))
    except ValueError as err:
        # Unknown axis names and unparsable numbers are malformed input,
        # not physics validation failures.
        raise ParameterSchemaError(f"axis '{text}': {err}") from err


def _cmd_channel(args) -> int:
    params, env = _load_config(args.config)
    if args.echo_config:
        _emit(_json_text(params_to_dict(params, env)), args.out)
        return _EXIT_OK
    independent = channel_independent(params, env)
    correlated = channel_correlated(params, env)
    report = {
        "eta": correlated.eta,
        "n_th": thermal_occupation(params.freq_e_hz, env.temperature_k),
        "n_e_independent": independent.n_e,
        "n_e_correlated": correlated.n_e,
        "cross_term": cross_term(params),
        "q_lb_independent": capacity_lower_bound(independent.eta, independent.n_e),
        "q_lb_correlated": capacity_lower_bound(correlated.eta, correlated.n_e),
    }
    if args.format == "csv":
        keys = sorted(report)
        text = ",".join(keys) + "\n" + ",".join(_fmt(report[k]) for k in keys) + "\n"
    else:
        text = _json_text(report)
    _emit(text, args.out)
    return _EXIT_OK


def _sweep_csv(result) -> str:
    axes = result.spec.axes
    lines = []
    if len(axes) == 1:
        lines.append(f"{axes[0].name},{result.spec.quantity}")
        for x, v in zip(result.axis_values[0], result.values):
            lines.append(f"{_fmt(x)},{_fmt(v)}")
    else:
        lines.append(f"{axes[0].name},{axes[1].name},{result.spec.quantity}")
        for i, x in enumerate(result.axis_values[0]):
            for j, y in enumerate(result.axis_values[1]):
                lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(result.values[i, j])}")
    return "\n".join(lines) + "\n"


def _sweep_meta(result) -> dict:
    spec = result.spec
    return {
        "fixed": dataclasses.asdict(spec.fixed),
        "axes": [dataclasses.asdict(axis) for axis in spec.axes],
        "quantity": spec.quantity,
        "minimum": dataclasses.asdict(result.minimum),
        "maximum": dataclasses.asdict(result.maximum),
    }


def _cmd_sweep(args) -> int:
    params, env = _load_config(args.config)
    axes = tuple(_parse_axis(text) for text in args.axis)
    if not axes:
        raise ParameterSchemaError("at least one --axis is required")
    if len(axes) > 2:
        raise ParameterSchemaError("at most two --axis options are supported")
    spec = SweepSpec(fixed=OperatingPoint.from_params(params, env),
                     axes=axes, quantity=args.quantity)
    result = run_sweep(spec)
    if args.format == "json":
        meta = _sweep_meta(result)
        meta["axis_values"] = [grid.tolist() for grid in result.axis_values]
        meta["values"] = result.values.tolist()
        _emit(_json_text(meta), args.out)
    else:
        _emit(_sweep_csv(result), args.out)
        if len(axes) == 2 and args.out:
            sidecar = Path(args.out).with_suffix(".meta.json")
            sidecar.write_text(_json_text(_sweep_meta(result)))
    return _EXIT_OK


def _cmd_optimize(args) -> int:
    params, env = _load_config(args.config)
    best = optimize_zeta_e(OperatingPoint.from_params(params, env))
    _emit(_json_text({
        "zeta_e_star": best.zeta_e,
        "q_lb_star": best.q_lb,
        "degenerate": best.degenerate,
    }), args.out)
    return _EXIT_OK


def _cmd_figures(args) -> int:
    written = write_figure_datasets(args.out, render=not args.no_render)
    for path in written:
        print(path)
    return _EXIT_OK


def _cmd_verify(args) -> int:
    params, env = _load_config(args.config)
    cfg = SimConfig.defaults(params, seed=args.seed)
    overrides = {}
    for field in ("dt", "total_time", "burn_in", "n_trajectories", "psd_window"):
        value = getattr(args, field)
        if value is not None:
            overrides[field] = value
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    result = simulate_output_noise(params, env, cfg)
    target = result.analytic_target + args.target_offset
    if result.std_error > 0.0:
        z = (result.noise_flux_estimate - target) / result.std_error
    else:
        z = 0.0 if result.noise_flux_estimate == target else math.inf
    _emit(_json_text({
        "estimate": result.noise_flux_estimate,
        "std_error": result.std_error,
        "analytic_target": target,
        "z_score": z,
        "config_echo": dataclasses.asdict(cfg),
    }), args.out)
    return _EXIT_OK if abs(z) <= 3.0 else _EXIT_VERIFY


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motkit",
        description="Microwave-optical transducer channel toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    channel = sub.add_parser("channel", help="evaluate the thermal-loss channel")
    channel.add_argument("--config", required=True, help="parameter file (JSON)")
    channel.add_argument("--out", help="output path (default: stdout)")
    channel.add_argument("--format", choices=("csv", "json"), default="json")
    channel.add_argument("--echo-config", action="store_true",
                         help="re-emit the parsed parameters instead of the report")
    channel.set_defaults(func=_cmd_channel)

    swp = sub.add_parser("sweep", help="grid-scan a channel quantity")
    swp.add_argument("--config", required=True, help="parameter file (JSON)")
    swp.add_argument("--axis", action="append", default=[],
                     metavar="name:min:max:steps",
                     help="sweep axis (repeatable, at most twice)")
    swp.add_argument("--quantity", required=True,
                     choices=("n_e", "eta", "q_lb", "cross_term"))
    swp.add_argument("--out", help="output path (default: stdout)")
    swp.add_argument("--format", choices=("csv", "json"), default="csv")
    swp.set_defaults(func=_cmd_sweep)

    opt = sub.add_parser("optimize",
                         help="maximize the capacity bound over zeta_e")
    opt.add_argument("--config", required=True, help="parameter file (JSON)")
    opt.add_argument("--out", help="output path (default: stdout)")
    opt.set_defaults(func=_cmd_optimize)

    figs = sub.add_parser("figures", help="write the reference figure datasets")
    figs.add_argument("--out", default=".", help="output directory")
    figs.add_argument("--no-render", action="store_true",
                      help="write CSV datasets only, skip PNG rendering")
    figs.set_defaults(func=_cmd_figures)

    verify = sub.add_parser("verify",
                            help="compare the stochastic oracle with the analytic noise")
    verify.add_argument("--config", required=True, help="parameter file (JSON)")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--out", help="output path (default: stdout)")
    verify.add_argument("--dt", type=float, default=None)
    verify.add_argument("--total-time", dest="total_time", type=float, default=None)
    verify.add_argument("--burn-in", dest="burn_in", type=float, default=None)
    verify.add_argument("--n-trajectories", dest="n_trajectories", type=int, default=None)
    verify.add_argument("--psd-window", dest="psd_window", type=int, default=None)
    verify.add_argument("--target-offset", dest="target_offset", type=float, default=0.0,
                        help="offset added to the analytic target (negative-control hook)")
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterSchemaError as err:
        print(f"config error: {err}", file=sys.stderr)
        return _EXIT_PARSE
    except ValueError as err:
        print(f"validation error: {err}", file=sys.stderr)
        return _EXIT_VALIDATION
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
