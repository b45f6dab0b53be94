"""Command-line interface.

Exit codes: 0 success, 1 validation/usage error, 2 solver failure,
3 input/output failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import SolverError, ValidationError
from .harness import (
    emit_csv,
    emit_ratio_csv,
    format_config,
    preset_config,
    preset_names,
    ratio_sweep,
    read_config,
    run_scenario,
    write_csv_file,
)
from .observables import find_thermalization_detuning, steady_report

_FMT = "{:.12g}".format


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; here 2 means solver
    # failure, so usage problems are remapped to the validation exit code
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="commonbath", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, config_required: bool = True) -> None:
        p.add_argument("--config", "-c", required=config_required,
                       help="path to a key=value config file")
        p.add_argument("--output", "-o", default=None, help="output path")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for sweeps (default 1)")
        p.add_argument("--quiet", action="store_true",
                       help="suppress informational messages")

    add_common(sub.add_parser("steady", help="solve one steady state and print the report"))
    add_common(sub.add_parser("sweep", help="run the configured sweep and write CSV"))
    add_common(sub.add_parser("teff", help="print the two transition effective temperatures"))
    add_common(sub.add_parser("find-detuning",
                              help="detuning at which both transitions thermalize"))
    preset = sub.add_parser("preset", help="write a named preset config")
    preset.add_argument("name", choices=preset_names())
    add_common(preset, config_required=False)
    return parser


def _cmd_steady(args: argparse.Namespace) -> int:
    cfg = read_config(args.config)
    if cfg.axes:
        raise ValidationError(
            "steady expects a point config without sweep axes; use sweep"
        )
    report = steady_report(cfg.system_params(), cfg.bath_config())
    eta = report.rho_free
    lines = [
        ("concurrence", report.concurrence),
        ("q_a", report.q_a),
        ("q_b", report.q_b),
        ("q_c", report.q_c),
        ("q_dep", report.q_dep),
        ("t_eff_1", report.t_eff_1),
        ("t_eff_2", report.t_eff_2),
        ("residual", report.residual),
        ("eta_11", eta[0, 0].real),
        ("eta_22", eta[1, 1].real),
        ("eta_33", eta[2, 2].real),
        ("eta_44", eta[3, 3].real),
        ("eta_23_re", eta[1, 2].real),
        ("eta_23_im", eta[1, 2].imag),
    ]
    for key, value in lines:
        print(f"{key} = {_FMT(value)}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = read_config(args.config)
    out_path = args.output or cfg.output
    if not out_path:
        raise ValidationError("no output path: pass --output or set output in the config")
    if cfg.ratio_sweep:
        rows, metadata = ratio_sweep(cfg, threads=args.threads)
        write_csv_file(out_path, emit_ratio_csv, rows, metadata)
    else:
        rows = run_scenario(cfg, threads=args.threads)
        axis_names = [axis.name for axis in cfg.axes]
        write_csv_file(out_path, emit_csv, rows, axis_names)
        failed = sum(1 for row in rows if row.error)
        if failed and not args.quiet:
            print(f"warning: {failed} of {len(rows)} rows failed", file=sys.stderr)
    if not args.quiet:
        print(f"wrote {len(rows)} rows to {out_path}", file=sys.stderr)
    return 0


def _cmd_teff(args: argparse.Namespace) -> int:
    from .observables import effective_temperatures

    cfg = read_config(args.config)
    t1, t2 = effective_temperatures(cfg.system_params(), cfg.bath_config())
    print(f"t_eff_1 = {_FMT(t1)}")
    print(f"t_eff_2 = {_FMT(t2)}")
    return 0


def _cmd_find_detuning(args: argparse.Namespace) -> int:
    cfg = read_config(args.config)
    delta, t_eff = find_thermalization_detuning(
        t_a=cfg.t_a, t_b=cfg.t_b, omega=cfg.omega,
        eps_m=0.5 * (cfg.eps_a + cfg.eps_b),
        gamma_a=cfg.gamma_a, gamma_b=cfg.gamma_b,
    )
    print(f"delta_eps = {_FMT(delta)}")
    print(f"t_eff = {_FMT(t_eff)}")
    return 0


def _cmd_preset(args: argparse.Namespace) -> int:
    text = format_config(preset_config(args.name))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if not args.quiet:
            print(f"wrote preset {args.name} to {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "steady": _cmd_steady,
    "sweep": _cmd_sweep,
    "teff": _cmd_teff,
    "find-detuning": _cmd_find_detuning,
    "preset": _cmd_preset,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
