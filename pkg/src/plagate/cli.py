"""Command-line front end.

Subcommands: vgnd (footer virtual-ground solution), power (single-vector
per-line power), sweep (all vectors, CSV reports + comparison), compare
(two report CSVs), transient (step-response waveforms for both variants).

Device/supply flags carry the same long names as the config-file keys and
override the config file, which overrides the built-in defaults. Exit
codes: 0 success, 1 internal error, 2 user/config error. Floating output
is printed with 6 significant digits; CSVs carry full precision.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import config as cfg
from .device import leakage_saving_ratio, virtual_ground_closed_form, virtual_ground_numeric
from .errors import NoSolutionError, PlagateError, SynthesisError
from .netlist import CONVENTIONAL, POWER_GATED, save_json, synthesize
from .pla import bits_from_string, load_pla
from .power import (
    calibrate,
    compare_designs,
    derive_calibration,
    line_power,
    load_report_csv,
    sweep_all_vectors,
)
from .transient import RcStage, footer_resistance, simulate_step


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _device_flag_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", type=Path, default=None, metavar="FILE",
                        help="key=value device/supply config file")
    for key in cfg.DEFAULTS:
        parent.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float,
                            default=None, metavar="X",
                            help=f"override config key {key} (default {cfg.DEFAULTS[key]:g})")
    return parent


def _resolve_values(args: argparse.Namespace) -> dict[str, float]:
    overrides = {key: getattr(args, key) for key in cfg.DEFAULTS if getattr(args, key) is not None}
    return cfg.resolve(config_path=args.config, overrides=overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plagate",
        description="Design and power analysis of footer-gated programmable logic arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    device = _device_flag_parser()

    p = sub.add_parser("vgnd", parents=[device],
                       help="solve the footer virtual-ground balance")
    p.set_defaults(func=cmd_vgnd)

    p = sub.add_parser("power", parents=[device],
                       help="per-line power for a single input vector")
    p.add_argument("--pla", type=Path, required=True, help=".pla input file")
    p.add_argument("--vector", required=True, help="input bits, e.g. 101")
    p.add_argument("--calibration", type=Path, default=None,
                   help="reference power table CSV (default: derive from device model)")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("sweep", parents=[device],
                       help="power report over every input vector")
    p.add_argument("--pla", type=Path, required=True, help=".pla input file")
    p.add_argument("--calibration", type=Path, default=None,
                   help="reference power table CSV (default: derive from device model)")
    p.add_argument("--out-dir", type=Path, required=True, help="output directory")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="summarize savings between two report CSVs")
    p.add_argument("--conventional", type=Path, required=True)
    p.add_argument("--gated", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None, help="write the summary as JSON")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("transient", parents=[device],
                       help="step-response waveforms, conventional vs gated")
    p.add_argument("--duration", type=float, required=True, help="simulated time, s")
    p.add_argument("--timestep", type=float, required=True, help="integration step, s")
    p.add_argument("--node", default="out", help="node name used in output files")
    p.add_argument("--v-start", type=float, default=0.0, help="initial node voltage, V")
    p.add_argument("--v-target", type=float, default=None,
                   help="step target voltage, V (default: vdd)")
    p.add_argument("--out-dir", type=Path, required=True, help="output directory")
    p.set_defaults(func=cmd_transient)

    return parser


def cmd_vgnd(args: argparse.Namespace) -> int:
    values = _resolve_values(args)
    fc = cfg.footer_config(values)
    vdd = values["vdd"]
    closed = virtual_ground_closed_form(fc, vdd)
    try:
        numeric = virtual_ground_numeric(fc, vdd)
        numeric_text = f"{_fmt(numeric)} V"
        diff_text = f"{_fmt(abs(closed.raw - numeric))} V"
    except NoSolutionError as exc:
        numeric_text = f"no root within [0, vdd] ({exc})"
        diff_text = "n/a"
    ratio = leakage_saving_ratio(fc, vdd, closed.clamped)
    print(f"virtual ground raw        : {_fmt(closed.raw)} V")
    print(f"virtual ground clamped    : {_fmt(closed.clamped)} V")
    print(f"virtual ground bisection  : {numeric_text}")
    print(f"closed form - bisection   : {diff_text}")
    print(f"sleep/active leakage ratio: {_fmt(ratio)}")
    return 0


def _load_calibration(args: argparse.Namespace, lines, values) -> "LineCalibration":
    if args.calibration is not None:
        return calibrate(load_report_csv(args.calibration)).calibration
    return derive_calibration(tuple(lines), cfg.supply_config(values), cfg.footer_config(values))


def cmd_power(args: argparse.Namespace) -> int:
    values = _resolve_values(args)
    personality = load_pla(args.pla)
    netlist = synthesize(personality, CONVENTIONAL)
    cal = _load_calibration(args, netlist.input_nets, values)
    rows = line_power(netlist, bits_from_string(args.vector), cal)
    print("vector line conventional_pw gated_pw saving")
    for r in rows:
        print(f"{r.vector} {r.line} {_fmt(r.conventional_pw)} {_fmt(r.gated_pw)} "
              f"{_fmt(r.saving_fraction)}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    values = _resolve_values(args)
    personality = load_pla(args.pla)
    netlist = synthesize(personality, CONVENTIONAL)
    cal = _load_calibration(args, netlist.input_nets, values)

    conventional = sweep_all_vectors(netlist, cal.ungated())
    gated = sweep_all_vectors(netlist, cal)
    summary = compare_designs(conventional, gated)

    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    conventional.to_csv(out_dir / "conventional.csv")
    gated.to_csv(out_dir / "gated.csv")
    (out_dir / "comparison.json").write_text(summary.json_text(), encoding="utf-8")
    save_json(netlist, out_dir / "netlist.json")
    try:
        gated_netlist = synthesize(personality, POWER_GATED,
                                   footer_template=cfg.footer_config(values))
        save_json(gated_netlist, out_dir / "netlist_gated.json")
    except SynthesisError:
        pass  # nothing to gate (e.g. no product terms); reports are still valid

    for line, s in summary.per_line.items():
        print(f"line {line}: mean saving {_fmt(s.mean_saving)} over {s.rows} rows")
    print(f"total saving {_fmt(summary.total_saving)}")
    print(f"wrote {out_dir / 'conventional.csv'}, {out_dir / 'gated.csv'}, "
          f"{out_dir / 'comparison.json'}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    conventional = load_report_csv(args.conventional)
    gated = load_report_csv(args.gated)
    summary = compare_designs(conventional, gated)
    print("line mean_saving min_saving max_saving rows")
    for line, s in summary.per_line.items():
        print(f"{line} {_fmt(s.mean_saving)} {_fmt(s.min_saving)} {_fmt(s.max_saving)} {s.rows}")
    print(f"total {_fmt(summary.total_saving)}")
    if args.out is not None:
        args.out.write_text(summary.json_text(), encoding="utf-8")
    return 0


def cmd_transient(args: argparse.Namespace) -> int:
    values = _resolve_values(args)
    v_target = args.v_target if args.v_target is not None else values["vdd"]
    stages = {
        "conventional": RcStage(
            drive_resistance=values["r_drive"],
            capacitance=values["c_node"],
            v_start=args.v_start,
            v_target=v_target,
        ),
        "gated": RcStage(
            drive_resistance=values["r_drive"],
            capacitance=values["c_node"],
            v_start=args.v_start,
            v_target=v_target,
            footer_resistance=footer_resistance(values["w_footer"], values["r_unit"]),
        ),
    }
    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    settle_level = args.v_start + 0.632 * (v_target - args.v_start)
    for variant, stage in stages.items():
        wf = simulate_step(stage, args.duration, args.timestep, node=args.node)
        path = out_dir / f"{args.node}_{variant}.csv"
        wf.to_csv(path)
        crossing = wf.first_crossing(settle_level)
        crossing_text = f"{_fmt(crossing)} s" if crossing is not None else "not reached"
        print(f"{variant}: tau {_fmt(stage.time_constant)} s, "
              f"63.2% crossing {crossing_text}, final {_fmt(wf.final())} V -> {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PlagateError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
