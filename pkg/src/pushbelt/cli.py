"""Command-line front end: solve one operating point, run parameter sweeps,
or validate a configuration.

    pushbelt solve <config> [--out DIR] [--format csv|json]
                   [--faxe-angle half|full] [--flanges rigid|deformable]
    pushbelt sweep <config> --param NAME --grid v1,v2,... [--out DIR] ...
    pushbelt validate <config>

Exit codes: 0 success, 2 configuration error, 3 no convergence,
4 torque capacity exceeded (gross slip), 5 I/O error.

All emitted files are plain tables (CSV by default) with full-precision
numbers; two runs on identical inputs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .analysis import (SweepSpec, belt_power_share, contact_slip_power,
                       power_efficiency, run_sweep)
from .config import ParsedConfig, parse_config, serialize_config
from .errors import (CapacityExceededError, ConfigError, ConvergenceError,
                     PushBeltError, SolverError)
from .flange import apply_flange_correction
from .model import DRIVEN, DRIVING
from .solver import Solution, solve

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_CONVERGENCE = 3
EXIT_CAPACITY = 4
EXIT_IO = 5

_PROFILE_QUANTITIES = (
    ("compression", "compression"),
    ("tension", "tension"),
    ("belt_tangential", "belt_tangential"),
    ("pulley_tangential", "pulley_tangential"),
    ("contact_normal", "contact_normal"),
    ("velocity", "velocity"),
    ("sliding_angle_deg", "sliding_angle"),
    ("slide_amplitude", None),
)


def _fmt(value) -> str:
    """Full-precision, locale-independent number formatting."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def emit_profiles(solution: Solution, fmt: str, directory: str) -> list:
    """One table per per-strut quantity plus a globals table.

    Columns: arc, strut index (1-based), angular position from arc entry in
    degrees, value; the sliding angle table carries a fifth column flagging
    struts whose angle is undefined (unloaded adherent contact).
    """
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, attr in _PROFILE_QUANTITIES:
        rows = []
        for j in (DRIVEN, DRIVING):
            p = solution.arc(j)
            if attr is None:
                values = np.hypot(p.slide_tangential, p.slide_radial)
            elif name == "sliding_angle_deg":
                values = np.degrees(p.sliding_angle)
            else:
                values = getattr(p, attr)
            for i in range(p.n_struts):
                row = [str(j), str(i + 1), _fmt(math.degrees(p.angles[i])),
                       _fmt(values[i])]
                if name == "sliding_angle_deg":
                    row.append("ok" if p.gamma_defined[i] else "undefined")
                rows.append(row)
        header = ["arc", "strut", "angle_deg", name]
        if name == "sliding_angle_deg":
            header.append("flag")
        written.append(_emit_table(directory, f"profile_{name}", fmt,
                                   header, rows))

    report = power_efficiency(solution)
    global_rows = [
        ("tension_upper_fsup", solution.tension_upper),
        ("tension_lower_finf", solution.tension_lower),
        ("compression_upper_psup", solution.compression_upper),
        ("compression_lower_pinf", solution.compression_lower),
        ("clamp_force_faxi", solution.clamp_force),
        ("axle_force_faxe_half", solution.axle_force_half),
        ("axle_force_faxe_full", solution.axle_force_full),
        ("boundary_ng1", solution.boundary_1),
        ("boundary_ng2", solution.boundary_2),
        ("neutral_nl1", solution.neutral_1),
        ("neutral_nl2", solution.neutral_2),
        ("belt_velocity_vl", solution.belt_velocity),
        ("speed_out_w1", solution.speed_out),
        ("torque_out_c1", solution.torque_out),
        ("power_in_pw2", solution.power_in),
        ("power_out_pw1", solution.power_out),
        ("efficiency_eta", solution.efficiency),
        ("belt_power_fraction_ame", solution.belt_power_fraction),
        ("initial_tension_f0", solution.initial_tension),
        ("power_circulation", report.circulation),
    ]
    rows = [[key, value if isinstance(value, str) else _fmt(value)]
            for key, value in global_rows]
    written.append(_emit_table(directory, "globals", fmt,
                               ["quantity", "value"], rows))
    return written


def emit_sweep(rows, outputs, fmt: str, directory: str) -> list:
    """One file per requested output with (value, output, status) columns.

    Failed grid points keep their row with an empty value and the failure
    status, so the table always carries one row per grid point.
    """
    os.makedirs(directory, exist_ok=True)
    written = []
    for name in outputs:
        table = []
        for row in rows:
            if row.status == "ok":
                table.append([_fmt(row.value), _fmt(row.outputs[name]), "ok"])
            else:
                table.append([_fmt(row.value), "", row.status])
        written.append(_emit_table(directory, f"sweep_{name}", fmt,
                                   ["parameter", name, "status"], table))
    return written


def _emit_table(directory: str, stem: str, fmt: str, header, rows) -> str:
    if fmt == "csv":
        path = os.path.join(directory, f"{stem}.csv")
        lines = [",".join(header)]
        lines += [",".join(str(cell) for cell in row) for row in rows]
        _write_text(path, "\n".join(lines) + "\n")
    else:
        path = os.path.join(directory, f"{stem}.json")
        payload = {"columns": list(header),
                   "rows": [list(row) for row in rows]}
        _write_text(path, json.dumps(payload, indent=1) + "\n")
    return path


def validate(path) -> tuple[int, str]:
    """Parse-only mode: report the derived geometry and checked invariants."""
    parsed = parse_config(path)
    g = parsed.drive.geometry
    lines = [
        "configuration valid",
        f"  pitch radius driven  R1 = {_fmt(g.radius_1)} m",
        f"  pitch radius driving R2 = {_fmt(g.radius_2)} m",
        f"  wrap driven  theta1 = {_fmt(g.wrap_1)} rad",
        f"  wrap driving theta2 = {_fmt(g.wrap_2)} rad",
        f"  angular pitch delta1 = {_fmt(g.delta_1)} rad, "
        f"delta2 = {_fmt(g.delta_2)} rad",
        f"  struts in arcs N1 = {g.arc_struts_1}, N2 = {g.arc_struts_2}, "
        f"strands = {g.strand_struts}",
        f"  strand length = {_fmt(g.strand_length)} m",
        f"  stack interference = {_fmt(g.stack_interference)} m",
        "  invariants: wrap discretization fits; belt length closes; "
        "curves monotone from zero",
    ]
    return EXIT_OK, "\n".join(lines)


def _run_solve(parsed: ParsedConfig, args) -> Solution:
    flanges = args.flanges or parsed.flanges
    solution = solve(parsed.drive, parsed.operating, parsed.solve_config)
    if flanges == "deformable":
        solution = apply_flange_correction(solution, parsed.solve_config)
    return solution


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pushbelt",
        description="Quasi-static metal V-belt (push-belt) CVT simulator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="path to the JSON configuration")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--faxe-angle", choices=("half", "full"), default=None,
                        help="axle-force angle convention override")
    common.add_argument("--flanges", choices=("rigid", "deformable"),
                        default=None, help="flange model override")
    common.add_argument("-v", "--verbose", action="store_true")

    sub.add_parser("solve", parents=[common],
                   help="solve one operating point and emit profiles")
    sweep_p = sub.add_parser("sweep", parents=[common],
                             help="sweep one parameter over a grid")
    sweep_p.add_argument("--param", required=True,
                         help="one of R2R1, C2, MUL, MUP, F0")
    sweep_p.add_argument("--grid", required=True,
                         help="comma-separated grid values")
    val_p = sub.add_parser("validate", help="parse and report a configuration")
    val_p.add_argument("config")

    args = parser.parse_args(argv)

    try:
        if args.command == "validate":
            code, text = validate(args.config)
            print(text)
            return code

        parsed = parse_config(args.config)
        if args.command == "solve":
            solution = _run_solve(parsed, args)
            files = emit_profiles(solution, args.format, args.out)
            faxe = (solution.axle_force_half
                    if (args.faxe_angle or parsed.faxe_angle) == "half"
                    else solution.axle_force_full)
            print(f"converged: eta = {solution.efficiency:.6f}, "
                  f"FAXI = {solution.clamp_force:.1f} N, "
                  f"FAXE = {faxe:.1f} N")
            if args.verbose:
                pulley_loss, belt_loss = contact_slip_power(solution)
                print(f"  FSUP = {solution.tension_upper:.1f} N, "
                      f"FINF = {solution.tension_lower:.1f} N, "
                      f"PSUP = {solution.compression_upper:.1f} N, "
                      f"PINF = {solution.compression_lower:.1f} N")
                print(f"  belt share = {belt_power_share(solution):.4f}, "
                      f"slip losses = {pulley_loss + belt_loss:.1f} W")
            for path in files:
                print(f"  wrote {path}")
            return EXIT_OK

        # sweep
        grid = tuple(float(v) for v in args.grid.split(","))
        spec = SweepSpec(parameter=args.param, grid=grid)
        rows = run_sweep(spec, parsed.drive, parsed.operating,
                         parsed.solve_config,
                         flange_mode=(args.flanges or parsed.flanges)
                         == "deformable")
        files = emit_sweep(rows, spec.outputs, args.format, args.out)
        failed = sum(1 for r in rows if r.status != "ok")
        print(f"sweep {args.param}: {len(rows)} points, {failed} failed")
        for path in files:
            print(f"  wrote {path}")
        return EXIT_OK

    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except CapacityExceededError as err:
        print(f"capacity exceeded: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConvergenceError, SolverError, PushBeltError) as err:
        print(f"solver error: {err}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
