"""Global outputs: torque balance, power flow, efficiency, power sharing,
and the parameter-sweep harness for design studies.

Both pulleys are isolated through their strand forces: the compression
pair (PSUP, PINF) acting at the pitch radii (shifted by the net radial
slide of the exit strut) and the tension pair (FSUP, FINF) acting a band
offset higher.  The driving-side balance must reproduce the imposed input
torque on a converged solution; the driven-side balance yields the output
torque, hence the transmitted power and the efficiency.

The straight strands are lossless, so the belt's share of the transmitted
power is measured there: the strand tension difference times the belt
velocity over the input power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, PushBeltError, SolverError
from .model import DRIVEN, DRIVING, Drive, INITIAL_TENSION, OperatingPoint
from .solver import SolveConfig, Solution, solve

BELT_DRIVEN_BY_STRUTS = "belt_driven_by_struts"
STRUTS_DRIVEN_BY_BELT = "struts_driven_by_belt"


@dataclass(frozen=True)
class PowerReport:
    """Power flow summary of a converged solution."""

    power_in: float               # PW2 > 0
    power_out: float              # PW1 < 0 for a transmitting drive
    efficiency: float
    belt_power_fraction: float    # share of the flat belt, unclamped
    circulation: str
    loss: float                   # PW1 + PW2 (>= 0 dissipated)


def strand_torque_balance(exit_x: float, entry_x: float, exit_f: float,
                          entry_f: float, radius: float, band_offset: float,
                          gr_offset: float) -> float:
    """Torque one pulley exchanges with its strands.

    C = (R+GR)*X_exit - R*X_entry - (R+a+GR)*F_exit + (R+a)*F_entry, with
    entry/exit taken along the strut travel direction of that arc.
    """
    return ((radius + gr_offset) * exit_x - radius * entry_x
            - (radius + band_offset + gr_offset) * exit_f
            + (radius + band_offset) * entry_f)


def global_equilibrium(solution: Solution, tolerance: float | None = None):
    """Inter-axis force and both pulley torques of a converged solution.

    Returns ``(axle_force, torque_out, torque_in_check)`` using the
    configured axle-force angle convention; the recomputed input torque
    must match the imposed one within the force tolerance.
    """
    g = solution.drive.geometry
    tol = tolerance if tolerance is not None else \
        solution.config.force_tolerance
    gr1 = float(np.sum(solution.arc_1.slide_radial))
    gr2 = float(np.sum(solution.arc_2.slide_radial))
    torque_in_check = strand_torque_balance(
        solution.compression_upper, solution.compression_lower,
        solution.tension_upper, solution.tension_lower,
        g.radius_2, g.band_offset, gr2)
    torque_out = strand_torque_balance(
        solution.compression_lower, solution.compression_upper,
        solution.tension_lower, solution.tension_upper,
        g.radius_1, g.band_offset, gr1)
    scale = max(abs(solution.torque_in), 1e-9 * g.radius_2)
    if abs(torque_in_check - solution.torque_in) > tol * scale:
        raise SolverError(
            f"strand forces reproduce {torque_in_check:.8g} N·m against the "
            f"imposed {solution.torque_in:.8g} N·m (solver defect)")
    return solution.axle_force_half, torque_out, torque_in_check


def power_efficiency(solution: Solution) -> PowerReport:
    """Power flow report; the output speed comes from the solved kinematics,
    not from the nominal ratio."""
    power_in = solution.power_in
    power_out = solution.power_out
    efficiency = -power_out / power_in if power_in > 0.0 else 1.0
    circulation = (BELT_DRIVEN_BY_STRUTS
                   if solution.tension_lower >= solution.tension_upper
                   else STRUTS_DRIVEN_BY_BELT)
    return PowerReport(
        power_in=power_in, power_out=power_out, efficiency=efficiency,
        belt_power_fraction=solution.belt_power_fraction,
        circulation=circulation, loss=power_in + power_out)


def belt_power_share(solution: Solution) -> float:
    """Fraction of the input power carried by the flat belt through the
    lossless strands."""
    if solution.power_in <= 0.0:
        return 0.0
    return abs((solution.tension_lower - solution.tension_upper)
               * solution.belt_velocity) / solution.power_in


def contact_slip_power(solution: Solution) -> tuple[float, float]:
    """Dissipation at the two friction interfaces, from slip displacements.

    Pulley side: both flanges of each sliding strut dissipate TP times the
    slip speed, the per-pitch displacement (GT, GR) over the pitch period.
    Belt side: both band packs slide over every arc strut at the belt/strut
    velocity mismatch against the tangential contact force XL.
    """
    pulley_loss = 0.0
    belt_loss = 0.0
    for j in (DRIVEN, DRIVING):
        p = solution.arc(j)
        omega = (solution.speed_out if j == DRIVEN else solution.speed_in)
        pitch_time = p.delta / omega
        slip_speed = np.hypot(p.slide_tangential, p.slide_radial) / pitch_time
        pulley_loss += float(np.sum(
            2.0 * p.contact_friction * slip_speed * p.slide_weight))
        belt_loss += float(np.sum(
            2.0 * np.abs(p.belt_tangential)
            * np.abs(solution.belt_velocity - p.velocity)))
    return pulley_loss, belt_loss


# ---------------------------------------------------------------------------
# parameter sweeps
# ---------------------------------------------------------------------------

SWEEP_PARAMETERS = ("R2R1", "C2", "MUL", "MUP", "F0")
SWEEP_OUTPUTS = ("eta", "ame", "finf", "psup", "faxi")


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter design study: a strictly monotone grid of at least
    three values, all other inputs held fixed."""

    parameter: str
    grid: tuple
    outputs: tuple = SWEEP_OUTPUTS

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(f"unknown sweep parameter {self.parameter!r}; "
                              f"expected one of {SWEEP_PARAMETERS}",
                              key="sweep.parameter")
        if len(self.grid) < 3:
            raise ConfigError("sweep grid needs at least three points",
                              key="sweep.grid")
        diffs = np.diff(np.asarray(self.grid, dtype=float))
        if not (np.all(diffs > 0.0) or np.all(diffs < 0.0)):
            raise ConfigError("sweep grid must be strictly monotone",
                              key="sweep.grid")
        unknown = set(self.outputs) - set(SWEEP_OUTPUTS)
        if unknown:
            raise ConfigError(f"unknown sweep outputs {sorted(unknown)}",
                              key="sweep.outputs")


@dataclass
class SweepRow:
    value: float
    status: str                      # 'ok' or the failure class name
    outputs: dict = field(default_factory=dict)
    solution: Solution | None = None


def _apply_parameter(drive: Drive, operating: OperatingPoint, parameter: str,
                     value: float):
    """Rebuild the inputs with one swept parameter replaced."""
    from dataclasses import replace
    from .model import build_drive_geometry
    if parameter == "R2R1":
        geometry = build_drive_geometry(
            axis_distance=drive.geometry.axis_distance,
            belt_length=drive.geometry.belt_length,
            strut_pitch=drive.geometry.strut_pitch,
            band_offset=drive.geometry.band_offset,
            groove_half_angle=drive.geometry.groove_half_angle,
            strut_count_total=drive.geometry.strut_count_total,
            speed_ratio=value)
        return Drive(geometry=geometry, material=drive.material), \
            operating.with_(speed_ratio=value)
    if parameter == "C2":
        return drive, operating.with_(input_torque=value)
    if parameter == "MUL":
        return Drive(geometry=drive.geometry,
                     material=replace(drive.material, mu_belt=value)), operating
    if parameter == "MUP":
        return Drive(geometry=drive.geometry,
                     material=replace(drive.material, mu_pulley=value)), \
            operating
    if parameter == "F0":
        return drive, operating.with_(clamp_mode=INITIAL_TENSION,
                                      clamp_value=value)
    raise ConfigError(f"unknown sweep parameter {parameter!r}")


def run_sweep(spec: SweepSpec, drive: Drive, operating: OperatingPoint,
              config: SolveConfig | None = None, flange_mode: bool = False,
              keep_solutions: bool = False) -> list[SweepRow]:
    """One converged solve per grid point; failures are recorded, not fatal.

    Rows come back in grid order.  Solves are independent (no shared
    mutable state), so callers may parallelize; this runner is sequential
    and deterministic.
    """
    config = config or SolveConfig()
    rows: list[SweepRow] = []
    for value in spec.grid:
        try:
            d, o = _apply_parameter(drive, operating, spec.parameter,
                                    float(value))
            sol = solve(d, o, config, flange_mode=flange_mode)
            outputs = {
                "eta": sol.efficiency,
                "ame": sol.belt_power_fraction,
                "finf": sol.tension_lower,
                "psup": sol.compression_upper,
                "faxi": sol.clamp_force,
            }
            rows.append(SweepRow(
                value=float(value), status="ok",
                outputs={k: outputs[k] for k in spec.outputs},
                solution=sol if keep_solutions else None))
        except PushBeltError as err:
            rows.append(SweepRow(value=float(value),
                                 status=type(err).__name__,
                                 outputs={k: math.nan for k in spec.outputs}))
    return rows
