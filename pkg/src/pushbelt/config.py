"""Configuration file schema: parse, validate, serialize.

The configuration is a JSON document with four sections; ``solver`` and
``output`` are optional.  Every key is validated and errors name the
offending key path.

    {
      "geometry": {
        "axis_distance":      m,
        "belt_length":        m,
        "strut_pitch":        m,
        "band_offset":        m,
        "groove_half_angle_deg": degrees,
        "strut_count_total":  count
      },
      "material": {
        "mu_belt":            -,
        "mu_pulley":          -,
        "strut_mass":         kg,
        "compression_curve":  [[force N, thickness loss m], ...],
        "radial_compliance":  [[force N, height change m], ...],
        "flange_compliance":  [[force N, axial displacement m], ...]   (optional)
      },
      "operating_point": {
        "speed_ratio":        -,
        "input_torque":       N*m,
        "input_speed":        rad/s,
        "clamp": {"mode": "axial_force" | "initial_tension", "value": N}
      },
      "solver": { any SolveConfig field },
      "output": { "faxe_angle": "half" | "full",
                  "flanges": "rigid" | "deformable" }
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .curves import Curve
from .errors import ConfigError
from .model import (AXIAL_FORCE, Drive, INITIAL_TENSION, MaterialModel,
                    OperatingPoint, build_drive_geometry)
from .solver import SolveConfig

_GEOMETRY_KEYS = {"axis_distance", "belt_length", "strut_pitch", "band_offset",
                  "groove_half_angle_deg", "strut_count_total"}
_MATERIAL_KEYS = {"mu_belt", "mu_pulley", "strut_mass", "compression_curve",
                  "radial_compliance", "flange_compliance"}
_OPERATING_KEYS = {"speed_ratio", "input_torque", "input_speed", "clamp"}
_SOLVER_KEYS = {"length_tolerance", "force_tolerance", "closure_tolerance",
                "max_outer_iterations", "max_secant_iterations",
                "relaxation_factor"}
_OUTPUT_KEYS = {"faxe_angle", "flanges"}
_SECTIONS = {"geometry", "material", "operating_point", "solver", "output"}


@dataclass(frozen=True)
class ParsedConfig:
    """Validated domain objects plus output conventions."""

    drive: Drive
    operating: OperatingPoint
    solve_config: SolveConfig
    faxe_angle: str = "half"
    flanges: str = "rigid"


def _require(section: dict, key: str, path: str):
    if key not in section:
        raise ConfigError("missing required key", key=f"{path}.{key}")
    return section[key]


def _number(section: dict, key: str, path: str) -> float:
    value = _require(section, key, path)
    if not isinstance(value, (int, float)) or isinstance(value, bool) \
            or not math.isfinite(value):
        raise ConfigError("expected a finite number", key=f"{path}.{key}")
    return float(value)


def _check_unknown(section: dict, allowed: set, path: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)}", key=path)


def parse_config_dict(data: dict) -> ParsedConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be an object", key="$")
    _check_unknown(data, _SECTIONS, "$")
    for section in ("geometry", "material", "operating_point"):
        if section not in data:
            raise ConfigError("missing required section", key=section)
        if not isinstance(data[section], dict):
            raise ConfigError("section must be an object", key=section)

    geo = data["geometry"]
    _check_unknown(geo, _GEOMETRY_KEYS, "geometry")
    count = _require(geo, "strut_count_total", "geometry")
    if not isinstance(count, int) or isinstance(count, bool) or count <= 0:
        raise ConfigError("expected a positive integer",
                          key="geometry.strut_count_total")

    mat_raw = data["material"]
    _check_unknown(mat_raw, _MATERIAL_KEYS, "material")
    compression = Curve.from_table(
        _require(mat_raw, "compression_curve", "material"),
        name="material.compression_curve")
    radial = Curve.from_table(
        _require(mat_raw, "radial_compliance", "material"),
        name="material.radial_compliance")
    if "flange_compliance" in mat_raw:
        flange = Curve.from_table(mat_raw["flange_compliance"],
                                  name="material.flange_compliance")
    else:
        flange = Curve.zero(name="material.flange_compliance")

    op_raw = data["operating_point"]
    _check_unknown(op_raw, _OPERATING_KEYS, "operating_point")
    clamp = _require(op_raw, "clamp", "operating_point")
    if not isinstance(clamp, dict):
        raise ConfigError("clamp must be an object",
                          key="operating_point.clamp")
    _check_unknown(clamp, {"mode", "value"}, "operating_point.clamp")
    mode = _require(clamp, "mode", "operating_point.clamp")
    if mode not in (AXIAL_FORCE, INITIAL_TENSION):
        raise ConfigError(
            f"clamp mode must be '{AXIAL_FORCE}' or '{INITIAL_TENSION}'",
            key="operating_point.clamp.mode")

    operating = OperatingPoint(
        speed_ratio=_number(op_raw, "speed_ratio", "operating_point"),
        input_torque=_number(op_raw, "input_torque", "operating_point"),
        input_speed=_number(op_raw, "input_speed", "operating_point"),
        clamp_mode=mode,
        clamp_value=_number(clamp, "value", "operating_point.clamp"))

    geometry = build_drive_geometry(
        axis_distance=_number(geo, "axis_distance", "geometry"),
        belt_length=_number(geo, "belt_length", "geometry"),
        strut_pitch=_number(geo, "strut_pitch", "geometry"),
        band_offset=_number(geo, "band_offset", "geometry"),
        groove_half_angle=math.radians(
            _number(geo, "groove_half_angle_deg", "geometry")),
        strut_count_total=count,
        speed_ratio=operating.speed_ratio)

    material = MaterialModel(
        mu_belt=_number(mat_raw, "mu_belt", "material"),
        mu_pulley=_number(mat_raw, "mu_pulley", "material"),
        compression_curve=compression,
        radial_compliance=radial,
        flange_compliance=flange,
        strut_mass=_number(mat_raw, "strut_mass", "material"))
    material.validate_against(geometry)

    solver_raw = data.get("solver", {})
    if not isinstance(solver_raw, dict):
        raise ConfigError("section must be an object", key="solver")
    _check_unknown(solver_raw, _SOLVER_KEYS, "solver")
    try:
        solve_config = SolveConfig(**solver_raw)
    except (TypeError, ValueError) as err:
        raise ConfigError(str(err), key="solver") from err

    out_raw = data.get("output", {})
    if not isinstance(out_raw, dict):
        raise ConfigError("section must be an object", key="output")
    _check_unknown(out_raw, _OUTPUT_KEYS, "output")
    faxe_angle = out_raw.get("faxe_angle", "half")
    if faxe_angle not in ("half", "full"):
        raise ConfigError("expected 'half' or 'full'", key="output.faxe_angle")
    flanges = out_raw.get("flanges", "rigid")
    if flanges not in ("rigid", "deformable"):
        raise ConfigError("expected 'rigid' or 'deformable'",
                          key="output.flanges")

    return ParsedConfig(drive=Drive(geometry=geometry, material=material),
                        operating=operating, solve_config=solve_config,
                        faxe_angle=faxe_angle, flanges=flanges)


def parse_config(path) -> ParsedConfig:
    """Read and validate a configuration file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as err:
        raise ConfigError(f"cannot read configuration: {err}",
                          key=str(path)) from err
    except json.JSONDecodeError as err:
        raise ConfigError(
            f"invalid JSON at line {err.lineno}, column {err.colno}: "
            f"{err.msg}", key=str(path)) from err
    return parse_config_dict(data)


def serialize_config(parsed: ParsedConfig) -> dict:
    """Dictionary form that re-parses to identical domain objects."""
    g = parsed.drive.geometry
    m = parsed.drive.material
    o = parsed.operating
    data = {
        "geometry": {
            "axis_distance": g.axis_distance,
            "belt_length": g.belt_length,
            "strut_pitch": g.strut_pitch,
            "band_offset": g.band_offset,
            "groove_half_angle_deg": math.degrees(g.groove_half_angle),
            "strut_count_total": g.strut_count_total,
        },
        "material": {
            "mu_belt": m.mu_belt,
            "mu_pulley": m.mu_pulley,
            "strut_mass": m.strut_mass,
            "compression_curve": m.compression_curve.to_table(),
            "radial_compliance": m.radial_compliance.to_table(),
            "flange_compliance": m.flange_compliance.to_table(),
        },
        "operating_point": {
            "speed_ratio": o.speed_ratio,
            "input_torque": o.input_torque,
            "input_speed": o.input_speed,
            "clamp": {"mode": o.clamp_mode, "value": o.clamp_value},
        },
        "solver": {
            "length_tolerance": parsed.solve_config.length_tolerance,
            "force_tolerance": parsed.solve_config.force_tolerance,
            "closure_tolerance": parsed.solve_config.closure_tolerance,
            "max_outer_iterations": parsed.solve_config.max_outer_iterations,
            "max_secant_iterations": parsed.solve_config.max_secant_iterations,
            "relaxation_factor": parsed.solve_config.relaxation_factor,
        },
        "output": {
            "faxe_angle": parsed.faxe_angle,
            "flanges": parsed.flanges,
        },
    }
    return data
