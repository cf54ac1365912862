"""Drive description: geometry, material model and operating point.

The two-pulley wrap geometry is derived from high-level inputs (axis
distance, belt length, speed ratio) using standard open-belt kinematics:
the belt runs at the strut pitch radii R1 (driven pulley) and R2 (driving
pulley), wraps theta_j = pi -/+ 2*beta with sin(beta) = (R2 - R1)/E, and
closes the fixed pitch-line length

    L = theta1*R1 + theta2*R2 + 2*E*cos(beta).

Each contact arc is discretized into struts of chordal pitch l, i.e. an
angular pitch delta = 2*asin(l / (2*R)); the leftover wrap that does not
fit a whole strut is split evenly between arc entry and exit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from scipy.optimize import brentq

from .curves import Curve
from .errors import ConfigError, GeometryError

DRIVEN = 1
DRIVING = 2


def pitch_radii_from_ratio(ratio: float, belt_length: float, axis_distance: float):
    """Solve the open-belt closure for the pitch radii at a given speed ratio.

    Returns ``(r1, r2, theta1, theta2, strand_length)`` with r2/r1 = ratio
    and the pitch-line length closure satisfied to better than 1e-10 of the
    belt length.  Raises :class:`GeometryError` when no radius in the
    admissible range closes the loop.
    """
    if ratio <= 0.0:
        raise GeometryError(f"speed ratio must be positive, got {ratio}")
    if belt_length <= 2.0 * axis_distance:
        raise GeometryError(
            f"belt length {belt_length} cannot wrap pulleys {axis_distance} apart")

    def closure(r1: float) -> float:
        r2 = ratio * r1
        s = (r2 - r1) / axis_distance
        if abs(s) >= 1.0:
            return math.inf if s > 0 else -math.inf
        beta = math.asin(s)
        th1 = math.pi - 2.0 * beta
        th2 = math.pi + 2.0 * beta
        return th1 * r1 + th2 * r2 + 2.0 * axis_distance * math.cos(beta) - belt_length

    # Largest radius for which the wrap geometry still exists.
    r1_max = axis_distance / abs(ratio - 1.0) if ratio != 1.0 else belt_length
    r1_max = min(r1_max * (1.0 - 1e-12), belt_length)
    lo = 1e-9 * belt_length
    if closure(lo) > 0.0:
        raise GeometryError("belt is too short for this axis distance")
    if closure(r1_max) < 0.0:
        raise GeometryError(
            f"ratio {ratio} is incompatible with belt length {belt_length} "
            f"and axis distance {axis_distance}")
    r1 = brentq(closure, lo, r1_max, xtol=1e-16, rtol=8.9e-16, maxiter=200)
    r2 = ratio * r1
    beta = math.asin((r2 - r1) / axis_distance)
    theta1 = math.pi - 2.0 * beta
    theta2 = math.pi + 2.0 * beta
    strand = axis_distance * math.cos(beta)
    residual = theta1 * r1 + theta2 * r2 + 2.0 * strand - belt_length
    if abs(residual) > 1e-10 * belt_length:
        raise GeometryError(f"closure residual {residual:g} above tolerance")
    return r1, r2, theta1, theta2, strand


def discretize_arc(radius: float, pitch: float, wrap: float):
    """Chordal discretization of one contact arc.

    Returns ``(n, delta)`` with delta = 2*asin(l / (2*R)) and n the number
    of whole struts fitting the wrap.  An arc holding fewer than two struts
    is rejected.
    """
    if radius <= pitch:
        raise GeometryError(f"pitch radius {radius} must exceed strut pitch {pitch}")
    delta = 2.0 * math.asin(pitch / (2.0 * radius))
    n = int(math.floor(wrap / delta))
    if n < 2:
        raise GeometryError(
            f"contact arc holds only {n} struts (wrap {wrap:.4f} rad, "
            f"angular pitch {delta:.4f} rad)")
    return n, delta


@dataclass(frozen=True)
class DriveGeometry:
    """Fully derived two-pulley wrap geometry.

    Pulley 1 is the driven pulley, pulley 2 the driving pulley.  ``band_offset``
    is the radial offset of the flat belt above the strut pitch line.
    """

    axis_distance: float
    belt_length: float
    strut_pitch: float
    band_offset: float
    groove_half_angle: float
    strut_count_total: int
    speed_ratio: float
    radius_1: float
    radius_2: float
    wrap_1: float
    wrap_2: float
    delta_1: float
    delta_2: float
    arc_struts_1: int
    arc_struts_2: int
    strand_length: float

    def __post_init__(self):
        if not 0.0 < self.groove_half_angle < 0.5 * math.pi:
            raise GeometryError("groove half-angle must lie in (0, pi/2)")
        if self.strut_pitch <= 0.0:
            raise GeometryError("strut pitch must be positive")
        if self.band_offset < 0.0:
            raise GeometryError("band offset cannot be negative")
        if self.axis_distance <= max(self.radius_1, self.radius_2):
            raise GeometryError("axis distance must exceed both pitch radii")
        if self.strand_struts < 0:
            raise GeometryError(
                f"strut count {self.strut_count_total} cannot even fill the "
                f"contact arcs ({self.arc_struts_1} + {self.arc_struts_2})")
        if self.arc_struts_1 * self.delta_1 > self.wrap_1 + 1e-12:
            raise GeometryError("arc 1 discretization exceeds its wrap")
        if self.arc_struts_2 * self.delta_2 > self.wrap_2 + 1e-12:
            raise GeometryError("arc 2 discretization exceeds its wrap")
        rebuilt = (self.wrap_1 * self.radius_1 + self.wrap_2 * self.radius_2
                   + 2.0 * self.strand_length)
        if abs(rebuilt - self.belt_length) > 1e-9 * self.belt_length:
            raise GeometryError("belt length does not close the wrap geometry")

    @property
    def strand_struts(self) -> int:
        return self.strut_count_total - self.arc_struts_1 - self.arc_struts_2

    @property
    def strand_struts_upper(self) -> int:
        return self.strand_struts - self.strand_struts // 2

    @property
    def strand_struts_lower(self) -> int:
        return self.strand_struts // 2

    @property
    def stack_interference(self) -> float:
        """Rest-length excess of the strut stack over the belt, N*l - L."""
        return self.strut_count_total * self.strut_pitch - self.belt_length

    def arc(self, j: int):
        """(radius, wrap, delta, strut count) of contact arc ``j`` in {1, 2}."""
        if j == DRIVEN:
            return self.radius_1, self.wrap_1, self.delta_1, self.arc_struts_1
        if j == DRIVING:
            return self.radius_2, self.wrap_2, self.delta_2, self.arc_struts_2
        raise ValueError(f"arc index must be 1 or 2, got {j}")

    def entry_offset(self, j: int) -> float:
        """Angular position of the first strut center, from arc entry."""
        _, wrap, delta, n = self.arc(j)
        return 0.5 * (wrap - n * delta) + 0.5 * delta


def build_drive_geometry(axis_distance: float, belt_length: float, strut_pitch: float,
                         band_offset: float, groove_half_angle: float,
                         strut_count_total: int, speed_ratio: float) -> DriveGeometry:
    """Derive the full :class:`DriveGeometry` from high-level inputs."""
    r1, r2, th1, th2, strand = pitch_radii_from_ratio(
        speed_ratio, belt_length, axis_distance)
    n1, d1 = discretize_arc(r1, strut_pitch, th1)
    n2, d2 = discretize_arc(r2, strut_pitch, th2)
    return DriveGeometry(
        axis_distance=axis_distance, belt_length=belt_length,
        strut_pitch=strut_pitch, band_offset=band_offset,
        groove_half_angle=groove_half_angle, strut_count_total=strut_count_total,
        speed_ratio=speed_ratio, radius_1=r1, radius_2=r2, wrap_1=th1, wrap_2=th2,
        delta_1=d1, delta_2=d2, arc_struts_1=n1, arc_struts_2=n2,
        strand_length=strand)


@dataclass(frozen=True)
class MaterialModel:
    """Friction coefficients and the three experimental compliance curves.

    * ``compression_curve`` maps inter-strut compression [N] to strut
      thickness reduction [m];
    * ``radial_compliance`` maps the axial flange load on a strut [N] to
      its radial-height change [m];
    * ``flange_compliance`` maps the same load to the axial displacement
      of a pulley flange [m] (identically zero for rigid flanges).
    """

    mu_belt: float
    mu_pulley: float
    compression_curve: Curve
    radial_compliance: Curve
    flange_compliance: Curve = field(default_factory=Curve.zero)
    strut_mass: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.mu_belt < 1.0:
            raise ConfigError("belt/strut friction must lie in [0, 1)", key="mu_belt")
        if not 0.0 < self.mu_pulley < 1.0:
            raise ConfigError("strut/pulley friction must lie in (0, 1)",
                              key="mu_pulley")
        if self.strut_mass < 0.0:
            raise ConfigError("strut mass cannot be negative", key="strut_mass")

    def validate_against(self, geometry: DriveGeometry, max_load: float = 1e5):
        """Check that no admissible compression swallows a whole strut."""
        if self.compression_curve(max_load) >= geometry.strut_pitch:
            raise ConfigError(
                "compression curve exceeds the strut pitch within the "
                "admissible load range", key="compression_curve")


AXIAL_FORCE = "axial_force"
INITIAL_TENSION = "initial_tension"


@dataclass(frozen=True)
class OperatingPoint:
    """Speed ratio, torque/speed inputs and the clamping specification.

    ``clamp_mode`` selects how the belt tension level is closed: either the
    axial force on the driving pulley's movable flange is imposed
    (``axial_force``) or the belt's initial/mean tension is imposed
    (``initial_tension``) and the axial force becomes an output.
    """

    speed_ratio: float
    input_torque: float
    input_speed: float
    clamp_mode: str
    clamp_value: float

    def __post_init__(self):
        if self.speed_ratio <= 0.0:
            raise ConfigError("speed ratio must be positive", key="speed_ratio")
        if self.input_torque < 0.0:
            raise ConfigError("input torque cannot be negative", key="input_torque")
        if self.input_speed <= 0.0:
            raise ConfigError("input speed must be positive", key="input_speed")
        if self.clamp_mode not in (AXIAL_FORCE, INITIAL_TENSION):
            raise ConfigError(
                f"unknown clamp mode {self.clamp_mode!r}", key="clamp_mode")
        if self.clamp_value <= 0.0:
            raise ConfigError("clamp value must be positive", key="clamp_value")

    def with_(self, **kw) -> "OperatingPoint":
        return replace(self, **kw)


@dataclass(frozen=True)
class Drive:
    """Bundle of geometry and material shared by all solves of one design."""

    geometry: DriveGeometry
    material: MaterialModel

    def rest_compression(self) -> float:
        """Uniform compression the assembled stack carries at rest.

        The closed loop of ``N`` struts must shorten by the stack
        interference ``N*l - L`` to fit the belt, so each strut compresses
        by the mean interference.
        """
        interference = self.geometry.stack_interference
        if interference < 0.0:
            raise ConfigError(
                "strut stack is shorter than the belt (no assembly pretension); "
                "increase the strut count", key="strut_count_total")
        return self.material.compression_curve.inverse(
            interference / self.geometry.strut_count_total, hint=1e3)
