"""Element-level force relations for struts and flat-belt elements.

Sign conventions used throughout (fixed here once, matching the plotted
behaviour of the drive):

* strut index i runs along the travel direction, i = 1 at arc entry;
* radial components are positive outward;
* the circumferential pulley action XP on a strut is positive on the
  driven pulley (the strut slides forward relative to that pulley) and
  negative on the driving pulley;
* the belt slip sign eps = +1 where the belt runs faster than the strut,
  which is exactly where the belt tension grows along travel.

A flat-belt element spread over strut i with wrap delta obeys

    F_prev*sin(delta) + 2*YL = 0
    F_prev*cos(delta) - F_next - 2*XL = 0        XL = mu_belt*eps*YL

which collapses to the per-strut gain F_next = AL*F_prev with
AL = cos(delta) + mu_belt*eps*sin(delta).

A strut in the groove obeys the planar balance

    -X_prev + X*cos(delta) + 2*XL + 2*XP = 0
     X*sin(delta) + 2*YL + 2*YP + YG     = 0

plus either the adherence constraint (X = X_prev, ZP frozen) or the
sliding constraint XP = mu_eff*YP with the effective friction coefficient
built from the sliding angle gamma on the conical flange contact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (ConeViolationError, CompressionLostError,
                     SingularConfigurationError, UndefinedAngleError)

ADHERENCE = "adherence"
SLIDING = "sliding"


@dataclass(frozen=True)
class ContactFrame:
    """Per-arc geometric constants of the strut free body.

    ``contact_x``/``contact_y`` locate the pulley contact point on the strut
    flank, ``centroid_x`` the centroid abscissa; ``half_pitch`` is exactly
    half the strut pitch.  The moment reference is the strut's pitch-line
    center, so the defaults put both contact point and centroid on it; the
    resulting torque is diagnostics only and any consistent convention is
    acceptable.
    """

    radius: float
    angular_pitch: float
    half_pitch: float
    contact_x: float = 0.0
    contact_y: float = 0.0
    centroid_x: float = 0.0


@dataclass
class StrutState:
    """Complete force/kinematic record of one strut (one arc position)."""

    index: int
    arc: int
    compression: float          # X, inter-strut force at the leading face
    tension: float              # F, flat-belt tension over this strut
    belt_tangential: float      # XL, per band side
    belt_radial: float          # YL, per band side
    pulley_tangential: float    # XP, per flange
    pulley_radial: float        # YP, per flange
    pulley_axial: float         # ZP, per flange
    pulley_radial_friction: float  # RP, per flange
    contact_normal: float       # NP
    contact_friction: float     # TP
    strut_torque: float         # CP, diagnostics only
    sliding_angle: float        # gamma
    gamma_defined: bool
    zone: str                   # 'adherence' or 'sliding'
    thickness_loss: float       # dl
    slide_radial: float         # GR
    slide_tangential: float     # GT
    centrifugal: float          # YG
    velocity: float             # VT
    slip_sign: int              # eps = sign(VL - VT)


class BeltStep(NamedTuple):
    tension_next: float
    belt_tangential: float
    belt_radial: float


def belt_element_step(tension_prev: float, delta: float, mu_belt: float,
                      slip_sign: float) -> BeltStep:
    """March the belt tension over one strut and return the contact forces.

    ``slip_sign`` is +1 where the belt outruns the strut (tension grows) and
    -1 in the opposite regime; fractional values are accepted for the
    blended neutral-boundary strut.
    """
    if tension_prev <= 0.0:
        raise ValueError("belt tension must stay positive")
    if not 0.0 < delta < 0.5 * math.pi:
        raise ValueError("angular pitch must lie in (0, pi/2)")
    gain = math.cos(delta) + mu_belt * slip_sign * math.sin(delta)
    tension_next = gain * tension_prev
    belt_radial = -0.5 * tension_prev * math.sin(delta)
    belt_tangential = mu_belt * slip_sign * belt_radial
    return BeltStep(tension_next, belt_tangential, belt_radial)


def belt_element_step_symmetric(tension_prev: float, delta: float,
                                mu_belt: float, slip_sign: float) -> BeltStep:
    """Midpoint (symmetric) form of the belt element balance.

    Both end tensions are tilted half the wrap from the element frame:

        (F_prev - F_next)*cos(d/2) - 2*XL = 0
        (F_prev + F_next)*sin(d/2) + 2*YL = 0      XL = mu_belt*eps*YL

    giving the reversible gain (1 + mu*eps*tan(d/2))/(1 - mu*eps*tan(d/2)).
    Unlike the one-sided form, the gain has no O(delta^2) projection loss,
    so products of balanced gains close a loop exactly; the solver marches
    the belt with this form.
    """
    if tension_prev <= 0.0:
        raise ValueError("belt tension must stay positive")
    if not 0.0 < delta < 0.5 * math.pi:
        raise ValueError("angular pitch must lie in (0, pi/2)")
    t = math.tan(0.5 * delta)
    gain = (1.0 + mu_belt * slip_sign * t) / (1.0 - mu_belt * slip_sign * t)
    tension_next = gain * tension_prev
    belt_radial = -0.5 * (tension_prev + tension_next) * math.sin(0.5 * delta)
    belt_tangential = mu_belt * slip_sign * belt_radial
    return BeltStep(tension_next, belt_tangential, belt_radial)


def closure_product(factors_arc1, factors_arc2) -> float:
    """Loop-closure residual of the belt: product of all gains minus one."""
    product = 1.0
    for factor in factors_arc1:
        product *= factor
    for factor in factors_arc2:
        product *= factor
    return product - 1.0


def strut_force_balance(compression_prev: float, belt_tangential: float,
                        belt_radial: float, centrifugal: float, delta: float,
                        zone: str = ADHERENCE, mu_eff: float | None = None,
                        arc: int | None = None, index: int | None = None):
    """Solve the planar strut balance for ``(X, XP, YP)``.

    In the adherence zone X carries over unchanged and the two equations
    yield the pulley actions directly.  In the sliding zone the Coulomb
    relation XP = mu_eff*YP closes the system instead.
    """
    if compression_prev <= 0.0:
        raise CompressionLostError("strut compression must stay positive",
                                   arc=arc, strut=index)
    cos_d, sin_d = math.cos(delta), math.sin(delta)
    if zone == ADHERENCE:
        compression = compression_prev
        pulley_tangential = 0.5 * (compression_prev - compression * cos_d
                                   - 2.0 * belt_tangential)
        pulley_radial = -0.5 * (compression * sin_d + 2.0 * belt_radial
                                + centrifugal)
    elif zone == SLIDING:
        if mu_eff is None:
            raise ValueError("sliding balance needs an effective friction value")
        compression = ((compression_prev - 2.0 * belt_tangential
                        + mu_eff * (2.0 * belt_radial + centrifugal))
                       / (cos_d - mu_eff * sin_d))
        pulley_radial = -0.5 * (compression * sin_d + 2.0 * belt_radial
                                + centrifugal)
        pulley_tangential = mu_eff * pulley_radial
    else:
        raise ValueError(f"unknown zone {zone!r}")
    if compression <= 0.0:
        raise CompressionLostError(
            f"compression dropped to {compression:.3g} N", arc=arc, strut=index)
    return compression, pulley_tangential, pulley_radial


def strut_torque(state: StrutState, frame: ContactFrame, delta: float,
                 compression_prev: float | None = None) -> float:
    """Residual torque CP on a strut whose planar balance already holds.

    ``compression_prev`` is the force at the trailing face; it defaults to
    the strut's own compression (exact inside an adherence zone).
    """
    if compression_prev is None:
        compression_prev = state.compression
    return strut_torque_from_forces(
        state.pulley_tangential, state.pulley_radial, state.centrifugal,
        state.belt_radial, compression_prev, frame, delta)


def strut_torque_from_forces(pulley_tangential: float, pulley_radial: float,
                             centrifugal: float, belt_radial: float,
                             compression_prev: float, frame: ContactFrame,
                             delta: float) -> float:
    """Explicit-argument form of :func:`strut_torque`."""
    moment = (-2.0 * frame.contact_y * pulley_tangential
              + 2.0 * frame.contact_x * pulley_radial
              + frame.centroid_x * centrifugal
              + 2.0 * frame.half_pitch * belt_radial
              + frame.radius * (math.cos(delta) - 1.0) * compression_prev)
    return -0.5 * moment


class ContactComponents(NamedTuple):
    tangential: float   # XP
    radial: float       # YP
    axial: float        # ZP
    radial_friction: float  # RP


def contact_decomposition(normal: float, friction: float, gamma: float,
                          phi: float) -> ContactComponents:
    """Project the conical contact pair (NP, TP) onto the strut axes."""
    if normal < 0.0:
        raise ValueError("contact normal force cannot be negative")
    sin_phi, cos_phi = math.sin(phi), math.cos(phi)
    sin_g, cos_g = math.sin(gamma), math.cos(gamma)
    tangential = friction * cos_g
    radial = normal * sin_phi + friction * cos_phi * sin_g
    axial = normal * cos_phi - friction * sin_phi * sin_g
    radial_friction = friction * sin_g
    return ContactComponents(tangential, radial, axial, radial_friction)


def contact_inverse(tangential: float, radial: float, gamma: float, phi: float,
                    mu_pulley: float, enforce_cone: bool = False):
    """Recover (NP, TP) from (XP, YP) at a known sliding angle.

    With ``enforce_cone`` the pair must satisfy |TP| <= mu*NP (adherence
    check); violation raises :class:`ConeViolationError`.
    """
    sin_phi, cos_phi = math.sin(phi), math.cos(phi)
    cos_g, sin_g = math.cos(gamma), math.sin(gamma)
    if abs(cos_g) > 1e-12:
        friction = tangential / cos_g
        normal = (radial - friction * cos_phi * sin_g) / sin_phi
    else:
        # pure radial sliding transmits no circumferential force
        if abs(tangential) > 1e-12 * max(1.0, abs(radial)):
            raise ValueError("XP must vanish when gamma = +/-90 degrees")
        normal = radial / (sin_phi + mu_pulley * sin_g * cos_phi)
        friction = mu_pulley * normal * sin_g
    if enforce_cone and abs(friction) > mu_pulley * normal * (1.0 + 1e-9):
        raise ConeViolationError(
            f"|TP| = {abs(friction):.6g} exceeds the cone mu*NP = "
            f"{mu_pulley * normal:.6g}")
    return normal, friction


def contact_state_from_forces(tangential: float, radial: float, axial: float,
                              phi: float):
    """Recover (NP, TP, gamma) from the three force components (XP, YP, ZP).

    This is the adherent-zone evaluation: the direction friction would act
    at incipient slip follows from the force state alone.
    """
    sin_phi, cos_phi = math.sin(phi), math.cos(phi)
    normal = radial * sin_phi + axial * cos_phi
    radial_friction = radial * cos_phi - axial * sin_phi  # TP*sin(gamma)
    friction = math.hypot(tangential, radial_friction)
    if friction == 0.0:
        return normal, 0.0, 0.0, False
    gamma = math.atan2(radial_friction, tangential)
    return normal, friction, gamma, True


def effective_friction(mu_pulley: float, gamma: float, phi: float) -> float:
    """Effective circumferential/radial force ratio of a sliding contact.

    mu_eff = mu*cos(gamma) / (sin(phi) + mu*sin(gamma)*cos(phi)); the
    denominator vanishing means radial friction cancels the wedge reaction.
    """
    denominator = math.sin(phi) + mu_pulley * math.sin(gamma) * math.cos(phi)
    if abs(denominator) <= 1e-9:
        raise SingularConfigurationError(
            f"wedge reaction cancelled at gamma = {math.degrees(gamma):.2f} deg")
    return mu_pulley * math.cos(gamma) / denominator


def sliding_angle(slide_radial: float, slide_tangential: float) -> float:
    """Full-circle sliding angle gamma = atan2(-GR, GT) of a slipping strut."""
    if slide_radial == 0.0 and slide_tangential == 0.0:
        raise UndefinedAngleError(
            "sliding angle undefined for an adherent strut (no motion)")
    return math.atan2(-slide_radial, slide_tangential)


def centrifugal_load(strut_mass: float, velocity: float, radius: float) -> float:
    """Radially outward inertia force m*v^2/R of one strut on the arc."""
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    return strut_mass * velocity * velocity / radius
