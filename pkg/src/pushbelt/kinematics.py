"""Strut velocity profile along the loop and the flat-belt velocity.

In steady state every strut spends the same time interval on each station,
so the strut stream's local speed follows the compressed thickness: where
the compression grows the struts shorten and slow down, where it relaxes
they speed up again.  Within an adherence zone the thickness is constant
and the velocity stays constant (the struts ride with the pulley).

At each arc entry/exit the tracked contact location moves between the
band pitch line at radius R + a (strand travel) and the strut pitch line
at radius R (arc travel), so the tracked speed jumps by the radius ratio.

The flat belt is longitudinally rigid and moves at one average velocity
VL, equal to the strut velocity at the two neutral struts where the
belt/strut relative motion reverses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateStrutError, InconsistentNeutralPointsError

ENTERING_ARC = "entering_arc"
LEAVING_ARC = "leaving_arc"


@dataclass
class VelocityProfile:
    """Strut velocities along both arcs plus the belt velocity.

    ``neutral_1``/``neutral_2`` are fractional strut positions whose
    interpolated velocity equals the belt velocity.
    """

    velocities_1: np.ndarray
    velocities_2: np.ndarray
    belt_velocity: float
    neutral_1: float
    neutral_2: float
    jump_factors: dict = field(default_factory=dict)


def strut_velocity_step(velocity_prev: float, loss_prev: float, loss: float,
                        pitch: float) -> float:
    """One step of the strut velocity recursion along an arc.

    The tabulated recursion reads
    ``VT = VT_prev * (1 - loss_prev/pitch) / (1 - loss/pitch)``; chaining it
    around a closed loop telescopes back to the starting velocity.
    """
    rem_prev = 1.0 - loss_prev / pitch
    rem = 1.0 - loss / pitch
    if rem_prev <= 0.0 or rem <= 0.0:
        raise DegenerateStrutError("a strut was compressed past its thickness")
    return velocity_prev * rem_prev / rem


def entry_exit_jump(velocity: float, radius: float, band_offset: float,
                    direction: str) -> float:
    """Velocity jump where the tracked contact location changes radius."""
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    if direction == ENTERING_ARC:
        return velocity * radius / (radius + band_offset)
    if direction == LEAVING_ARC:
        return velocity * (radius + band_offset) / radius
    raise ValueError(f"unknown direction {direction!r}")


def belt_velocity(profile: VelocityProfile, neutral_1: float,
                  neutral_2: float) -> float:
    """Common strut velocity at the two neutral points.

    The solver has already placed the neutral struts; this checks that the
    two candidate velocities agree and returns their mean.
    """
    v1 = _interp_fractional(profile.velocities_1, neutral_1)
    v2 = _interp_fractional(profile.velocities_2, neutral_2)
    mean = 0.5 * (v1 + v2)
    if abs(v1 - v2) > 1e-3 * mean:
        raise InconsistentNeutralPointsError(
            f"neutral struts disagree on the belt velocity: {v1:.6g} vs {v2:.6g}")
    return mean


def _interp_fractional(values: np.ndarray, position: float) -> float:
    """Linear interpolation of a per-strut array at a fractional index.

    Positions are 1-based strut indices; the value between struts k and k+1
    is blended linearly.
    """
    n = len(values)
    position = min(max(position, 1.0), float(n))
    k = int(math.floor(position))
    if k >= n:
        return float(values[-1])
    frac = position - k
    return float((1.0 - frac) * values[k - 1] + frac * values[k])
