"""Deformable-flange correction of the radial strut sliding.

Each strut presses its pulley flange axially with ZP; a compliant flange
recedes by the compliance value at that load.  From one strut position to
the next the flange gap therefore changes by

    gap = 2 * [EKF(ZP_i) - EKF(ZP_i-1)]

which lets the strut slide radially by gap / (2*sin(phi)) in addition to
the slide caused by its own radial compliance.  Within adherence zones ZP
is constant, so a compliant flange adds nothing there.

The correction feeds the modified radial slides back into the solver's
inner loops (full re-entry including the boundary and neutral searches).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import Curve
from .model import DRIVEN, DRIVING, Drive
from .solver import SolveConfig, Solution, solve


@dataclass
class FlangeState:
    """Per-strut flange kinematics of one arc of a corrected solution."""

    arc: int
    axial_displacement: np.ndarray   # EKF(ZP)
    gap: np.ndarray                  # flange gap change strut-to-strut
    slide_pulley: np.ndarray         # GRP, from flange compliance
    slide_strut: np.ndarray          # GRM, from strut radial compliance
    slide_total: np.ndarray          # GR = GRP + GRM


def flange_gap(axial_load: float, axial_load_prev: float,
               flange_compliance: Curve) -> float:
    """Axial gap change between consecutive strut positions."""
    return 2.0 * (flange_compliance(axial_load)
                  - flange_compliance(axial_load_prev))


def radial_slide_pulley(gap: float, groove_half_angle: float) -> float:
    """Radial slide a flange gap change imposes on the strut."""
    sin_phi = math.sin(groove_half_angle)
    if sin_phi <= 0.0:
        raise ValueError("groove half-angle must have a positive sine")
    return -gap / (2.0 * sin_phi)


def radial_slide_strut(axial_load: float, axial_load_prev: float,
                       radial_compliance: Curve,
                       groove_half_angle: float) -> float:
    """Radial slide from the strut's own height change under axial load."""
    sin_phi = math.sin(groove_half_angle)
    if sin_phi <= 0.0:
        raise ValueError("groove half-angle must have a positive sine")
    return -(radial_compliance(axial_load)
             - radial_compliance(axial_load_prev)) / (2.0 * sin_phi)


def flange_state(solution: Solution, arc: int) -> FlangeState:
    """Reconstruct the flange kinematics of one arc from a solution."""
    mat = solution.drive.material
    phi = solution.drive.geometry.groove_half_angle
    zp = solution.arc(arc).pulley_axial
    ekf = mat.flange_compliance(zp)
    ekl = mat.radial_compliance(zp)
    gap = np.zeros_like(zp)
    gap[1:] = 2.0 * (ekf[1:] - ekf[:-1])
    grp = -gap / (2.0 * math.sin(phi))
    grm = np.zeros_like(zp)
    grm[1:] = -(ekl[1:] - ekl[:-1]) / (2.0 * math.sin(phi))
    return FlangeState(arc=arc, axial_displacement=ekf, gap=gap,
                       slide_pulley=grp, slide_strut=grm,
                       slide_total=grp + grm)


def apply_flange_correction(solution: Solution,
                            config: SolveConfig | None = None) -> Solution:
    """Re-solve a converged rigid-flange solution with compliant flanges.

    A rigid flange table (identically zero) leaves the solution untouched;
    otherwise the solver re-enters all its loops with the additional
    pulley-side radial slide, warm-started from the rigid solution.
    """
    drive: Drive = solution.drive
    if drive.material.flange_compliance.is_zero:
        return solution
    return solve(drive, solution.operating, config or solution.config,
                 flange_mode=True, warm_start=solution)


__all__ = ["FlangeState", "flange_gap", "radial_slide_pulley",
           "radial_slide_strut", "flange_state", "apply_flange_correction",
           "DRIVEN", "DRIVING"]
