"""Nested iterative solution of the drive's quasi-static equilibrium.

Unknowns and closures
---------------------
Once the geometry is fixed, the loaded state of the drive is pinned by six
global scalars: the two strand force levels at the driven-arc entry
(compression PSUP, belt tension FSUP), the adherence/sliding boundaries
NG1/NG2 and the tension neutral points NL1/NL2.  They satisfy six
conditions:

* the compression marched around the loop returns to its start value;
* the belt-gain product around the loop equals one (tension closes);
* the strand forces reproduce the imposed input torque;
* the two neutral struts move at the same velocity (the belt velocity);
* the axial flange loads on the driving pulley sum to the imposed
  clamping force (or, in initial-tension mode, the mean belt tension
  equals the imposed value);
* the compressed strut stack exactly fills the belt length (|dLM| < eps).

Loop nesting
------------
    outer   pretension: the compression level is relaxed against the
            stack-length residual dLM;
    middle  a secant iteration moves the belt tension level until the
            summed axial loads match the clamping specification;
    inner   per-arc marches with the boundary/neutral searches, iterated
            with the sliding angles and velocities to a fixed point.

The marches are affine recursions in the strut compression and are solved
with vectorized prefix/suffix scans, so one sweep costs O(N).  Everything
is deterministic: identical inputs produce bit-identical solutions.

Fractional boundaries: both NG and NL refine their boundary strut with a
linear sub-strut fraction (a partially sliding / partially reversed
strut), which removes integer limit cycles from the searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .errors import (CapacityExceededError, CompressionLostError,
                     ConeViolationError, ConvergenceError, NoCrossingError,
                     WedgeContactLostError)
from .model import (AXIAL_FORCE, DRIVEN, DRIVING, Drive, INITIAL_TENSION,
                    OperatingPoint)
from .statics import (ADHERENCE, SLIDING, ContactFrame, StrutState,
                      contact_state_from_forces, strut_torque_from_forces)

_INNER_SWEEP_CAP = 400
_INNER_TOL = 5e-13
_VT_REFINE_CAP = 12
_GAMMA_BLEND = 1.0


@dataclass(frozen=True)
class SolveConfig:
    """Tolerances and iteration limits of the nested solution."""

    length_tolerance: float = 1e-6      # |dLM| target [m]
    force_tolerance: float = 1e-6       # relative, clamping and torque
    closure_tolerance: float = 1e-9     # belt-gain product
    max_outer_iterations: int = 200
    max_secant_iterations: int = 100
    relaxation_factor: float = 0.5

    def __post_init__(self):
        if min(self.length_tolerance, self.force_tolerance,
               self.closure_tolerance) <= 0.0:
            raise ValueError("tolerances must be positive")
        if not 0.0 < self.relaxation_factor <= 1.0:
            raise ValueError("relaxation factor must lie in (0, 1]")


@dataclass
class ArcProfile:
    """Converged per-strut arrays of one contact arc."""

    arc: int
    radius: float
    delta: float
    angles: np.ndarray            # strut center positions from arc entry [rad]
    compression: np.ndarray       # X
    tension: np.ndarray           # F
    belt_tangential: np.ndarray   # XL per band side
    belt_radial: np.ndarray       # YL per band side
    pulley_tangential: np.ndarray  # XP per flange
    pulley_radial: np.ndarray     # YP per flange
    pulley_axial: np.ndarray      # ZP per flange
    contact_normal: np.ndarray    # NP
    contact_friction: np.ndarray  # TP
    radial_friction: np.ndarray   # RP
    sliding_angle: np.ndarray     # gamma
    gamma_defined: np.ndarray     # bool
    zone_sliding: np.ndarray      # bool (True on the sliding zone)
    slide_weight: np.ndarray      # fractional sliding strength in [0, 1]
    slip_sign: np.ndarray         # eps = sign(VL - VT), int
    velocity: np.ndarray          # VT
    thickness_loss: np.ndarray    # dl
    centrifugal: np.ndarray       # YG
    slide_radial: np.ndarray      # GR
    slide_tangential: np.ndarray  # GT
    strut_torque: np.ndarray      # CP diagnostics
    entry_compression: float
    entry_tension: float

    @property
    def n_struts(self) -> int:
        return len(self.compression)


@dataclass
class Diagnostics:
    """Residual histories recorded while converging."""

    dlm_history: list = field(default_factory=list)
    axial_history: list = field(default_factory=list)
    inner_sweeps: list = field(default_factory=list)
    outer_iterations: int = 0
    secant_iterations: int = 0


@dataclass
class Solution:
    """Converged state of one operating point."""

    drive: Drive
    operating: OperatingPoint
    config: SolveConfig
    arc_1: ArcProfile
    arc_2: ArcProfile
    tension_upper: float          # FSUP
    tension_lower: float          # FINF
    compression_upper: float      # PSUP
    compression_lower: float      # PINF
    clamp_force: float            # FAXI = sum of ZP over the driving arc
    axle_force_half: float        # FAXE with the half-wrap angle convention
    axle_force_full: float        # FAXE with sin(theta1) as printed
    boundary_1: float             # NG1 (fractional strut index)
    boundary_2: float             # NG2
    neutral_1: float              # NL1
    neutral_2: float              # NL2
    belt_velocity: float          # VL
    speed_in: float               # W2
    speed_out: float              # W1
    torque_in: float              # C2
    torque_out: float             # C1 (negative for a transmitting drive)
    power_in: float               # PW2
    power_out: float              # PW1
    efficiency: float
    belt_power_fraction: float    # %AME
    initial_tension: float        # mean belt tension around the loop
    flange_mode: bool
    diagnostics: Diagnostics
    is_draft: bool = False

    def arc(self, j: int) -> ArcProfile:
        if j == DRIVEN:
            return self.arc_1
        if j == DRIVING:
            return self.arc_2
        raise ValueError(f"arc index must be 1 or 2, got {j}")

    def strut_state(self, j: int, index: int) -> StrutState:
        """Materialize the record of strut ``index`` (1-based) on arc ``j``."""
        p = self.arc(j)
        i = index - 1
        return StrutState(
            index=index, arc=j,
            compression=float(p.compression[i]), tension=float(p.tension[i]),
            belt_tangential=float(p.belt_tangential[i]),
            belt_radial=float(p.belt_radial[i]),
            pulley_tangential=float(p.pulley_tangential[i]),
            pulley_radial=float(p.pulley_radial[i]),
            pulley_axial=float(p.pulley_axial[i]),
            pulley_radial_friction=float(p.radial_friction[i]),
            contact_normal=float(p.contact_normal[i]),
            contact_friction=float(p.contact_friction[i]),
            strut_torque=float(p.strut_torque[i]),
            sliding_angle=float(p.sliding_angle[i]),
            gamma_defined=bool(p.gamma_defined[i]),
            zone=SLIDING if p.zone_sliding[i] else ADHERENCE,
            thickness_loss=float(p.thickness_loss[i]),
            slide_radial=float(p.slide_radial[i]),
            slide_tangential=float(p.slide_tangential[i]),
            centrifugal=float(p.centrifugal[i]),
            velocity=float(p.velocity[i]),
            slip_sign=int(p.slip_sign[i]))


# --------------------------------------------------------------------------
# per-arc marching machinery
# --------------------------------------------------------------------------

@dataclass
class _ArcConstants:
    j: int
    radius: float
    delta: float
    n: int
    sin_d: float
    cos_d: float
    pre_sign: float        # belt slip sign before the neutral point
    sin_phi: float
    cos_phi: float
    tan_phi: float

    @classmethod
    def build(cls, drive: Drive, j: int) -> "_ArcConstants":
        radius, _, delta, n = drive.geometry.arc(j)
        phi = drive.geometry.groove_half_angle
        return cls(j=j, radius=radius, delta=delta, n=n,
                   sin_d=math.sin(delta), cos_d=math.cos(delta),
                   pre_sign=1.0 if j == DRIVEN else -1.0,
                   sin_phi=math.sin(phi), cos_phi=math.cos(phi),
                   tan_phi=math.tan(phi))


def _post_weights(n: int, position: float) -> np.ndarray:
    """Fractional weights: 0 before ``position``, 1 after, blended between."""
    idx = np.arange(1, n + 1, dtype=float)
    return np.clip(idx - position + 1.0, 0.0, 1.0)


def slip_sign_pattern(n: int, neutral: float, pre_sign: float) -> np.ndarray:
    """Effective belt slip signs along an arc with a fractional neutral point."""
    w = _post_weights(n, neutral)
    return pre_sign * (1.0 - 2.0 * w)


def _symmetric_gains(epsl: np.ndarray, mu_belt: float,
                     delta: float) -> np.ndarray:
    """Per-strut belt tension gains of the midpoint element scheme."""
    t = math.tan(0.5 * delta)
    return (1.0 + mu_belt * epsl * t) / (1.0 - mu_belt * epsl * t)


@dataclass
class _MarchResult:
    boundary: float
    x: np.ndarray
    x_prev: np.ndarray
    f: np.ndarray
    f_prev: np.ndarray
    xl: np.ndarray
    yl: np.ndarray
    xp: np.ndarray
    yp: np.ndarray
    zp: np.ndarray
    np_slide: np.ndarray
    tp_slide: np.ndarray
    dl: np.ndarray
    vt: np.ndarray
    yg: np.ndarray
    w: np.ndarray
    mu_eff: np.ndarray
    z_adh: float


class _ArcProblem:
    """Everything one arc march needs besides the boundary position.

    The belt slip pattern, sliding angles and the entry state are held
    fixed while the compression recursion is evaluated, which makes the
    boundary search a one-dimensional problem.
    """

    def __init__(self, const: _ArcConstants, material, pitch: float,
                 entry_x: float, entry_f: float, entry_dl: float,
                 v_entry: float, epsl: np.ndarray, gamma: np.ndarray):
        self.const = const
        self.material = material
        self.pitch = pitch
        self.entry_x = entry_x
        self.entry_f = entry_f
        self.entry_dl = entry_dl
        self.v_entry = v_entry
        self.epsl = epsl
        self.gamma = gamma
        c = const
        mu_l = material.mu_belt
        # midpoint belt element: reversible gains, loop products can close
        t = math.tan(0.5 * c.delta)
        gain = (1.0 + mu_l * epsl * t) / (1.0 - mu_l * epsl * t)
        self.f = entry_f * np.cumprod(gain)
        self.f_prev = np.empty_like(self.f)
        self.f_prev[0] = entry_f
        self.f_prev[1:] = self.f[:-1]
        self.yl = -0.5 * (self.f_prev + self.f) * math.sin(0.5 * c.delta)
        self.xl = mu_l * epsl * self.yl
        den = c.sin_phi + material.mu_pulley * np.sin(gamma) * c.cos_phi
        if np.any(np.abs(den) <= 1e-9):
            from .errors import SingularConfigurationError
            raise SingularConfigurationError(
                "radial friction cancels the wedge reaction on some strut")
        self.mu_eff = material.mu_pulley * np.cos(gamma) / den
        self.c_slide = 1.0 / (c.cos_d - self.mu_eff * c.sin_d)

    def march(self, boundary: float, vt_seed: np.ndarray | None = None) -> _MarchResult:
        """March the compression recursion for a given boundary position.

        The centrifugal load couples back through the strut velocity, so
        the scan is repeated until the velocity profile is self-consistent.
        """
        c = self.const
        w = _post_weights(c.n, boundary)
        vt = np.full(c.n, self.v_entry) if vt_seed is None else vt_seed.copy()
        rem_entry = 1.0 - self.entry_dl / self.pitch
        x = None
        for _ in range(_VT_REFINE_CAP):
            yg = self.material.strut_mass * vt * vt / c.radius
            d_slide = (-2.0 * self.xl + self.mu_eff * (2.0 * self.yl + yg)) \
                * self.c_slide
            cc = 1.0 + w * (self.c_slide - 1.0)
            dd = w * d_slide
            x = _affine_scan(cc, dd, self.entry_x)
            dl = self.material.compression_curve(x)
            vt_new = self.v_entry * (1.0 - dl / self.pitch) / rem_entry
            shift = float(np.max(np.abs(vt_new - vt)))
            vt = vt_new
            if shift <= 1e-13 * self.v_entry:
                break
        yg = self.material.strut_mass * vt * vt / c.radius
        x_prev = np.empty_like(x)
        x_prev[0] = self.entry_x
        x_prev[1:] = x[:-1]
        xp = 0.5 * (x_prev - x * c.cos_d - 2.0 * self.xl)
        yp = -0.5 * (x * c.sin_d + 2.0 * self.yl + yg)
        sin_g = np.sin(self.gamma)
        den = c.sin_phi + self.material.mu_pulley * sin_g * c.cos_phi
        np_slide = yp / den
        tp_slide = self.material.mu_pulley * np_slide
        zp_slide = np_slide * c.cos_phi - tp_slide * c.sin_phi * sin_g
        # adherence-zone axial load frozen at the sliding-onset value, so the
        # profile is continuous across the zone boundary; without a sliding
        # zone it falls back to the frictionless wedge value
        slide_idx = np.nonzero(w > 0.0)[0]
        if len(slide_idx):
            z_adh = float(zp_slide[slide_idx[0]])
        else:
            z_adh = float(yp[0] * c.cos_phi / c.sin_phi)
        zp = (1.0 - w) * z_adh + w * zp_slide
        return _MarchResult(boundary=boundary, x=x, x_prev=x_prev, f=self.f,
                            f_prev=self.f_prev, xl=self.xl, yl=self.yl, xp=xp,
                            yp=yp, zp=zp, np_slide=np_slide, tp_slide=tp_slide,
                            dl=dl, vt=vt, yg=yg, w=w, mu_eff=self.mu_eff,
                            z_adh=z_adh)

    def exit_compressions(self, vt_seed: np.ndarray | None = None) -> np.ndarray:
        """Exit compression for every integer boundary k = 1 .. n+1.

        Uses the suffix composition of the per-strut affine maps, so all
        candidates cost one O(n) backward scan.  Entry ``exits[k]`` (0-based)
        is the exit compression when sliding starts at strut k+1.
        """
        c = self.const
        vt = np.full(c.n, self.v_entry) if vt_seed is None else vt_seed
        yg = self.material.strut_mass * vt * vt / c.radius
        d_slide = (-2.0 * self.xl + self.mu_eff * (2.0 * self.yl + yg)) \
            * self.c_slide
        a = np.ones(c.n + 1)
        a[:-1] = np.cumprod(self.c_slide[::-1])[::-1]
        b = np.zeros(c.n + 1)
        b[:-1] = np.cumsum((a[1:] * d_slide)[::-1])[::-1]
        return a * self.entry_x + b

    def solve_boundary(self, target_exit: float,
                       vt_seed: np.ndarray | None = None) -> float:
        """Boundary position whose march exits at ``target_exit``.

        Picks the smallest sliding zone (largest boundary index) bracketing
        the target and solves the fraction on the boundary strut exactly
        (the exit value is affine in the blend weight).
        """
        c = self.const
        vt = vt_seed
        boundary = float(c.n + 1)
        for _ in range(_VT_REFINE_CAP):
            exits = self.exit_compressions(vt)
            boundary_new = self._boundary_from_exits(exits, target_exit)
            res = self.march(boundary_new, vt_seed=vt)
            shift = abs(boundary_new - boundary)
            boundary, vt = boundary_new, res.vt
            if shift <= 1e-12 * c.n:
                break
        return boundary

    def _boundary_from_exits(self, exits: np.ndarray, target: float) -> float:
        c = self.const
        n = c.n
        no_zone = exits[n]          # = entry compression
        full = exits[0]
        if target == no_zone:
            return float(n + 1)
        diff = exits - target
        crossings = np.nonzero(diff[:-1] * diff[1:] <= 0.0)[0]
        if len(crossings) == 0:
            raise CapacityExceededError(
                f"arc {c.j}: even a fully sliding arc reaches only "
                f"{full:.6g} N against the required {target:.6g} N "
                "(gross slip)")
        # smallest sliding zone: the crossing with the largest boundary index
        k = int(crossings[-1])
        e_adh = exits[k + 1]     # boundary k+2: strut k+1 fully adherent
        e_sld = exits[k]         # boundary k+1: strut k+1 fully sliding
        if e_sld == e_adh:
            return float(k + 2)
        # the exit value is affine in the boundary strut's sliding strength
        s = (target - e_adh) / (e_sld - e_adh)
        return float(k + 2 - s)


def _affine_scan(c: np.ndarray, d: np.ndarray, x0: float) -> np.ndarray:
    """Vectorized x_i = c_i * x_{i-1} + d_i."""
    p = np.cumprod(c)
    return p * (x0 + np.cumsum(d / p))


# --------------------------------------------------------------------------
# loop-level state
# --------------------------------------------------------------------------

@dataclass
class _LoopState:
    psup: float
    fsup: float
    pinf: float
    finf: float
    ng1: float
    ng2: float
    nl1: float
    nl2: float
    vl: float
    gamma1: np.ndarray
    gamma2: np.ndarray
    dl1: np.ndarray
    dl2: np.ndarray
    gr_off1: float = 0.0
    gr_off2: float = 0.0
    march1: _MarchResult | None = None
    march2: _MarchResult | None = None
    gr1: np.ndarray | None = None
    gr2: np.ndarray | None = None
    gt1: np.ndarray | None = None
    gt2: np.ndarray | None = None
    epsl1: np.ndarray | None = None
    epsl2: np.ndarray | None = None
    v_in1: float = 0.0
    omega1: float = 0.0


class _LoopSolver:
    """Owns the constants and runs the nested iterations on a _LoopState."""

    def __init__(self, drive: Drive, operating: OperatingPoint,
                 config: SolveConfig, flange_mode: bool):
        self.drive = drive
        self.op = operating
        self.cfg = config
        self.flange_mode = flange_mode and not drive.material.flange_compliance.is_zero
        self.c1 = _ArcConstants.build(drive, DRIVEN)
        self.c2 = _ArcConstants.build(drive, DRIVING)
        self.pitch = drive.geometry.strut_pitch
        self.offset = drive.geometry.band_offset
        self.curve = drive.material.compression_curve
        self.diag = Diagnostics()

    # -- velocity bookkeeping ------------------------------------------------

    def _velocities(self, state: _LoopState):
        """Velocity profiles of both arcs anchored at the driving pulley.

        The driving-arc entry strut rides with its pulley; everything else
        follows the thickness recursion and the band-line jump factors.
        """
        g = self.drive.geometry
        dl_pinf = self.curve(state.pinf)
        dl_psup = self.curve(state.psup)
        v_in2 = self.op.input_speed * g.radius_2
        vt2 = v_in2 * (1.0 - state.dl2 / self.pitch) / (1.0 - dl_pinf / self.pitch)
        v_upper = vt2[-1] * (g.radius_2 + self.offset) / g.radius_2
        v_in1 = v_upper * g.radius_1 / (g.radius_1 + self.offset)
        vt1 = v_in1 * (1.0 - state.dl1 / self.pitch) / (1.0 - dl_psup / self.pitch)
        state.v_in1 = v_in1
        state.omega1 = v_in1 / g.radius_1
        return vt1, vt2, v_in1, v_in2

    # -- neutral points -------------------------------------------------------

    def _closure_residual(self, nl1: float, nl2: float) -> float:
        mu_l = self.drive.material.mu_belt
        e1 = slip_sign_pattern(self.c1.n, nl1, self.c1.pre_sign)
        e2 = slip_sign_pattern(self.c2.n, nl2, self.c2.pre_sign)
        g1 = _symmetric_gains(e1, mu_l, self.c1.delta)
        g2 = _symmetric_gains(e2, mu_l, self.c2.delta)
        return float(np.prod(g1) * np.prod(g2) - 1.0)

    @staticmethod
    def _crossing(values: np.ndarray, target: float) -> float:
        """Fractional 1-based position where a non-decreasing profile
        crosses ``target``."""
        n = len(values)
        if target <= values[0]:
            return 1.0
        if target >= values[-1]:
            return float(n + 1)
        i = int(np.searchsorted(values, target))
        lo, hi = values[i - 1], values[i]
        frac = 0.0 if hi == lo else (target - lo) / (hi - lo)
        return float(i + frac)   # between struts i and i+1 (1-based)

    def _solve_neutral(self, state: _LoopState, vt1: np.ndarray,
                       vt2: np.ndarray):
        """Place both neutral points: common velocity plus belt closure."""

        def nl1_of(nl2: float) -> float:
            vl = _interp(vt2, nl2)
            return self._crossing(vt1, vl)

        def residual(nl2: float) -> float:
            return self._closure_residual(nl1_of(nl2), nl2)

        lo = 1.0
        hi = float(self.c2.n + 1)
        r_lo, r_hi = residual(lo), residual(hi)
        # the residual decreases monotonically in nl2; clamp to the nearest
        # end while iterating (closure is re-verified at convergence)
        if r_lo <= 0.0:
            nl2 = lo
        elif r_hi >= 0.0:
            nl2 = hi
        else:
            nl2 = brentq(residual, lo, hi, xtol=1e-13, rtol=8.9e-16)
        nl1 = nl1_of(nl2)
        vl = _interp(vt2, nl2)
        return nl1, nl2, vl

    # -- sweep ----------------------------------------------------------------

    def _entry_for_torque(self, exit_x: float, exit_f: float, entry_f: float,
                          torque: float, const: _ArcConstants,
                          gr_off: float) -> float:
        """Entry compression the strand-force torque balance requires.

        Inverts C = (R+GR)*X_exit - R*X_entry - (R+a+GR)*F_exit
        + (R+a)*F_entry for the entry compression.
        """
        r = const.radius
        return ((r + gr_off) * exit_x - torque
                - (r + self.offset + gr_off) * exit_f
                + (r + self.offset) * entry_f) / r

    def _slide_displacements(self, res: _MarchResult, const: _ArcConstants,
                             omega: float, v_surface: float):
        """Radial and tangential slip of each strut over one angular pitch."""
        mat = self.drive.material
        ekl = mat.radial_compliance(res.zp)
        gr = np.zeros(const.n)
        gr[1:] = -(ekl[1:] - ekl[:-1]) / (2.0 * const.sin_phi)
        if self.flange_mode:
            ekf = mat.flange_compliance(res.zp)
            gr[1:] += -(ekf[1:] - ekf[:-1]) / const.sin_phi
        gt = (res.vt - v_surface) * const.delta / omega
        return gr, gt

    def _update_gamma(self, gamma: np.ndarray, gr: np.ndarray, gt: np.ndarray,
                      w: np.ndarray) -> tuple[np.ndarray, float]:
        """Damped sliding-angle update on the sliding struts."""
        sliding = w > 0.0
        new = gamma.copy()
        moving = sliding & ((gr != 0.0) | (gt != 0.0))
        new[moving] = np.arctan2(-gr[moving], gt[moving])
        if _GAMMA_BLEND < 1.0:
            s = (1.0 - _GAMMA_BLEND) * np.sin(gamma) + _GAMMA_BLEND * np.sin(new)
            c = (1.0 - _GAMMA_BLEND) * np.cos(gamma) + _GAMMA_BLEND * np.cos(new)
            new = np.arctan2(s, c)
        shift = float(np.max(np.abs(np.arctan2(np.sin(new - gamma),
                                               np.cos(new - gamma)))))
        return new, shift

    def _sweep(self, state: _LoopState) -> float:
        """One inner fixed-point sweep; returns the largest relative change."""
        mat = self.drive.material
        g = self.drive.geometry
        vt1, vt2, v_in1, v_in2 = self._velocities(state)
        nl1, nl2, vl = self._solve_neutral(state, vt1, vt2)
        epsl1 = slip_sign_pattern(self.c1.n, nl1, self.c1.pre_sign)
        epsl2 = slip_sign_pattern(self.c2.n, nl2, self.c2.pre_sign)

        # belt tension profiles fix FINF for the torque relation
        prob1 = _ArcProblem(self.c1, mat, self.pitch, state.psup, state.fsup,
                            self.curve(state.psup), v_in1, epsl1, state.gamma1)
        finf = float(prob1.f[-1])
        # driving arc: exit = (PSUP, FSUP), entry = (PINF, FINF)
        pinf_target = self._entry_for_torque(
            state.psup, state.fsup, finf, self.op.input_torque, self.c2,
            state.gr_off2)
        if pinf_target <= 0.0:
            raise CompressionLostError(
                f"required lower-strand compression {pinf_target:.4g} N is not "
                "positive; the drive cannot carry this torque at this "
                "pretension", arc=DRIVING)

        ng1 = prob1.solve_boundary(pinf_target, vt_seed=state.march1.vt
                                   if state.march1 is not None else None)
        res1 = prob1.march(ng1)

        prob2 = _ArcProblem(self.c2, mat, self.pitch, pinf_target, finf,
                            self.curve(pinf_target), v_in2, epsl2, state.gamma2)
        ng2 = prob2.solve_boundary(state.psup, vt_seed=state.march2.vt
                                   if state.march2 is not None else None)
        res2 = prob2.march(ng2)

        gr1, gt1 = self._slide_displacements(res1, self.c1, state.omega1,
                                             state.omega1 * g.radius_1)
        gr2, gt2 = self._slide_displacements(res2, self.c2, self.op.input_speed,
                                             self.op.input_speed * g.radius_2)
        gamma1, shift_g1 = self._update_gamma(state.gamma1, gr1, gt1, res1.w)
        gamma2, shift_g2 = self._update_gamma(state.gamma2, gr2, gt2, res2.w)

        scale = max(state.psup, state.fsup)
        shift = max(
            abs(pinf_target - state.pinf) / scale,
            abs(finf - state.finf) / scale,
            abs(nl1 - state.nl1) / self.c1.n,
            abs(nl2 - state.nl2) / self.c2.n,
            abs(ng1 - state.ng1) / self.c1.n,
            abs(ng2 - state.ng2) / self.c2.n,
            abs(vl - state.vl) / max(vl, 1e-12),
            float(np.max(np.abs(res1.dl - state.dl1))) / self.pitch,
            float(np.max(np.abs(res2.dl - state.dl2))) / self.pitch,
            shift_g1, shift_g2,
            abs(float(np.sum(gr2)) - state.gr_off2) / g.radius_2,
        )

        state.pinf, state.finf = pinf_target, finf
        state.ng1, state.ng2 = ng1, ng2
        state.nl1, state.nl2, state.vl = nl1, nl2, vl
        state.gamma1, state.gamma2 = gamma1, gamma2
        state.dl1, state.dl2 = res1.dl, res2.dl
        state.march1, state.march2 = res1, res2
        state.gr1, state.gt1, state.gr2, state.gt2 = gr1, gt1, gr2, gt2
        state.epsl1, state.epsl2 = epsl1, epsl2
        state.gr_off1 = float(np.sum(gr1))
        state.gr_off2 = float(np.sum(gr2))
        return shift

    def inner_converge(self, state: _LoopState):
        sweeps = 0
        recent: list[float] = []
        for sweeps in range(1, _INNER_SWEEP_CAP + 1):
            shift = self._sweep(state)
            if shift <= _INNER_TOL:
                break
            # accept an ulp-level limit cycle once the shift stops improving
            recent.append(shift)
            if len(recent) > 6:
                recent.pop(0)
                if shift < 1e-10 and shift >= 0.999 * max(recent[:-1]):
                    break
        else:
            raise ConvergenceError(
                f"inner fixed point stalled at relative shift {shift:.3e}",
                phase="inner")
        closure = self._closure_residual(state.nl1, state.nl2)
        if abs(closure) > self.cfg.closure_tolerance:
            raise NoCrossingError(
                f"belt closure residual {closure:.3e} at the converged "
                "neutral points; the belt/strut friction cannot close the "
                "tension loop for this geometry")
        self.diag.inner_sweeps.append(sweeps)

    # -- middle loop: clamping -----------------------------------------------

    def _clamp_residual(self, state: _LoopState) -> float:
        if self.op.clamp_mode == AXIAL_FORCE:
            total = float(np.sum(state.march2.zp))
            return (total - self.op.clamp_value) / self.op.clamp_value
        mean = self.mean_belt_tension(state)
        return (mean - self.op.clamp_value) / self.op.clamp_value

    def mean_belt_tension(self, state: _LoopState) -> float:
        """Arc-length-weighted mean of the belt tension around the loop."""
        g = self.drive.geometry
        w1 = (g.radius_1 + self.offset) * self.c1.delta
        w2 = (g.radius_2 + self.offset) * self.c2.delta
        left1 = (g.radius_1 + self.offset) * (g.wrap_1 - self.c1.n * self.c1.delta)
        left2 = (g.radius_2 + self.offset) * (g.wrap_2 - self.c2.n * self.c2.delta)
        total = (w1 * float(np.sum(state.march1.f))
                 + w2 * float(np.sum(state.march2.f))
                 + 0.5 * left1 * (state.fsup + state.finf)
                 + 0.5 * left2 * (state.finf + state.fsup)
                 + g.strand_length * (state.fsup + state.finf))
        length = (w1 * self.c1.n + w2 * self.c2.n + left1 + left2
                  + 2.0 * g.strand_length)
        return total / length

    def secant_clamp(self, state: _LoopState):
        """Secant on the belt tension level against the clamping residual."""
        cfg = self.cfg
        r0 = None
        for attempt in range(12):
            try:
                self.inner_converge(state)
                r0 = self._clamp_residual(state)
                break
            except (CapacityExceededError, CompressionLostError,
                    WedgeContactLostError):
                if attempt == 11:
                    raise
                # seed tension too low to carry the torque: raise and retry
                state.fsup *= 1.25
        self.diag.axial_history.append(r0)
        if abs(r0) < cfg.force_tolerance:
            return
        x0 = state.fsup
        x1 = x0 * (1.03 if r0 < 0.0 else 0.97)
        floor = 0.0
        for it in range(1, cfg.max_secant_iterations + 1):
            self.diag.secant_iterations += 1
            try:
                state.fsup = x1
                self.inner_converge(state)
                r1 = self._clamp_residual(state)
            except (CapacityExceededError, CompressionLostError,
                    WedgeContactLostError):
                # trial tension too low to carry the load: back off upward
                floor = max(floor, x1)
                x1 = 0.5 * (x1 + max(x0, x1 * 1.2))
                continue
            self.diag.axial_history.append(r1)
            if abs(r1) < cfg.force_tolerance:
                return
            if r1 == r0:
                raise ConvergenceError("clamping residual stalled",
                                       phase="axial",
                                       history=self.diag.axial_history)
            x2 = x1 - r1 * (x1 - x0) / (r1 - r0)
            x2 = min(max(x2, 0.5 * x1, floor * 1.01 + 1e-9), 2.0 * x1)
            x0, r0, x1 = x1, r1, x2
        raise ConvergenceError(
            f"clamping not matched after {cfg.max_secant_iterations} secant "
            "iterations", phase="axial", history=self.diag.axial_history)

    # -- outer loop: pretension ------------------------------------------------

    def length_residual(self, state: _LoopState) -> float:
        """dLM: belt length minus the compressed stack length."""
        g = self.drive.geometry
        total_loss = (float(np.sum(state.march1.dl))
                      + float(np.sum(state.march2.dl))
                      + g.strand_struts_upper * self.curve(state.psup)
                      + g.strand_struts_lower * self.curve(state.pinf))
        stack = g.strut_count_total * self.pitch - total_loss
        return g.belt_length - stack

    def run(self, state: _LoopState) -> _LoopState:
        cfg = self.cfg
        for outer in range(1, cfg.max_outer_iterations + 1):
            self.diag.outer_iterations = outer
            self.secant_clamp(state)
            dlm = self.length_residual(state)
            self.diag.dlm_history.append(dlm)
            if abs(dlm) < cfg.length_tolerance:
                return state
            # Newton step on the compression level; the stack shortens by
            # roughly N * curve'(X) per newton of level shift.
            x = max(state.psup, 1.0)
            slope = self.drive.geometry.strut_count_total * max(
                (self.curve(x * 1.001) - self.curve(x)) / (0.001 * x), 1e-18)
            step = cfg.relaxation_factor * dlm / slope
            step = min(max(step, -0.25 * state.psup), 1.0 * state.psup)
            state.psup = state.psup - step
            if state.psup <= 0.0:
                raise CompressionLostError(
                    "pretension iteration drove the upper-strand compression "
                    "negative")
        raise ConvergenceError(
            f"stack-length residual {dlm:.3e} m after "
            f"{cfg.max_outer_iterations} pretension iterations",
            phase="pretension", history=self.diag.dlm_history)


def _interp(values: np.ndarray, position: float) -> float:
    """Linear interpolation of a per-strut array at a 1-based fractional
    index (clamped at the ends)."""
    n = len(values)
    position = min(max(position, 1.0), float(n))
    k = int(math.floor(position))
    if k >= n:
        return float(values[-1])
    frac = position - k
    return float((1.0 - frac) * values[k - 1] + frac * values[k])


# --------------------------------------------------------------------------
# initialization
# --------------------------------------------------------------------------

def _initial_state(drive: Drive, operating: OperatingPoint) -> _LoopState:
    """Rigid-model seeding of all iterate quantities (the CINIT step)."""
    g = drive.geometry
    mat = drive.material
    c1 = _ArcConstants.build(drive, DRIVEN)
    c2 = _ArcConstants.build(drive, DRIVING)
    x_rest = drive.rest_compression()
    d0 = operating.input_torque / g.radius_2
    pinf0 = max(x_rest - 0.5 * d0, 0.05 * x_rest)
    psup0 = pinf0 + d0

    v2 = operating.input_speed * g.radius_2
    yg2 = mat.strut_mass * v2 * v2 / g.radius_2
    if operating.clamp_mode == AXIAL_FORCE:
        f0 = (2.0 * operating.clamp_value * c2.tan_phi / c2.n + yg2
              + x_rest * c2.sin_d) / (2.0 * math.sin(0.5 * c2.delta))
    else:
        f0 = operating.clamp_value

    idx1 = np.arange(c1.n, dtype=float)
    idx2 = np.arange(c2.n, dtype=float)
    x1 = psup0 + (pinf0 - psup0) * (idx1 + 1.0) / c1.n
    x2 = pinf0 + (psup0 - pinf0) * (idx2 + 1.0) / c2.n
    no_zone = operating.input_torque == 0.0
    return _LoopState(
        psup=psup0, fsup=f0, pinf=pinf0, finf=f0,
        ng1=float(c1.n + 1) if no_zone else 0.5 * (c1.n + 1),
        ng2=float(c2.n + 1) if no_zone else 0.5 * (c2.n + 1),
        nl1=0.75 * c1.n, nl2=0.75 * c2.n,
        vl=v2,
        gamma1=np.full(c1.n, 0.5), gamma2=np.full(c2.n, -2.2),
        dl1=mat.compression_curve(x1), dl2=mat.compression_curve(x2))


def init_rigid(drive: Drive, operating: OperatingPoint,
               config: SolveConfig | None = None) -> Solution:
    """Rigid-model draft solution used to seed the iterations.

    Uniform belt tension, linearly ramped compressions and mid-arc zone
    boundaries; the strand continuity identities hold exactly by
    construction.  Power quantities are left unset (NaN).
    """
    config = config or SolveConfig()
    state = _initial_state(drive, operating)
    solver = _LoopSolver(drive, operating, config, flange_mode=False)
    vt1, vt2, v_in1, v_in2 = solver._velocities(state)

    def draft_profile(const, x, f, vt, dl, entry_x, entry_f, ng):
        n = const.n
        w = _post_weights(n, ng)
        zeros = np.zeros(n)
        return ArcProfile(
            arc=const.j, radius=const.radius, delta=const.delta,
            angles=drive.geometry.entry_offset(const.j)
            + const.delta * np.arange(n),
            compression=x, tension=f, belt_tangential=zeros.copy(),
            belt_radial=-f * math.sin(0.5 * const.delta),
            pulley_tangential=zeros.copy(),
            pulley_radial=-0.5 * (x * const.sin_d - f * const.sin_d),
            pulley_axial=zeros.copy(), contact_normal=zeros.copy(),
            contact_friction=zeros.copy(), radial_friction=zeros.copy(),
            sliding_angle=zeros.copy(),
            gamma_defined=np.zeros(n, dtype=bool),
            zone_sliding=w > 0.0, slide_weight=w,
            slip_sign=np.zeros(n, dtype=int), velocity=vt,
            thickness_loss=dl, centrifugal=drive.material.strut_mass * vt * vt
            / const.radius,
            slide_radial=zeros.copy(), slide_tangential=zeros.copy(),
            strut_torque=zeros.copy(), entry_compression=entry_x,
            entry_tension=entry_f)

    c1, c2 = solver.c1, solver.c2
    x1 = np.interp(np.arange(1, c1.n + 1), [0, c1.n], [state.psup, state.pinf])
    x2 = np.interp(np.arange(1, c2.n + 1), [0, c2.n], [state.pinf, state.psup])
    f1 = np.full(c1.n, state.fsup)
    f2 = np.full(c2.n, state.fsup)
    nan = math.nan
    return Solution(
        drive=drive, operating=operating, config=config,
        arc_1=draft_profile(c1, x1, f1, vt1, drive.material.compression_curve(x1),
                            state.psup, state.fsup, state.ng1),
        arc_2=draft_profile(c2, x2, f2, vt2, drive.material.compression_curve(x2),
                            state.pinf, state.finf, state.ng2),
        tension_upper=state.fsup, tension_lower=state.finf,
        compression_upper=state.psup, compression_lower=state.pinf,
        clamp_force=operating.clamp_value
        if operating.clamp_mode == AXIAL_FORCE else nan,
        axle_force_half=nan, axle_force_full=nan,
        boundary_1=state.ng1, boundary_2=state.ng2,
        neutral_1=state.nl1, neutral_2=state.nl2,
        belt_velocity=state.vl, speed_in=operating.input_speed,
        speed_out=v_in1 / drive.geometry.radius_1,
        torque_in=operating.input_torque, torque_out=nan,
        power_in=operating.input_torque * operating.input_speed, power_out=nan,
        efficiency=nan, belt_power_fraction=nan,
        initial_tension=state.fsup, flange_mode=False,
        diagnostics=Diagnostics(), is_draft=True)


# --------------------------------------------------------------------------
# public spec-level operations on arc problems
# --------------------------------------------------------------------------

def find_adherence_boundary(drive: Drive, arc: int, torque_target: float,
                            entry_compression: float, entry_tension: float,
                            exit_tension: float, neutral: float,
                            gamma: np.ndarray, v_entry: float,
                            gr_offset: float = 0.0) -> float:
    """Boundary position (fractional strut index) transmitting a torque.

    The smallest sliding zone whose marched strand forces reproduce
    ``torque_target`` through the strand-force balance of the pulley; a
    boundary of n+1 means no sliding zone at all.
    """
    const = _ArcConstants.build(drive, arc)
    if torque_target == 0.0:
        return float(const.n + 1)
    a = drive.geometry.band_offset
    r = const.radius
    target_exit = (torque_target + r * entry_compression
                   + (r + a + gr_offset) * exit_tension
                   - (r + a) * entry_tension) / (r + gr_offset)
    epsl = slip_sign_pattern(const.n, neutral, const.pre_sign)
    prob = _ArcProblem(const, drive.material, drive.geometry.strut_pitch,
                       entry_compression, entry_tension,
                       drive.material.compression_curve(entry_compression),
                       v_entry, epsl, gamma)
    return prob.solve_boundary(target_exit)


def find_neutral_point(drive: Drive, arc: int, neutral_other: float) -> float:
    """Neutral position on one arc closing the belt-gain product, holding
    the other arc's neutral fixed."""
    c_this = _ArcConstants.build(drive, arc)
    c_other = _ArcConstants.build(drive, DRIVING if arc == DRIVEN else DRIVEN)
    mu_l = drive.material.mu_belt
    e_other = slip_sign_pattern(c_other.n, neutral_other, c_other.pre_sign)
    p_other = float(np.prod(_symmetric_gains(e_other, mu_l, c_other.delta)))

    def residual(nl: float) -> float:
        e = slip_sign_pattern(c_this.n, nl, c_this.pre_sign)
        return float(np.prod(_symmetric_gains(e, mu_l, c_this.delta))
                     * p_other - 1.0)

    lo, hi = 1.0, float(c_this.n + 1)
    r_lo, r_hi = residual(lo), residual(hi)
    if r_lo == 0.0:
        return lo
    if r_hi == 0.0:
        return hi
    if r_lo * r_hi > 0.0:
        raise NoCrossingError(
            f"arc {arc}: no neutral position closes the belt loop")
    return float(brentq(residual, lo, hi, xtol=1e-13, rtol=8.9e-16))


def geometric_compatibility(solution: Solution) -> float:
    """dLM of a solution: belt length minus the compressed stack length."""
    g = solution.drive.geometry
    curve = solution.drive.material.compression_curve
    total_loss = (float(np.sum(solution.arc_1.thickness_loss))
                  + float(np.sum(solution.arc_2.thickness_loss))
                  + g.strand_struts_upper * curve(solution.compression_upper)
                  + g.strand_struts_lower * curve(solution.compression_lower))
    stack = g.strut_count_total * g.strut_pitch - total_loss
    return g.belt_length - stack


def adherent_zone_angles(solution: Solution) -> dict[int, np.ndarray]:
    """Incipient-slip angles on the adherence zones (the CRAD1 step).

    Recovers (NP, TP, gamma) from the force components of every adherent
    strut; the returned angles match the stored profile.
    """
    out = {}
    phi = solution.drive.geometry.groove_half_angle
    for j in (DRIVEN, DRIVING):
        p = solution.arc(j)
        angles = np.zeros(p.n_struts)
        for i in range(p.n_struts):
            if p.zone_sliding[i]:
                angles[i] = p.sliding_angle[i]
                continue
            _, _, gamma, defined = contact_state_from_forces(
                p.pulley_tangential[i], p.pulley_radial[i],
                p.pulley_axial[i], phi)
            angles[i] = gamma if defined else 0.0
        out[j] = angles
    return out


def secant_axial(drive: Drive, operating: OperatingPoint, draft: Solution,
                 config: SolveConfig | None = None) -> Solution:
    """Match the clamping specification from a draft state (middle loop only).

    Runs the inner fixed point and the secant on the belt tension level at
    the draft's pretension; the stack-length closure is left to
    :func:`solve`.
    """
    config = config or SolveConfig()
    solver = _LoopSolver(drive, operating, config, flange_mode=False)
    state = _state_from_solution(draft, drive)
    solver.secant_clamp(state)
    return _assemble(solver, state)


def _state_from_solution(solution: Solution, drive: Drive) -> _LoopState:
    state = _initial_state(drive, solution.operating)
    state.psup = solution.compression_upper
    state.fsup = solution.tension_upper
    state.pinf = solution.compression_lower
    state.finf = solution.tension_lower
    state.ng1, state.ng2 = solution.boundary_1, solution.boundary_2
    if not (math.isnan(solution.neutral_1) or solution.neutral_1 == 0.0):
        state.nl1, state.nl2 = solution.neutral_1, solution.neutral_2
    state.dl1 = solution.arc_1.thickness_loss.copy()
    state.dl2 = solution.arc_2.thickness_loss.copy()
    if not solution.is_draft:
        state.gamma1 = solution.arc_1.sliding_angle.copy()
        state.gamma2 = solution.arc_2.sliding_angle.copy()
    return state


# --------------------------------------------------------------------------
# assembly and validation
# --------------------------------------------------------------------------

def _assemble(solver: _LoopSolver, state: _LoopState) -> Solution:
    drive, op = solver.drive, solver.op
    g = drive.geometry
    phi = g.groove_half_angle
    profiles = {}
    for j, const, res, gamma_slip, gr, gt, epsl in (
            (DRIVEN, solver.c1, state.march1, state.gamma1, state.gr1,
             state.gt1, state.epsl1),
            (DRIVING, solver.c2, state.march2, state.gamma2, state.gr2,
             state.gt2, state.epsl2)):
        n = const.n
        w = res.w
        sliding = w > 0.0
        normal = np.empty(n)
        friction = np.empty(n)
        gamma = np.empty(n)
        defined = np.ones(n, dtype=bool)
        for i in range(n):
            if w[i] >= 1.0:
                normal[i] = res.np_slide[i]
                friction[i] = res.tp_slide[i]
                gamma[i] = gamma_slip[i]
            else:
                npv, tpv, gv, okv = contact_state_from_forces(
                    res.xp[i], res.yp[i], res.zp[i], phi)
                normal[i], friction[i] = npv, tpv
                gamma[i] = gv if okv else 0.0
                defined[i] = okv
        rp = friction * np.sin(gamma)
        frame = ContactFrame(radius=const.radius, angular_pitch=const.delta,
                             half_pitch=0.5 * g.strut_pitch)
        cp = np.array([
            strut_torque_from_forces(res.xp[i], res.yp[i], res.yg[i],
                                     res.yl[i], res.x_prev[i], frame,
                                     const.delta)
            for i in range(n)])
        slip = np.where(state.vl >= res.vt, 1, -1).astype(int)
        profiles[j] = ArcProfile(
            arc=j, radius=const.radius, delta=const.delta,
            angles=g.entry_offset(j) + const.delta * np.arange(n),
            compression=res.x, tension=res.f, belt_tangential=res.xl,
            belt_radial=res.yl, pulley_tangential=res.xp,
            pulley_radial=res.yp, pulley_axial=res.zp, contact_normal=normal,
            contact_friction=friction, radial_friction=rp,
            sliding_angle=gamma, gamma_defined=defined, zone_sliding=sliding,
            slide_weight=w, slip_sign=slip, velocity=res.vt,
            thickness_loss=res.dl, centrifugal=res.yg, slide_radial=gr,
            slide_tangential=gt, strut_torque=cp,
            entry_compression=res.x_prev[0], entry_tension=res.f_prev[0])

    fsup = float(state.march2.f[-1])
    finf = state.finf
    psup, pinf = state.psup, state.pinf
    w1 = state.omega1
    w2 = op.input_speed
    r1, r2, a = g.radius_1, g.radius_2, g.band_offset
    torque_out = ((r1 + state.gr_off1) * pinf - r1 * psup
                  - (r1 + a + state.gr_off1) * finf + (r1 + a) * fsup)
    power_in = op.input_torque * w2
    power_out = torque_out * w1
    efficiency = -power_out / power_in if power_in > 0.0 else 1.0
    strand_sum = fsup + finf - psup - pinf
    belt_share = (abs((finf - fsup) * state.vl) / power_in
                  if power_in > 0.0 else 0.0)

    solution = Solution(
        drive=drive, operating=op, config=solver.cfg,
        arc_1=profiles[DRIVEN], arc_2=profiles[DRIVING],
        tension_upper=fsup, tension_lower=finf,
        compression_upper=psup, compression_lower=pinf,
        clamp_force=float(np.sum(state.march2.zp)),
        axle_force_half=strand_sum * math.sin(0.5 * g.wrap_1),
        axle_force_full=strand_sum * math.sin(g.wrap_1),
        boundary_1=state.ng1, boundary_2=state.ng2,
        neutral_1=state.nl1, neutral_2=state.nl2,
        belt_velocity=state.vl, speed_in=w2, speed_out=w1,
        torque_in=op.input_torque, torque_out=torque_out,
        power_in=power_in, power_out=power_out, efficiency=efficiency,
        belt_power_fraction=belt_share,
        initial_tension=solver.mean_belt_tension(state),
        flange_mode=solver.flange_mode, diagnostics=solver.diag)
    _validate(solution)
    return solution


def _validate(solution: Solution):
    """Physical admissibility of a converged state."""
    mu_p = solution.drive.material.mu_pulley
    for j in (DRIVEN, DRIVING):
        p = solution.arc(j)
        if np.any(p.compression <= 0.0):
            i = int(np.argmax(p.compression <= 0.0))
            raise CompressionLostError(
                f"arc {j}: strut {i + 1} lost compression "
                f"({p.compression[i]:.4g} N)", arc=j, strut=i + 1)
        if np.any(p.tension <= 0.0):
            raise CompressionLostError(f"arc {j}: belt tension collapsed",
                                       arc=j)
        if np.any(p.pulley_radial < 0.0):
            i = int(np.argmax(p.pulley_radial < 0.0))
            raise WedgeContactLostError(
                f"arc {j}: strut {i + 1} separates from the groove "
                f"(radial reaction {p.pulley_radial[i]:.4g} N); raise the "
                "clamping or initial tension", arc=j, strut=i + 1)
        if np.any(p.contact_normal < 0.0):
            raise WedgeContactLostError(
                f"arc {j}: negative contact normal force", arc=j)
        cone = np.abs(p.contact_friction) - mu_p * p.contact_normal \
            * (1.0 + 1e-9)
        if np.any(cone > 0.0):
            i = int(np.argmax(cone > 0.0))
            raise ConeViolationError(
                f"arc {j}: strut {i + 1} needs more friction than the "
                "Coulomb cone allows")


# --------------------------------------------------------------------------
# idle drive (zero torque): closed form
# --------------------------------------------------------------------------

def _solve_idle(drive: Drive, operating: OperatingPoint,
                config: SolveConfig) -> Solution:
    """Uniform zero-torque state: no sliding zones, no belt slip.

    The compression level follows from the stack interference alone and
    the tension level from the clamping specification; the residual
    belt/strut microslip due to the band offset at unequal radii is
    neglected (it vanishes identically for a ratio of one).
    """
    g = drive.geometry
    mat = drive.material
    c1 = _ArcConstants.build(drive, DRIVEN)
    c2 = _ArcConstants.build(drive, DRIVING)
    x0 = drive.rest_compression()
    v2 = operating.input_speed * g.radius_2
    v_upper = v2 * (g.radius_2 + g.band_offset) / g.radius_2
    v1 = v_upper * g.radius_1 / (g.radius_1 + g.band_offset)
    yg1 = mat.strut_mass * v1 * v1 / g.radius_1
    yg2 = mat.strut_mass * v2 * v2 / g.radius_2
    if operating.clamp_mode == AXIAL_FORCE:
        f0 = (2.0 * operating.clamp_value * c2.tan_phi / c2.n + yg2
              + x0 * c2.sin_d) / (2.0 * math.sin(0.5 * c2.delta))
    else:
        f0 = operating.clamp_value

    dl0 = mat.compression_curve(x0)
    profiles = {}
    zp_sum2 = 0.0
    for j, const, v, yg in ((DRIVEN, c1, v1, yg1), (DRIVING, c2, v2, yg2)):
        n = const.n
        x = np.full(n, x0)
        f = np.full(n, f0)
        yl = np.full(n, -f0 * math.sin(0.5 * const.delta))
        xl = np.zeros(n)
        xp = 0.5 * (x0 - x0 * const.cos_d) * np.ones(n)
        yp = -0.5 * (x0 * const.sin_d + 2.0 * yl + yg) * np.ones(n)
        if np.any(yp < 0.0):
            raise WedgeContactLostError(
                "idle state cannot hold the struts in the grooves; raise the "
                "clamping or initial tension", arc=j)
        zp = yp * const.cos_phi / const.sin_phi
        normal = np.empty(n)
        friction = np.empty(n)
        gamma = np.empty(n)
        defined = np.ones(n, dtype=bool)
        phi = g.groove_half_angle
        for i in range(n):
            npv, tpv, gv, okv = contact_state_from_forces(
                xp[i], yp[i], zp[i], phi)
            normal[i], friction[i] = npv, tpv
            gamma[i] = gv if okv else 0.0
            defined[i] = okv
        frame = ContactFrame(radius=const.radius, angular_pitch=const.delta,
                             half_pitch=0.5 * g.strut_pitch)
        cp = np.array([strut_torque_from_forces(
            xp[i], yp[i], yg, yl[i], x0, frame, const.delta)
            for i in range(n)])
        profiles[j] = ArcProfile(
            arc=j, radius=const.radius, delta=const.delta,
            angles=g.entry_offset(j) + const.delta * np.arange(n),
            compression=x, tension=f, belt_tangential=xl, belt_radial=yl,
            pulley_tangential=xp, pulley_radial=yp, pulley_axial=zp,
            contact_normal=normal, contact_friction=friction,
            radial_friction=friction * np.sin(gamma), sliding_angle=gamma,
            gamma_defined=defined, zone_sliding=np.zeros(n, dtype=bool),
            slide_weight=np.zeros(n), slip_sign=np.zeros(n, dtype=int),
            velocity=np.full(n, v), thickness_loss=np.full(n, dl0),
            centrifugal=np.full(n, yg), slide_radial=np.zeros(n),
            slide_tangential=np.zeros(n), strut_torque=cp,
            entry_compression=x0, entry_tension=f0)
        if j == DRIVING:
            zp_sum2 = float(np.sum(zp))

    vl = 0.5 * (v1 + v2)
    strand_sum = 2.0 * f0 - 2.0 * x0
    # mean belt tension is f0 exactly (uniform)
    return Solution(
        drive=drive, operating=operating, config=config,
        arc_1=profiles[DRIVEN], arc_2=profiles[DRIVING],
        tension_upper=f0, tension_lower=f0, compression_upper=x0,
        compression_lower=x0, clamp_force=zp_sum2,
        axle_force_half=strand_sum * math.sin(0.5 * g.wrap_1),
        axle_force_full=strand_sum * math.sin(g.wrap_1),
        boundary_1=float(c1.n + 1), boundary_2=float(c2.n + 1),
        neutral_1=0.0, neutral_2=0.0,
        belt_velocity=vl, speed_in=operating.input_speed,
        speed_out=v1 / g.radius_1, torque_in=0.0, torque_out=0.0,
        power_in=0.0, power_out=0.0, efficiency=1.0, belt_power_fraction=0.0,
        initial_tension=f0, flange_mode=False, diagnostics=Diagnostics())


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def solve(drive: Drive, operating: OperatingPoint,
          config: SolveConfig | None = None, flange_mode: bool = False,
          warm_start: Solution | None = None) -> Solution:
    """Solve one operating point to its quasi-static equilibrium.

    Deterministic: identical inputs produce bit-identical solutions.
    ``flange_mode`` activates the deformable-flange radial-slide correction;
    ``warm_start`` seeds the iteration from a previous solution of the same
    drive.
    """
    config = config or SolveConfig()
    drive.material.validate_against(drive.geometry)
    if operating.input_torque == 0.0:
        return _solve_idle(drive, operating, config)
    solver = _LoopSolver(drive, operating, config, flange_mode=flange_mode)
    if warm_start is not None and not warm_start.is_draft:
        state = _state_from_solution(warm_start, drive)
    else:
        state = _initial_state(drive, operating)
    solver.run(state)
    return _assemble(solver, state)
