"""Scratch: step the inner machinery manually to see where it fails."""
import numpy as np

from pushbelt import (AXIAL_FORCE, Curve, Drive, MaterialModel, OperatingPoint,
                      SolveConfig, build_drive_geometry)
from pushbelt.solver import _initial_state, _LoopSolver

geometry = build_drive_geometry(
    axis_distance=0.155, belt_length=0.65, strut_pitch=0.002,
    band_offset=0.0015, groove_half_angle=np.radians(11.0),
    strut_count_total=326, speed_ratio=1.0)
compression = Curve.polynomial(4e-9, 5e-13, 8000.0, name="compression")
radial = Curve.polynomial(3e-8, 0.0, 2000.0, name="radial")
material = MaterialModel(mu_belt=0.01, mu_pulley=0.12,
                         compression_curve=compression,
                         radial_compliance=radial, strut_mass=0.005)
drive = Drive(geometry=geometry, material=material)
op = OperatingPoint(speed_ratio=1.0, input_torque=80.0, input_speed=261.77,
                    clamp_mode=AXIAL_FORCE, clamp_value=20000.0)

solver = _LoopSolver(drive, op, SolveConfig(), flange_mode=False)
state = _initial_state(drive, op)
print(f"seed: psup={state.psup:.1f} pinf={state.pinf:.1f} fsup={state.fsup:.1f}")

for sweep in range(40):
    try:
        shift = solver._sweep(state)
    except Exception as err:
        print(f"sweep {sweep}: {type(err).__name__}: {err}")
        break
    print(f"sweep {sweep}: shift={shift:.3e} pinf={state.pinf:.1f} "
          f"finf={state.finf:.1f} ng1={state.ng1:.2f} ng2={state.ng2:.2f} "
          f"nl1={state.nl1:.2f} nl2={state.nl2:.2f} vl={state.vl:.4f} "
          f"zp_sum={np.sum(state.march2.zp):.0f}")
    if shift < 5e-13:
        break
