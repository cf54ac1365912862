"""Scratch: exercise the solver on a candidate default configuration."""
import time

import numpy as np

from pushbelt import (AXIAL_FORCE, Curve, Drive, MaterialModel, OperatingPoint,
                      SolveConfig, build_drive_geometry, solve)

geometry = build_drive_geometry(
    axis_distance=0.155, belt_length=0.65, strut_pitch=0.002,
    band_offset=0.0015, groove_half_angle=np.radians(11.0),
    strut_count_total=326, speed_ratio=1.0)
print("R1", geometry.radius_1, "N1", geometry.arc_struts_1,
      "delta1", geometry.delta_1, "strands", geometry.strand_struts,
      "interference", geometry.stack_interference)

compression = Curve.polynomial(4e-9, 5e-13, 8000.0, name="compression")
radial = Curve.polynomial(3e-8, 0.0, 2000.0, name="radial")
material = MaterialModel(mu_belt=0.01, mu_pulley=0.12,
                         compression_curve=compression,
                         radial_compliance=radial, strut_mass=0.005)
drive = Drive(geometry=geometry, material=material)
print("rest compression", drive.rest_compression())

op = OperatingPoint(speed_ratio=1.0, input_torque=80.0, input_speed=261.77,
                    clamp_mode=AXIAL_FORCE, clamp_value=20000.0)

t0 = time.perf_counter()
sol = solve(drive, op, SolveConfig())
t1 = time.perf_counter()
print(f"solved in {t1 - t0:.3f} s")
print("PSUP", sol.compression_upper, "PINF", sol.compression_lower)
print("FSUP", sol.tension_upper, "FINF", sol.tension_lower)
print("NG1", sol.boundary_1, "NG2", sol.boundary_2)
print("NL1", sol.neutral_1, "NL2", sol.neutral_2)
print("VL", sol.belt_velocity, "W1", sol.speed_out, "W2", sol.speed_in)
print("C1", sol.torque_out, "eta", sol.efficiency)
print("FAXI", sol.clamp_force, "FAXE(half)", sol.axle_force_half)
print("belt share", sol.belt_power_fraction, "F0_mean", sol.initial_tension)
print("outer iters", sol.diagnostics.outer_iterations,
      "secant", sol.diagnostics.secant_iterations,
      "inner sweeps", sol.diagnostics.inner_sweeps[-5:])
print("dlm history", [f"{d:.2e}" for d in sol.diagnostics.dlm_history])
g1 = np.degrees(sol.arc_1.sliding_angle[sol.arc_1.zone_sliding])
g2 = np.degrees(sol.arc_2.sliding_angle[sol.arc_2.zone_sliding])
print("gamma1 range", g1.min() if len(g1) else None, g1.max() if len(g1) else None)
print("gamma2 range", g2.min() if len(g2) else None, g2.max() if len(g2) else None)
