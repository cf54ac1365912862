"""pushbelt: quasi-static simulator for metal V-belt (push-belt) CVT drives.

Solves the discrete equilibrium of every strut and the flat belt on both
pulleys of a push-belt continuously variable transmission, producing
per-strut force/velocity/sliding profiles and the global outputs
(efficiency, power sharing, strand forces, clamping force), plus a
parameter-sweep harness for design studies.
"""

__version__ = "0.1.0"

from .curves import Curve
from .errors import (CapacityExceededError, CompressionLostError,
                     ConeViolationError, ConfigError, ConvergenceError,
                     GeometryError, InconsistentNeutralPointsError,
                     NoCrossingError, PushBeltError, SingularConfigurationError,
                     SolverError, UndefinedAngleError, WedgeContactLostError)
from .model import (AXIAL_FORCE, DRIVEN, DRIVING, Drive, DriveGeometry,
                    INITIAL_TENSION, MaterialModel, OperatingPoint,
                    build_drive_geometry, discretize_arc,
                    pitch_radii_from_ratio)
from .solver import (ArcProfile, SolveConfig, Solution, adherent_zone_angles,
                     find_adherence_boundary, find_neutral_point,
                     geometric_compatibility, init_rigid, secant_axial, solve)
from .flange import (FlangeState, apply_flange_correction, flange_gap,
                     flange_state, radial_slide_pulley, radial_slide_strut)
from .analysis import (PowerReport, SweepSpec, belt_power_share,
                       contact_slip_power, global_equilibrium,
                       power_efficiency, run_sweep)
from .config import ParsedConfig, parse_config, parse_config_dict, \
    serialize_config

__all__ = [
    "__version__",
    "Curve",
    "AXIAL_FORCE", "INITIAL_TENSION", "DRIVEN", "DRIVING",
    "Drive", "DriveGeometry", "MaterialModel", "OperatingPoint",
    "build_drive_geometry", "discretize_arc", "pitch_radii_from_ratio",
    "ArcProfile", "SolveConfig", "Solution", "solve", "init_rigid",
    "secant_axial", "find_adherence_boundary", "find_neutral_point",
    "geometric_compatibility", "adherent_zone_angles",
    "FlangeState", "apply_flange_correction", "flange_gap", "flange_state",
    "radial_slide_pulley", "radial_slide_strut",
    "PowerReport", "SweepSpec", "belt_power_share", "contact_slip_power",
    "global_equilibrium", "power_efficiency", "run_sweep",
    "ParsedConfig", "parse_config", "parse_config_dict", "serialize_config",
    "PushBeltError", "ConfigError", "GeometryError", "SolverError",
    "ConvergenceError", "CapacityExceededError", "CompressionLostError",
    "WedgeContactLostError", "ConeViolationError", "NoCrossingError",
    "InconsistentNeutralPointsError", "SingularConfigurationError",
    "UndefinedAngleError",
]
