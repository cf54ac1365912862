"""Exception hierarchy for the push-belt simulator.

Every failure mode the solver can report is a distinct class so callers
(and the CLI exit-code mapping) can discriminate between bad input,
physically impossible operating points and plain non-convergence.
"""

from __future__ import annotations


class PushBeltError(Exception):
    """Base class for all simulator errors."""


class ConfigError(PushBeltError):
    """Invalid configuration file or inconsistent input data.

    ``key`` names the offending configuration entry when known.
    """

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)


class GeometryError(PushBeltError):
    """Geometrically impossible drive layout (no-solution, arc too short)."""


class SolverError(PushBeltError):
    """Base class for failures raised while solving an operating point."""


class ConvergenceError(SolverError):
    """An iterative loop failed to converge.

    ``phase`` tags which loop failed ('inner', 'axial', 'pretension',
    'flange'), ``history`` carries the recorded residual sequence.
    """

    def __init__(self, message: str, phase: str, history=None):
        self.phase = phase
        self.history = list(history) if history is not None else []
        super().__init__(f"[{phase}] {message}")


class CapacityExceededError(SolverError):
    """Even a fully sliding arc cannot transmit the demanded torque.

    Raised at gross slip: the clamping level is too low for the torque.
    """


class CompressionLostError(SolverError):
    """A strut compression X dropped to zero or below (model hypothesis:
    struts are always in compression)."""

    def __init__(self, message: str, arc: int | None = None, strut: int | None = None):
        self.arc = arc
        self.strut = strut
        super().__init__(message)


class WedgeContactLostError(SolverError):
    """The groove reaction on some strut would have to pull inward
    (belt tension level too low relative to strut compression)."""

    def __init__(self, message: str, arc: int | None = None, strut: int | None = None):
        self.arc = arc
        self.strut = strut
        super().__init__(message)


class ConeViolationError(SolverError):
    """An adherent contact requires more friction than the Coulomb cone allows."""


class NoCrossingError(SolverError):
    """No neutral-point placement satisfies the belt closure condition."""


class InconsistentNeutralPointsError(SolverError):
    """The two neutral struts disagree on the belt velocity after convergence."""


class SingularConfigurationError(PushBeltError):
    """The effective-friction denominator vanished (radial friction cancels
    the wedge reaction)."""


class DegenerateStrutError(PushBeltError):
    """A strut was compressed past its full thickness."""


class UndefinedAngleError(PushBeltError):
    """Sliding angle requested for a strut with no sliding motion."""
