"""Monotone piecewise-linear material curves.

All three compliance relations of the model (strut compression vs force,
strut radial-height change vs axial load, flange axial displacement vs
axial load) are experimental curves.  They are exchanged as monotone
tables of (load, displacement) pairs, interpolated linearly and
extrapolated with the last segment's slope.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class Curve:
    """Non-decreasing piecewise-linear map with ``f(0) = 0``.

    Points must start at (0, 0) and be strictly increasing in x and
    non-decreasing in y.  Beyond the last point the curve continues with
    the final segment's slope (clamped-slope linear extrapolation).
    """

    x: np.ndarray
    y: np.ndarray
    name: str = field(default="curve", compare=False)

    @classmethod
    def from_table(cls, table, name: str = "curve") -> "Curve":
        arr = np.asarray(table, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
            raise ConfigError("expected a table of at least two (x, y) pairs", key=name)
        x, y = arr[:, 0].copy(), arr[:, 1].copy()
        if x[0] != 0.0 or y[0] != 0.0:
            raise ConfigError("curve must start at (0, 0)", key=name)
        if np.any(np.diff(x) <= 0.0):
            raise ConfigError("curve x values must be strictly increasing", key=name)
        if np.any(np.diff(y) < 0.0):
            raise ConfigError("curve has a decreasing segment", key=name)
        return cls(x=x, y=y, name=name)

    @classmethod
    def zero(cls, name: str = "zero") -> "Curve":
        """Identically-zero curve (rigid element)."""
        return cls(x=np.array([0.0, 1.0]), y=np.array([0.0, 0.0]), name=name)

    @classmethod
    def polynomial(cls, c1: float, c2: float, x_max: float, n: int = 64,
                   name: str = "curve") -> "Curve":
        """Tabulate ``y = c1*x + c2*x**2`` on [0, x_max]."""
        x = np.linspace(0.0, x_max, n)
        return cls(x=x, y=c1 * x + c2 * x * x, name=name)

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.y == 0.0))

    def __call__(self, load):
        """Evaluate the curve; scalar in, scalar out (arrays likewise)."""
        scalar = np.isscalar(load)
        v = np.asarray(load, dtype=float)
        out = np.interp(v, self.x, self.y)
        # linear continuation past the last tabulated point
        slope = (self.y[-1] - self.y[-2]) / (self.x[-1] - self.x[-2])
        beyond = v > self.x[-1]
        if np.any(beyond):
            out = np.where(beyond, self.y[-1] + slope * (v - self.x[-1]), out)
        return float(out) if scalar else out

    def inverse(self, target: float, hint: float = 1.0) -> float:
        """Smallest load with ``f(load) = target`` (secant + bisection).

        Only meaningful for strictly increasing curves; a zero curve with a
        positive target is a configuration error.
        """
        if target <= 0.0:
            return 0.0
        if self.is_zero:
            raise ConfigError("cannot invert an identically-zero curve", key=self.name)
        lo, hi = 0.0, max(self.x[-1], hint)
        while self(hi) < target:
            hi *= 2.0
            if hi > 1e18:
                raise ConfigError("curve never reaches the requested value", key=self.name)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self(mid) < target:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-14 * max(1.0, hi):
                break
        return 0.5 * (lo + hi)

    def scaled(self, factor: float) -> "Curve":
        """Same abscissae with ordinates scaled by ``factor``."""
        return Curve(x=self.x.copy(), y=self.y * factor, name=self.name)

    def to_table(self):
        return [[float(a), float(b)] for a, b in zip(self.x, self.y)]

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)
