"""Time-parameterized reference trajectories.

A reference trajectory is a smooth curve ``t -> (x, xdot, xddot)`` used to
describe moving goals, guidance paths and moving obstacle centers.  All
implementations are immutable, deterministic and safe to evaluate
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError

Array = np.ndarray


class ReferenceTrajectory:
    """Base class: a curve with analytic first and second derivatives."""

    kind = "analytic"
    dim: int

    def eval(self, t: float) -> tuple[Array, Array, Array]:
        """Return ``(position, velocity, acceleration)`` at time ``t``."""
        raise NotImplementedError

    def position(self, t: float) -> Array:
        return self.eval(t)[0]


@dataclass(frozen=True)
class ConstantTrajectory(ReferenceTrajectory):
    """A fixed point; velocity and acceleration are identically zero."""

    point: Array
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))

    @property
    def dim(self) -> int:
        return self.point.shape[0]

    def eval(self, t: float) -> tuple[Array, Array, Array]:
        z = np.zeros_like(self.point)
        return self.point, z, z


@dataclass(frozen=True)
class LineTrajectory(ReferenceTrajectory):
    """Straight line ``start + velocity * t``."""

    start: Array
    velocity: Array

    def __post_init__(self):
        object.__setattr__(self, "start", np.asarray(self.start, dtype=float))
        object.__setattr__(self, "velocity", np.asarray(self.velocity, dtype=float))
        if self.start.shape != self.velocity.shape:
            raise DimensionMismatchError("line start and velocity dimensions differ")

    @property
    def dim(self) -> int:
        return self.start.shape[0]

    def eval(self, t: float) -> tuple[Array, Array, Array]:
        return self.start + self.velocity * t, self.velocity.copy(), np.zeros_like(self.start)


@dataclass(frozen=True)
class CircleTrajectory(ReferenceTrajectory):
    """Planar circle ``center + radius * [cos(w t + phase), sin(w t + phase)]``."""

    center: Array
    radius: float
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if self.center.shape != (2,):
            raise DimensionMismatchError("circle trajectories are planar")

    @property
    def dim(self) -> int:
        return 2

    def eval(self, t: float) -> tuple[Array, Array, Array]:
        a = self.omega * t + self.phase
        c, s = np.cos(a), np.sin(a)
        pos = self.center + self.radius * np.array([c, s])
        vel = self.radius * self.omega * np.array([-s, c])
        acc = -self.radius * self.omega**2 * np.array([c, s])
        return pos, vel, acc


@dataclass(frozen=True)
class SinusoidTrajectory(ReferenceTrajectory):
    """Oscillation along a fixed direction: ``center + amplitude * cos(w t + phase)``."""

    center: Array
    amplitude: Array
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "amplitude", np.asarray(self.amplitude, dtype=float))
        if self.center.shape != self.amplitude.shape:
            raise DimensionMismatchError("sinusoid center and amplitude dimensions differ")

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def eval(self, t: float) -> tuple[Array, Array, Array]:
        a = self.omega * t + self.phase
        pos = self.center + self.amplitude * np.cos(a)
        vel = -self.amplitude * self.omega * np.sin(a)
        acc = -self.amplitude * self.omega**2 * np.cos(a)
        return pos, vel, acc


@dataclass(frozen=True)
class SplineTrajectory(ReferenceTrajectory):
    """Quadratic Bezier curve over three control points.

    The curve is traversed over ``duration`` seconds; past the end it clamps
    to the last control point with zero velocity and acceleration, so the
    terminal phase behaves like a static goal.
    """

    control_points: Array
    duration: float
    kind = "spline"
    _d2: Array = field(init=False, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.control_points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] != 3:
            raise DimensionMismatchError("spline needs exactly three control points")
        if self.duration <= 0:
            raise ValueError("spline duration must be positive")
        object.__setattr__(self, "control_points", pts)
        object.__setattr__(self, "_d2", 2.0 * (pts[0] - 2.0 * pts[1] + pts[2]))

    @property
    def dim(self) -> int:
        return self.control_points.shape[1]

    def eval(self, t: float) -> tuple[Array, Array, Array]:
        p0, p1, p2 = self.control_points
        if t >= self.duration:
            z = np.zeros(self.dim)
            return p2.copy(), z, z
        s = max(t, 0.0) / self.duration
        u = 1.0 - s
        pos = u * u * p0 + 2.0 * s * u * p1 + s * s * p2
        dpos = 2.0 * u * (p1 - p0) + 2.0 * s * (p2 - p1)
        return pos, dpos / self.duration, self._d2 / self.duration**2
