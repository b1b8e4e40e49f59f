"""Behavior leaves: the building blocks a planner composes.

A leaf bundles a task map with the energy (metric generator), geometry
(avoidance behavior) and forcing potential (attraction) that act in that
task space.  Avoidance and limit leaves pair a degree-2 homogeneous barrier
geometry with a barrier energy whose metric blows up at contact; attractor
leaves carry a bounded-gradient potential and a goal-adaptive metric.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import RelativePotential
from .energies import BarrierGeometry, CollisionEnergy, Geometry, GoalAttractorEnergy, Lagrangian
from .errors import DimensionMismatchError
from .maps import CoordinateBoundMap, DifferentialMap, DistanceMap
from .reference import ConstantTrajectory, ReferenceTrajectory

Array = np.ndarray


@dataclass(frozen=True)
class AttractorParams:
    """Gains of the goal attractor.

    ``gain`` bounds the potential gradient; ``smoothing`` sets how quickly the
    smoothed norm saturates; the metric interpolates from ``metric_near`` at
    the goal to ``metric_far`` away from it over the ``metric_width`` scale.
    """

    gain: float = 5.0
    smoothing: float = 10.0
    metric_near: float = 2.0
    metric_far: float = 0.2
    metric_width: float = 0.75


@dataclass(frozen=True)
class BarrierParams:
    """Gains of a barrier leaf: geometry strength and energy weight."""

    k_b: float = 0.5
    lam: float = 0.7


@dataclass(frozen=True)
class Obstacle:
    """Spherical obstacle with a static or moving center."""

    center: object  # array-like position or ReferenceTrajectory
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("obstacle radius must be positive")
        if not isinstance(self.center, ReferenceTrajectory):
            object.__setattr__(self, "center", np.asarray(self.center, dtype=float))

    @property
    def moving(self) -> bool:
        return isinstance(self.center, ReferenceTrajectory)

    def center_at(self, t: float) -> Array:
        return self.center.position(t) if self.moving else self.center


class SmoothedNormPotential(RelativePotential):
    """Attractor potential ``psi(theta) = k (r + log(1 + exp(-2 a r)) / a)``.

    ``r = ||theta||``.  The gradient is ``k tanh(a r) theta / r``: exactly
    zero at the goal, norm-bounded by ``k`` far away, and smooth everywhere.
    """

    def __init__(self, dim: int, gain: float, smoothing: float):
        self.dim = dim
        self.gain = float(gain)
        self.smoothing = float(smoothing)

    def value(self, theta: Array) -> float:
        r = float(np.linalg.norm(theta))
        a = self.smoothing
        return self.gain * (r + np.log1p(np.exp(-2.0 * a * r)) / a)

    def gradient(self, theta: Array) -> Array:
        r = float(np.linalg.norm(theta))
        a = self.smoothing
        if r < 1e-12:
            return self.gain * a * np.asarray(theta, dtype=float)
        return self.gain * np.tanh(a * r) / r * np.asarray(theta, dtype=float)


@dataclass(frozen=True)
class Leaf:
    """One behavior component, ready for composition.

    ``reference`` is set for leaves whose task space is measured relative to
    a moving (or constant) target, i.e. attractors; distance leaves around
    moving obstacles keep their reference inside the task map, whose jets are
    already expressed relative to the moving center.
    """

    name: str
    role: str  # attractor | avoidance | limit
    map: DifferentialMap
    energy: Lagrangian
    geometry: Geometry | None = None
    potential: RelativePotential | None = None
    reference: ReferenceTrajectory | None = None

    def __post_init__(self):
        if self.role == "attractor":
            if self.potential is None or self.reference is None:
                raise ValueError("attractor leaves need a potential and a reference")
            if self.geometry is not None:
                raise ValueError("attractor leaves carry no geometry")
        elif self.role in ("avoidance", "limit"):
            if self.geometry is None:
                raise ValueError(f"{self.role} leaves need a geometry")
            if self.potential is not None:
                raise ValueError("only attractor leaves carry a potential")
        else:
            raise ValueError(f"unknown leaf role {self.role!r}")
        if self.energy.dim != self.map.m:
            raise DimensionMismatchError("leaf energy dimension does not match task map")

    @property
    def dynamic(self) -> bool:
        """True when the leaf's behavior depends on reference motion."""
        if self.map.time_parameterized:
            return True
        return self.reference is not None and not isinstance(self.reference, ConstantTrajectory)


def make_attractor(goal, task_map: DifferentialMap,
                   params: AttractorParams = AttractorParams(), name: str = "goal") -> Leaf:
    """Attraction toward a point or along a reference trajectory.

    ``goal`` may be a fixed point (wrapped into a constant reference) or a
    :class:`ReferenceTrajectory`; either way the potential and metric act on
    the goal-relative coordinate ``x - goal(t)``.
    """
    if task_map.m == 0:
        raise DimensionMismatchError("attractor task map must have positive dimension")
    ref = goal if isinstance(goal, ReferenceTrajectory) else ConstantTrajectory(goal)
    if ref.dim != task_map.m:
        raise DimensionMismatchError("goal dimension does not match task map output")
    m = task_map.m
    return Leaf(
        name=name,
        role="attractor",
        map=task_map,
        energy=GoalAttractorEnergy(m, params.metric_near, params.metric_far,
                                   params.metric_width),
        potential=SmoothedNormPotential(m, params.gain, params.smoothing),
        reference=ref,
    )


def make_collision_leaf(obstacle: Obstacle, body_map: DifferentialMap,
                        body_radius: float = 0.0,
                        params: BarrierParams = BarrierParams(),
                        name: str = "obstacle") -> Leaf:
    """Collision avoidance on the normalized distance between a body point
    and an obstacle.

    Moving obstacles yield a time-parameterized distance map; its jets are
    relative to the moving center, so processing the leaf amounts to dynamic
    energization followed by the dynamic and standard pullbacks.
    """
    if obstacle.radius + body_radius <= 0:
        raise ValueError("combined radius must be positive")
    dmap = DistanceMap(body_map, obstacle.center, obstacle.radius + body_radius)
    return Leaf(
        name=name,
        role="avoidance",
        map=dmap,
        energy=CollisionEnergy(params.lam),
        geometry=BarrierGeometry(params.k_b),
    )


def make_limit_leaf(n: int, joint: int, lower: float, upper: float,
                    params: BarrierParams = BarrierParams(k_b=0.2, lam=0.25),
                    name: str = "limit") -> tuple[Leaf, Leaf]:
    """Two barrier leaves keeping one joint inside ``(lower, upper)``."""
    if lower >= upper:
        raise ValueError("lower limit must be below upper limit")
    low = Leaf(
        name=f"{name}_{joint}_lower",
        role="limit",
        map=CoordinateBoundMap(n, joint, lower, +1.0),
        energy=CollisionEnergy(params.lam),
        geometry=BarrierGeometry(params.k_b),
    )
    high = Leaf(
        name=f"{name}_{joint}_upper",
        role="limit",
        map=CoordinateBoundMap(n, joint, upper, -1.0),
        energy=CollisionEnergy(params.lam),
        geometry=BarrierGeometry(params.k_b),
    )
    return low, high


def damping_term(beta: float, x: Array, xdot: Array,
                 ref: ReferenceTrajectory | None = None, t: float = 0.0) -> Array:
    """Damping force ``B (xdot - refdot)`` with ``B = beta I``.

    For static goals the reference velocity is zero and this reduces to plain
    viscous damping.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    v = np.asarray(xdot, dtype=float)
    if ref is not None:
        v = v - ref.eval(t)[1]
    return beta * v
