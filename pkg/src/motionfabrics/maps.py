"""Differential maps between configuration space and task spaces.

Every map carries closed-form derivatives.  Evaluating a map at a state
``(q, qdot, t)`` yields a :class:`Jet`: task position ``x``, task velocity
``xdot``, the Jacobian ``J`` and the curvature product ``Jdot_qdot``.  The
convention for second-order terms is

    xddot = J @ qddot + Jdot_qdot,

i.e. ``Jdot_qdot`` collects everything in the task acceleration that does not
depend on the configuration acceleration.  For time-parameterized maps
(distance to a moving center) this includes the motion of the reference, and
``xdot`` likewise subtracts the center velocity, so jets of such maps are
expressed in coordinates relative to the moving reference.

Maps are immutable after construction and safe to evaluate concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, MapSingularityError, NumericDomainError
from .reference import ReferenceTrajectory

Array = np.ndarray


@dataclass(frozen=True)
class Jet:
    """First-order evaluation of a differential map along a state."""

    x: Array
    xdot: Array
    J: Array
    Jdot_qdot: Array

    @property
    def m(self) -> int:
        return self.x.shape[0]

    @property
    def n(self) -> int:
        return self.J.shape[1]


class DifferentialMap:
    """Base class for smooth maps from configuration space to a task space."""

    n: int
    m: int
    time_parameterized = False

    def jet(self, q: Array, qdot: Array, t: float = 0.0, freeze_reference: bool = False) -> Jet:
        """Evaluate the map's jet at ``(q, qdot, t)``.

        ``freeze_reference`` evaluates any moving reference at its current
        position but with zero velocity and acceleration (pseudo-static
        treatment used by planners that ignore reference dynamics).
        """
        raise NotImplementedError


def eval_jet(dmap: DifferentialMap, q: Array, qdot: Array, t: float = 0.0) -> Jet:
    """Validated jet evaluation.

    Raises :class:`DimensionMismatchError` on shape mismatch and
    :class:`NumericDomainError` on non-finite input.  Library-internal hot
    paths call ``dmap.jet`` directly after validating once.
    """
    q = np.asarray(q, dtype=float)
    qdot = np.asarray(qdot, dtype=float)
    if q.shape != (dmap.n,) or qdot.shape != (dmap.n,):
        raise DimensionMismatchError(
            f"expected configuration of dimension {dmap.n}, got {q.shape} / {qdot.shape}"
        )
    if not (np.isfinite(q).all() and np.isfinite(qdot).all() and np.isfinite(t)):
        raise NumericDomainError("non-finite state passed to eval_jet")
    return dmap.jet(q, qdot, t)


class IdentityMap(DifferentialMap):
    """x = q; the task space is the configuration space itself."""

    def __init__(self, n: int):
        self.n = n
        self.m = n
        self._eye = np.eye(n)

    def jet(self, q, qdot, t=0.0, freeze_reference=False):
        return Jet(np.asarray(q, dtype=float), np.asarray(qdot, dtype=float),
                   self._eye, np.zeros(self.n))


class LinearMap(DifferentialMap):
    """x = A q for a constant matrix A; Jdot_qdot is identically zero."""

    def __init__(self, A: Array):
        A = np.asarray(A, dtype=float)
        if A.ndim != 2:
            raise DimensionMismatchError("LinearMap needs a 2-d matrix")
        self.A = A
        self.m, self.n = A.shape

    def jet(self, q, qdot, t=0.0, freeze_reference=False):
        return Jet(self.A @ q, self.A @ qdot, self.A, np.zeros(self.m))


class CoordinateBoundMap(DifferentialMap):
    """Scalar map ``x = sign * (q[i] - bound)``.

    With ``sign=+1`` the coordinate measures clearance above a lower bound,
    with ``sign=-1`` clearance below an upper bound (x = upper - q[i]).
    """

    def __init__(self, n: int, index: int, bound: float, sign: float):
        if not 0 <= index < n:
            raise DimensionMismatchError(f"coordinate index {index} out of range for n={n}")
        if sign not in (-1.0, 1.0):
            raise ValueError("sign must be +1 or -1")
        self.n = n
        self.m = 1
        self.index = index
        self.bound = float(bound)
        self.sign = float(sign)
        J = np.zeros((1, n))
        J[0, index] = sign
        self._J = J

    def jet(self, q, qdot, t=0.0, freeze_reference=False):
        x = np.array([self.sign * (q[self.index] - self.bound)])
        xd = np.array([self.sign * qdot[self.index]])
        return Jet(x, xd, self._J, np.zeros(1))


class DistanceMap(DifferentialMap):
    """Normalized distance between a task point and a (possibly moving) center.

        x = ||phi_parent(q) - c(t)|| / radius_sum - 1

    so that x > 0 outside contact and x = 0 exactly at contact.  For a moving
    center the map is time-parameterized: the jet's ``xdot`` subtracts the
    center velocity and ``Jdot_qdot`` carries the center acceleration, which
    makes the downstream pullback equivalent to a dynamic pullback composed
    with the standard one.
    """

    def __init__(self, parent: DifferentialMap, center, radius_sum: float):
        if radius_sum <= 0:
            raise ValueError("radius_sum must be positive")
        self.parent = parent
        self.n = parent.n
        self.m = 1
        self.radius_sum = float(radius_sum)
        if isinstance(center, ReferenceTrajectory):
            self.center = center
            self.time_parameterized = True
        else:
            self.center = np.asarray(center, dtype=float)
            self.time_parameterized = False
        cdim = self.center.dim if self.time_parameterized else self.center.shape[0]
        if cdim != parent.m:
            raise DimensionMismatchError("center dimension does not match parent map output")

    def _center_state(self, t: float, freeze: bool):
        if self.time_parameterized:
            c, cd, cdd = self.center.eval(t)
            if freeze:
                z = np.zeros_like(c)
                return c, z, z
            return c, cd, cdd
        z = np.zeros_like(self.center)
        return self.center, z, z

    def jet(self, q, qdot, t=0.0, freeze_reference=False):
        pj = self.parent.jet(q, qdot, t, freeze_reference)
        c, cdot, cddot = self._center_state(t, freeze_reference)
        delta = pj.x - c
        dist = float(np.linalg.norm(delta))
        if dist < 1e-12:
            raise MapSingularityError("distance map evaluated at its center")
        r = self.radius_sum
        rel_vel = pj.xdot - cdot
        radial = delta @ rel_vel
        x = np.array([dist / r - 1.0])
        xd = np.array([radial / (dist * r)])
        J = (delta @ pj.J)[None, :] / (dist * r)
        drift = (rel_vel @ rel_vel + delta @ (pj.Jdot_qdot - cddot)) / (dist * r) \
            - radial**2 / (dist**3 * r)
        return Jet(x, xd, J, np.array([drift]))


def distance_map(parent: DifferentialMap, center, radius_sum: float) -> DifferentialMap:
    """Build the one-dimensional distance task map (see :class:`DistanceMap`)."""
    return DistanceMap(parent, center, radius_sum)
