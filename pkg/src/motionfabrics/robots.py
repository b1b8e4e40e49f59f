"""Kinematic models: 2-D point mass, planar n-link arm, differential drive."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError
from .maps import DifferentialMap, IdentityMap, Jet

Array = np.ndarray


def wrap_angle(theta: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    w = (theta + np.pi) % (2.0 * np.pi) - np.pi
    return np.pi if w == -np.pi else w


class PointRobot:
    """Point mass in the plane; the configuration is the position itself."""

    n = 2

    def __init__(self, body_radius: float = 0.0):
        self.body_radius = float(body_radius)

    def body_map(self) -> DifferentialMap:
        return IdentityMap(2)

    def body_maps(self) -> list[DifferentialMap]:
        return [self.body_map()]

    def ee_map(self) -> DifferentialMap:
        return self.body_map()


class ArmPointMap(DifferentialMap):
    """Position of a point at ``fraction`` along one link of a planar arm."""

    def __init__(self, link_lengths: Array, link: int, fraction: float):
        lengths = np.asarray(link_lengths, dtype=float)
        if not 0 <= link < lengths.shape[0]:
            raise DimensionMismatchError(f"link index {link} out of range")
        if not 0.0 <= fraction <= 1.0:
            raise ValueError("fraction must lie in [0, 1]")
        self.n = lengths.shape[0]
        self.m = 2
        self.link = link
        self.fraction = float(fraction)
        eff = lengths[: link + 1].copy()
        eff[link] *= fraction
        self._eff = eff

    def jet(self, q, qdot, t=0.0, freeze_reference=False):
        k = self.link + 1
        th = np.cumsum(q[:k])
        thd = np.cumsum(qdot[:k])
        c, s = np.cos(th), np.sin(th)
        lc, ls = self._eff * c, self._eff * s
        x = np.array([lc.sum(), ls.sum()])
        xdot = np.array([-(ls * thd).sum(), (lc * thd).sum()])
        J = np.zeros((2, self.n))
        # column j sums contributions of segments j..k (suffix sums)
        J[0, :k] = -np.cumsum(ls[::-1])[::-1]
        J[1, :k] = np.cumsum(lc[::-1])[::-1]
        thd2 = thd * thd
        jdq = np.array([-(lc * thd2).sum(), -(ls * thd2).sum()])
        return Jet(x, xdot, J, jdq)


class PlanarArm:
    """Planar kinematic chain with revolute joints, base fixed at the origin."""

    def __init__(self, link_lengths, joint_limits: tuple[Array, Array] | None = None):
        lengths = np.asarray(link_lengths, dtype=float)
        if lengths.ndim != 1 or lengths.shape[0] == 0:
            raise DimensionMismatchError("link_lengths must be a non-empty vector")
        if (lengths <= 0).any():
            raise ValueError("link lengths must be positive")
        self.link_lengths = lengths
        self.n = lengths.shape[0]
        if joint_limits is None:
            bound = 2.0 * np.pi
            joint_limits = (-bound * np.ones(self.n), bound * np.ones(self.n))
        lower, upper = (np.asarray(b, dtype=float) for b in joint_limits)
        if lower.shape != (self.n,) or upper.shape != (self.n,):
            raise DimensionMismatchError("joint limit shape mismatch")
        self.joint_limits = (lower, upper)

    def fk_map(self, link: int, fraction: float = 1.0) -> ArmPointMap:
        """Map from joint angles to the point at ``fraction`` along ``link``."""
        return ArmPointMap(self.link_lengths, link, fraction)

    def ee_map(self) -> ArmPointMap:
        return self.fk_map(self.n - 1, 1.0)

    def body_maps(self, fractions=(0.5, 1.0)) -> list[ArmPointMap]:
        """Collision points: by default midpoint and endpoint of every link."""
        return [self.fk_map(link, frac) for link in range(self.n) for frac in fractions]


class NonholonomicConstraint:
    """Velocity constraint ``xdot = J_nh(pose) qdot`` with k actuated dims."""

    m: int
    k: int

    def eval(self, pose: Array, qdot: Array) -> tuple[Array, Array]:
        """Return ``(J_nh, Jdot_nh qdot)`` at the given pose and actuation."""
        raise NotImplementedError


class DiffDriveConstraint(NonholonomicConstraint):
    """Differential drive: planar pose driven by forward speed and yaw rate.

    With ``qdot = (v, omega)`` the pose rate is
    ``(v cos(theta), v sin(theta), omega)``.  When wheel geometry is given,
    ``qdot`` is interpreted as wheel speeds ``(u_left, u_right)`` and the
    columns are scaled accordingly.
    """

    m = 3
    k = 2

    def __init__(self, wheel_radius: float | None = None, track: float | None = None):
        if (wheel_radius is None) != (track is None):
            raise ValueError("wheel_radius and track must be given together")
        if wheel_radius is None:
            self._T = None
        else:
            r, w = float(wheel_radius), float(track)
            if r <= 0 or w <= 0:
                raise ValueError("wheel geometry must be positive")
            self._T = np.array([[r / 2.0, r / 2.0], [-r / w, r / w]])

    def eval(self, pose, qdot):
        theta = pose[2]
        vw = qdot if self._T is None else self._T @ qdot
        v, omega = float(vw[0]), float(vw[1])
        c, s = np.cos(theta), np.sin(theta)
        J = np.array([[c, 0.0], [s, 0.0], [0.0, 1.0]])
        if self._T is not None:
            J = J @ self._T
        jdq = np.array([-v * omega * s, v * omega * c, 0.0])
        return J, jdq


class DiffDrive:
    """Differential-drive base; fabric root lives on the pose space (x, y, theta)."""

    n = 3

    def __init__(self, body_radius: float = 0.0,
                 wheel_radius: float | None = None, track: float | None = None):
        self.body_radius = float(body_radius)
        self._constraint = DiffDriveConstraint(wheel_radius, track)

    def constraint(self) -> DiffDriveConstraint:
        return self._constraint


def diffdrive_constraint(wheel_radius: float | None = None,
                         track: float | None = None) -> DiffDriveConstraint:
    """Constraint Jacobian of a differential drive (see :class:`DiffDriveConstraint`)."""
    return DiffDriveConstraint(wheel_radius, track)
