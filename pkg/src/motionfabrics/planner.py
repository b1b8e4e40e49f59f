"""Composition of behavior leaves into a configuration-space motion policy.

Per step, every leaf is processed as: evaluate its task-map jet, energize its
geometry with its energy (in reference-relative coordinates when the leaf is
dynamic), pull the result back into configuration space, and sum into the
root system.  The root is then forced by the attractor potentials, damped on
the reference-relative velocity, and solved for the acceleration.

For non-holonomic robots the root fabric lives on the pose space; the
constrained acceleration is the least-squares minimizer of the root equation
projected through the constraint Jacobian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import PINV_RCOND
from .energies import ENERGIZE_EPS
from .errors import DimensionMismatchError, NumericDomainError, SolveError
from .leaves import Leaf
from .maps import IdentityMap
from .reference import ConstantTrajectory
from .robots import NonholonomicConstraint

Array = np.ndarray

#: residual acceptance for the composed solve
ACTION_RTOL = 1e-8
#: Tikhonov weight for the single regularized retry on a singular root metric
REGULARIZE_EPS = 1e-9


@dataclass
class StepInfo:
    """Diagnostics of the most recent compute_action call."""

    collided_leaves: tuple[str, ...] = ()
    degenerate_leaves: tuple[str, ...] = ()
    regularized: bool = False
    residual: float = 0.0

    @property
    def collided(self) -> bool:
        return bool(self.collided_leaves)


class FabricPlanner:
    """Root fabric over an n-dimensional configuration (or pose) space.

    ``mode`` selects how reference motion is treated: ``"dynamic"`` uses the
    velocity and acceleration of moving goals and obstacles, ``"static"``
    freezes them at their current position each step (pseudo-static
    treatment).  The base inertia contributes ``base_metric`` with zero
    force, so the planner is well-posed even far from every behavior.
    """

    def __init__(self, n: int, mode: str = "dynamic", damping_beta: float = 2.5,
                 base_metric: Array | None = None,
                 constraint: NonholonomicConstraint | None = None):
        if mode not in ("static", "dynamic"):
            raise ValueError("mode must be 'static' or 'dynamic'")
        if damping_beta <= 0:
            raise ValueError("damping_beta must be positive")
        self.n = int(n)
        self.mode = mode
        self.beta = float(damping_beta)
        if base_metric is None:
            base_metric = np.eye(self.n)
        else:
            base_metric = np.asarray(base_metric, dtype=float)
            if base_metric.shape != (self.n, self.n):
                raise DimensionMismatchError("base metric shape mismatch")
        self._base_M = base_metric
        self.constraint = constraint
        if constraint is not None and constraint.m != self.n:
            raise DimensionMismatchError("constraint root dimension does not match planner")
        self._leaves: list[Leaf] = []
        self._n_attractors = 0
        self.last_info = StepInfo()

    @property
    def leaves(self) -> tuple[Leaf, ...]:
        return tuple(self._leaves)

    def add_leaf(self, leaf: Leaf) -> "FabricPlanner":
        if leaf.map.n != self.n:
            raise DimensionMismatchError(
                f"leaf '{leaf.name}' expects configuration dimension {leaf.map.n}, "
                f"planner has {self.n}"
            )
        self._leaves.append(leaf)
        if leaf.role == "attractor":
            self._n_attractors += 1
        return self

    def add_leaves(self, leaves) -> "FabricPlanner":
        for leaf in leaves:
            self.add_leaf(leaf)
        return self

    # -- composition ------------------------------------------------------

    def _assemble(self, q: Array, qdot: Array, t: float, info: StepInfo):
        """Sum all pulled leaf contributions plus forcing and damping."""
        freeze = self.mode == "static"
        M = self._base_M.copy()
        f = np.zeros(self.n)
        collided: list[str] = []
        degenerate: list[str] = []
        qdot_rel = qdot

        for leaf in self._leaves:
            jet = leaf.map.jet(q, qdot, t, freeze_reference=freeze)
            J = jet.J
            if leaf.role == "attractor":
                ref = leaf.reference
                xt, xtd, xtdd = ref.eval(t)
                if freeze:
                    xtd = np.zeros_like(xt)
                    xtdd = np.zeros_like(xt)
                x_rel = jet.x - xt
                v_rel = jet.xdot - xtd
                ev = leaf.energy.eval(x_rel, v_rel)
                # Euler-Lagrange spec in relative coordinates, dynamically
                # pulled into fixed task coordinates, then pulled to Q.
                leaf_force = ev.f - ev.M @ xtdd
                M += J.T @ (ev.M @ J)
                f += J.T @ (leaf_force + ev.M @ jet.Jdot_qdot)
                f += J.T @ leaf.potential.gradient(x_rel)
                if xtd.any():
                    # damping acts on the pulled relative velocity
                    if isinstance(leaf.map, IdentityMap):
                        qdot_rel = qdot - xtd
                    else:
                        qdot_rel = qdot - np.linalg.pinv(J, rcond=PINV_RCOND) @ xtd
            else:
                # jets of time-parameterized maps are already relative, so the
                # static energization formula realizes dynamic energization and
                # the drift-carrying pullback realizes dynamic + standard pull.
                try:
                    ev = leaf.energy.eval(jet.x, jet.xdot)
                    h = leaf.geometry.h(jet.x, jet.xdot)
                except NumericDomainError:
                    collided.append(leaf.name)
                    continue
                v = jet.xdot
                vMv = float(v @ (ev.M @ v))
                if vMv <= ENERGIZE_EPS:
                    leaf_force = ev.M @ h
                    degenerate.append(leaf.name)
                else:
                    alpha = -float(v @ (ev.M @ h - ev.f)) / vMv
                    leaf_force = ev.M @ (h + alpha * v)
                M += J.T @ (ev.M @ J)
                f += J.T @ (leaf_force + ev.M @ jet.Jdot_qdot)

        f += self.beta * qdot_rel
        info.collided_leaves = tuple(collided)
        info.degenerate_leaves = tuple(degenerate)
        return M, f

    def _solve_root(self, M: Array, f: Array, info: StepInfo) -> Array:
        try:
            a = np.linalg.solve(M, -f)
            resid = np.abs(M @ a + f).max()
        except np.linalg.LinAlgError:
            a, resid = None, np.inf
        bound = ACTION_RTOL * (1.0 + np.abs(f).max(initial=0.0))
        if a is None or not np.isfinite(a).all() or resid >= bound:
            Mr = M + REGULARIZE_EPS * np.eye(self.n)
            try:
                a = np.linalg.solve(Mr, -f)
            except np.linalg.LinAlgError as exc:
                raise SolveError("singular root metric",
                                 condition=float(np.linalg.cond(M))) from exc
            info.regularized = True
            resid = np.abs(Mr @ a + f).max()
            if not np.isfinite(a).all() or resid >= bound:
                raise SolveError(
                    f"root solve residual {resid:.3e} exceeds bound {bound:.3e}",
                    condition=float(np.linalg.cond(M)),
                )
        info.residual = float(resid)
        return a

    def _check_state(self, q: Array, qdot: Array):
        if self._n_attractors == 0:
            raise ValueError("planner needs at least one attractor leaf")
        if q.shape != (self.n,) or qdot.shape != (self.n,):
            raise DimensionMismatchError(
                f"state dimension mismatch: expected {self.n}, got {q.shape}/{qdot.shape}"
            )
        if not (np.isfinite(q).all() and np.isfinite(qdot).all()):
            raise NumericDomainError("non-finite planner state")

    def compute_action(self, q: Array, qdot: Array, t: float = 0.0) -> Array:
        """Configuration-space acceleration of the composed fabric."""
        q = np.asarray(q, dtype=float)
        qdot = np.asarray(qdot, dtype=float)
        self._check_state(q, qdot)
        info = StepInfo()
        M, f = self._assemble(q, qdot, t, info)
        a = self._solve_root(M, f, info)
        self.last_info = info
        return a

    def compute_nonholonomic_action(self, pose: Array, qdot: Array, t: float = 0.0) -> Array:
        """Actuation-space acceleration for a constrained (e.g. wheeled) robot.

        The root fabric ``(M, f)`` is assembled on the pose space from the
        pose velocity ``J_nh qdot``; the returned acceleration minimizes
        ``|| M J_nh qddot + (M Jdot_nh qdot + f) ||_2``, solved through the
        pseudo-inverse.  The attained residual is stored in ``last_info``;
        it is zero whenever the constraint Jacobian spans the pose space.
        """
        if self.constraint is None:
            raise ValueError("planner was built without a non-holonomic constraint")
        pose = np.asarray(pose, dtype=float)
        qdot = np.asarray(qdot, dtype=float)
        if qdot.shape != (self.constraint.k,):
            raise DimensionMismatchError("actuation velocity dimension mismatch")
        J_nh, jdq = self.constraint.eval(pose, qdot)
        xdot = J_nh @ qdot
        self._check_state(pose, xdot)
        info = StepInfo()
        M, f = self._assemble(pose, xdot, t, info)
        M_nh = M @ J_nh
        f_nh = M @ jdq + f
        if not M_nh.any():
            raise SolveError("constraint-projected metric is zero")
        a = -np.linalg.pinv(M_nh, rcond=PINV_RCOND) @ f_nh
        info.residual = float(np.linalg.norm(M_nh @ a + f_nh))
        self.last_info = info
        return a
