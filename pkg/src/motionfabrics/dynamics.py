"""Operations in coordinates relative to a moving reference.

Behaviors that track or avoid something that moves are designed in the
relative coordinate system ``x_rel = x - ref(t)``.  This module provides the
transformation of a relative spec back into fixed coordinates (the dynamic
pullback), the energization variant that conserves the energy measured in
relative coordinates, and forcing potentials built so that their gradients
with respect to position and reference are exact opposites.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .energies import ENERGIZE_EPS, Geometry, Lagrangian
from .errors import DimensionMismatchError
from .maps import Jet
from .reference import ReferenceTrajectory
from .specs import Spec, pull

Array = np.ndarray

#: relative cutoff for singular values when pseudo-inverting task Jacobians
PINV_RCOND = 1e-8


@dataclass(frozen=True)
class RelativeState:
    """Position and velocity relative to a reference trajectory."""

    x_rel: Array
    x_rel_dot: Array


def relative_state(x: Array, xdot: Array, ref: ReferenceTrajectory, t: float) -> RelativeState:
    """Return ``(x - ref(t), xdot - refdot(t))``."""
    pos, vel, _ = ref.eval(t)
    if pos.shape != np.shape(x):
        raise DimensionMismatchError("reference dimension does not match state")
    return RelativeState(np.asarray(x, dtype=float) - pos, np.asarray(xdot, dtype=float) - vel)


def dynamic_pull(spec_rel: Spec, ref_accel: Array) -> Spec:
    """Map a spec from relative coordinates into fixed ones.

        (M, f)_rel  ->  (M, f - M refddot)_fixed

    since ``xddot_rel = xddot - refddot``.
    """
    ref_accel = np.asarray(ref_accel, dtype=float)
    if ref_accel.shape != (spec_rel.space_dim,):
        raise DimensionMismatchError("reference acceleration dimension mismatch")
    return Spec(spec_rel.M, spec_rel.f - spec_rel.M @ ref_accel)


def dynamic_energize(lag_rel: Lagrangian, geom: Geometry, x: Array, xdot: Array,
                     ref: ReferenceTrajectory, t: float) -> tuple[Spec, float]:
    """Energize a fixed-coordinate geometry so the relative energy is conserved.

    ``lag_rel`` is evaluated at the relative state; ``geom`` is the behavior
    ``xddot + h(x, xdot) = 0`` in fixed coordinates.  The returned spec solves
    to ``xddot = -h - alpha * x_rel_dot`` with

        alpha = -(vr^T M vr)^{-1} vr^T (M (h + refddot) - f),   vr = x_rel_dot,

    which keeps the Hamiltonian of ``lag_rel`` constant along the motion.
    At a degenerate relative velocity the unenergized spec is returned with
    ``alpha = 0``, mirroring the static energization fallback.
    """
    pos, vel, acc = ref.eval(t)
    x_rel = np.asarray(x, dtype=float) - pos
    v_rel = np.asarray(xdot, dtype=float) - vel
    ev = lag_rel.eval(x_rel, v_rel)
    h = geom.h(np.asarray(x, dtype=float), np.asarray(xdot, dtype=float))
    Mvr = ev.M @ v_rel
    vMv = float(v_rel @ Mvr)
    if vMv <= ENERGIZE_EPS:
        return Spec(ev.M, ev.M @ h), 0.0
    alpha = -float(v_rel @ (ev.M @ (h + acc) - ev.f)) / vMv
    return Spec(ev.M, ev.M @ (h + alpha * v_rel)), alpha


def pulled_dynamic_energize(lag_rel: Lagrangian, geom: Geometry, jet: Jet,
                            ref: ReferenceTrajectory, t: float) -> tuple[Spec, float]:
    """Dynamic energization followed by the standard pullback into Q.

    Energizing in the task space and pulling commutes with pulling first and
    energizing in configuration space, provided the reference velocity is
    pulled as ``qrefdot = pinv(J) refdot``; this routine computes the
    task-space side, which needs no pseudo-inverse.
    """
    spec_x, alpha = dynamic_energize(lag_rel, geom, jet.x, jet.xdot, ref, t)
    return pull(spec_x, jet), alpha


def pull_reference_velocity(jet: Jet, ref_vel: Array) -> Array:
    """Pull a task-space reference velocity into configuration space.

    Uses an SVD pseudo-inverse with singular values below
    ``1e-8 * sigma_max`` treated as zero, which regularizes the pull near
    kinematic singularities.
    """
    return np.linalg.pinv(jet.J, rcond=PINV_RCOND) @ np.asarray(ref_vel, dtype=float)


class RelativePotential:
    """Forcing potential of the form ``psi(x, ref) = psi_bar(x - ref)``.

    Built this way, ``d psi / dx = -d psi / d ref`` holds identically, which
    is the structural condition for damped convergence to the reference.
    Subclasses implement ``value`` and ``gradient`` in relative coordinates.
    """

    dim: int

    def value(self, theta: Array) -> float:
        raise NotImplementedError

    def gradient(self, theta: Array) -> Array:
        raise NotImplementedError


def dynamic_potential_gradient(psi_bar: RelativePotential, x: Array,
                               ref: ReferenceTrajectory, t: float) -> tuple[Array, float]:
    """Gradient (w.r.t. x) and value of a relative potential at time ``t``.

    By the chain rule the gradient with respect to the reference point is the
    exact negative of the returned gradient.
    """
    theta = np.asarray(x, dtype=float) - ref.eval(t)[0]
    return psi_bar.gradient(theta), psi_bar.value(theta)
