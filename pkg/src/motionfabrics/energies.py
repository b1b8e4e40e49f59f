"""Lagrangian energies, behavior geometries and the energization transform.

Energies define priority metrics through the Euler-Lagrange equation; the
shipped families are hand-derived closed forms (no runtime symbolic engine).
For a Lagrangian ``L(x, v)`` the induced pieces are

    M = d2L/dv2          (metric)
    C = d2L/dvdx         (mixed second derivative, C[i, j] = d2L/dv_i dx_j)
    f = C v - dL/dx      (Euler-Lagrange force, so the system is M a + f = 0)
    H = (dL/dv) . v - L  (Hamiltonian / conserved energy)

A geometry is a second-order behavior ``xddot + h(x, v) = 0`` that is
positively homogeneous of degree 2 in the velocity, which makes its path
independent of the traversal speed.  Energization bends a geometry's
acceleration along the velocity direction so the chosen energy is conserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NumericDomainError
from .specs import Spec

Array = np.ndarray

#: below this kinetic threshold (v^T M v) energization falls back to alpha = 0
ENERGIZE_EPS = 1e-12


@dataclass(frozen=True)
class LagrangianEval:
    """All derivative pieces of a Lagrangian at one state."""

    value: float
    grad_x: Array
    grad_v: Array
    M: Array
    C: Array
    f: Array
    H: float


class Lagrangian:
    """Base class for closed-form energies."""

    dim: int
    finsler = True

    def eval(self, x: Array, v: Array) -> LagrangianEval:
        raise NotImplementedError


class Geometry:
    """Base class for degree-2 homogeneous behaviors ``xddot + h = 0``."""

    dim: int

    def h(self, x: Array, v: Array) -> Array:
        raise NotImplementedError

    def __call__(self, x: Array, v: Array) -> Array:
        return self.h(x, v)


class EuclideanEnergy(Lagrangian):
    """``L = 1/2 w ||v||^2`` with a constant weight; metric w I."""

    def __init__(self, dim: int, weight: float = 1.0):
        if weight <= 0:
            raise ValueError("weight must be positive")
        self.dim = dim
        self.weight = float(weight)
        self._M = weight * np.eye(dim)
        self._zero = np.zeros((dim, dim))

    def eval(self, x, v):
        w = self.weight
        k = 0.5 * w * float(v @ v)
        return LagrangianEval(value=k, grad_x=np.zeros(self.dim), grad_v=w * v,
                              M=self._M, C=self._zero, f=np.zeros(self.dim), H=k)


class GoalAttractorEnergy(Lagrangian):
    """Goal-relative energy with a metric that tightens near the origin.

    ``L = 1/2 w(r) ||v||^2`` with ``w(r) = m_far + (m_near - m_far)
    exp(-(width r)^2)`` and ``r = ||x||``; coordinates are relative to the
    goal, so the metric interpolates between ``m_near`` at the goal and
    ``m_far`` away from it.
    """

    def __init__(self, dim: int, m_near: float = 2.0, m_far: float = 0.2, width: float = 0.75):
        if m_near <= 0 or m_far <= 0:
            raise ValueError("metric bounds must be positive")
        self.dim = dim
        self.m_near = float(m_near)
        self.m_far = float(m_far)
        self.width = float(width)

    def _weight(self, x):
        r2 = float(x @ x)
        g = np.exp(-self.width**2 * r2)
        w = self.m_far + (self.m_near - self.m_far) * g
        # dw/dx stays smooth at the origin: w'(r)/r has a finite limit
        grad_w = -2.0 * self.width**2 * (self.m_near - self.m_far) * g * x
        return w, grad_w

    def eval(self, x, v):
        w, grad_w = self._weight(x)
        v2 = float(v @ v)
        value = 0.5 * w * v2
        grad_x = 0.5 * v2 * grad_w
        C = np.outer(v, grad_w)
        f = (grad_w @ v) * v - grad_x
        return LagrangianEval(value=value, grad_x=grad_x, grad_v=w * v,
                              M=w * np.eye(self.dim), C=C, f=f, H=value)


class CollisionEnergy(Lagrangian):
    """One-dimensional barrier energy ``L = lam * v^2 / x`` on x > 0.

    The metric ``2 lam / x`` blows up at contact, giving avoidance behaviors
    unbounded priority as the distance coordinate approaches zero.
    """

    dim = 1

    def __init__(self, lam: float = 0.7):
        if lam <= 0:
            raise ValueError("lam must be positive")
        self.lam = float(lam)

    def eval(self, x, v):
        xs, vs = float(x[0]), float(v[0])
        if xs <= 0.0:
            raise NumericDomainError("barrier energy evaluated at non-positive distance")
        lam = self.lam
        value = lam * vs * vs / xs
        grad_x = np.array([-lam * vs * vs / xs**2])
        grad_v = np.array([2.0 * lam * vs / xs])
        M = np.array([[2.0 * lam / xs]])
        C = np.array([[-2.0 * lam * vs / xs**2]])
        f = np.array([-lam * vs * vs / xs**2])
        return LagrangianEval(value=value, grad_x=grad_x, grad_v=grad_v,
                              M=M, C=C, f=f, H=value)


class ZeroGeometry(Geometry):
    """h = 0; free motion."""

    def __init__(self, dim: int):
        self.dim = dim

    def h(self, x, v):
        return np.zeros(self.dim)


class BarrierGeometry(Geometry):
    """Repulsive one-dimensional barrier ``h = v^2 * d/dx (k_b / x)``.

    Expanded: ``h = -k_b v^2 / x^2``, so the behavior ``xddot = -h`` pushes
    the distance coordinate away from contact, quadratically in speed.
    """

    dim = 1

    def __init__(self, k_b: float = 0.5):
        if k_b <= 0:
            raise ValueError("k_b must be positive")
        self.k_b = float(k_b)

    def h(self, x, v):
        xs = float(x[0])
        if xs <= 0.0:
            raise NumericDomainError("barrier geometry evaluated at non-positive distance")
        return np.array([-self.k_b * float(v[0]) ** 2 / xs**2])


class RepellerGeometry(Geometry):
    """Multi-dimensional repulsion from the origin: ``h = ||v||^2 grad(k/||x||)``."""

    def __init__(self, dim: int, gain: float = 1.0):
        self.dim = dim
        self.gain = float(gain)

    def h(self, x, v):
        r = float(np.linalg.norm(x))
        if r < 1e-12:
            raise NumericDomainError("repeller geometry evaluated at the origin")
        return -self.gain * float(v @ v) * x / r**3


def euler_lagrange(lag: Lagrangian, x: Array, v: Array) -> tuple[Array, Array, float]:
    """Return the induced spec pieces ``(M, f)`` and the Hamiltonian ``H``."""
    ev = lag.eval(np.asarray(x, dtype=float), np.asarray(v, dtype=float))
    return ev.M, ev.f, ev.H


def energize(lag: Lagrangian, geom: Geometry, x: Array, v: Array) -> tuple[Spec, float]:
    """Energize a geometry with an energy Lagrangian.

    Returns the spec of ``xddot + h + alpha v = 0`` with

        alpha = -(v^T M v)^{-1} v^T (M h - f),

    which conserves the energy's Hamiltonian along the solution.  The scalar
    form is used instead of building the rank-deficient projector explicitly.
    When ``v^T M v`` is degenerate (at rest) the unenergized spec
    ``(M, M h)`` is returned with ``alpha = 0``, which is continuous there
    because homogeneous geometries vanish at zero velocity.
    """
    if lag.dim != geom.dim:
        raise DimensionMismatchError("energy and geometry dimensions differ")
    ev = lag.eval(x, v)
    h = geom.h(x, v)
    Mv = ev.M @ v
    vMv = float(v @ Mv)
    if vMv <= ENERGIZE_EPS:
        return Spec(ev.M, ev.M @ h), 0.0
    alpha = -float(v @ (ev.M @ h - ev.f)) / vMv
    return Spec(ev.M, ev.M @ (h + alpha * v)), alpha
