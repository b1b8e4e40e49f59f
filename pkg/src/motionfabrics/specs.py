"""Second-order task-space systems and the operations that compose them.

A :class:`Spec` is the pair ``(M, f)`` describing the system
``M xddot + f = 0`` on some task space.  Specs are combined by summation,
moved between spaces by the pullback through a differential map, shaped by a
forcing potential, and finally solved for the acceleration.

All matrices are dense; every space in this library has dimension <= 16, so
dense factorizations dominate sparse bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NumericDomainError, SolveError
from .maps import Jet

Array = np.ndarray

#: residual acceptance for solve(): ||M a + f||_inf < RTOL * (1 + ||f||_inf)
SOLVE_RTOL = 1e-9


@dataclass(frozen=True)
class Spec:
    """The system ``M xddot + f = 0`` with metric M and force f."""

    M: Array
    f: Array

    def __post_init__(self):
        if self.M.shape != (self.f.shape[0], self.f.shape[0]):
            raise DimensionMismatchError(
                f"metric shape {self.M.shape} does not match force length {self.f.shape}"
            )

    @property
    def space_dim(self) -> int:
        return self.f.shape[0]

    def validate(self, sym_tol: float = 1e-10) -> "Spec":
        """Check symmetry and finiteness; returns self for chaining."""
        if not (np.isfinite(self.M).all() and np.isfinite(self.f).all()):
            raise NumericDomainError("spec contains non-finite entries")
        if np.abs(self.M - self.M.T).max() > sym_tol:
            raise NumericDomainError("spec metric is not symmetric")
        return self

    def __add__(self, other: "Spec") -> "Spec":
        return add(self, other)


def zero_spec(dim: int) -> Spec:
    return Spec(np.zeros((dim, dim)), np.zeros(dim))


def add(a: Spec, b: Spec) -> Spec:
    """Summation: ``(M1 + M2, f1 + f2)`` on a shared space."""
    if a.space_dim != b.space_dim:
        raise DimensionMismatchError(
            f"cannot sum specs of dimension {a.space_dim} and {b.space_dim}"
        )
    return Spec(a.M + b.M, a.f + b.f)


def pull(spec: Spec, jet: Jet) -> Spec:
    """Pullback of a task-space spec into configuration space.

        pull(M, f) = (J^T M J,  J^T (f + M Jdot_qdot))

    ``jet`` must be the evaluation of the map at the state where the spec's
    ``(M, f)`` were computed.
    """
    if spec.space_dim != jet.m:
        raise DimensionMismatchError(
            f"spec dimension {spec.space_dim} does not match map output {jet.m}"
        )
    J = jet.J
    MJ = spec.M @ J
    return Spec(J.T @ MJ, J.T @ (spec.f + spec.M @ jet.Jdot_qdot))


def force(spec: Spec, grad_psi: Array) -> Spec:
    """Forced variant: add a potential gradient to the force term."""
    grad_psi = np.asarray(grad_psi, dtype=float)
    if grad_psi.shape != (spec.space_dim,):
        raise DimensionMismatchError("potential gradient dimension mismatch")
    if not np.isfinite(grad_psi).all():
        raise NumericDomainError("non-finite potential gradient")
    return Spec(spec.M, spec.f + grad_psi)


def solve(spec: Spec) -> Array:
    """Solve ``M xddot + f = 0`` for the acceleration.

    Uses a pivoted dense factorization and verifies the residual
    ``||M a + f||_inf < 1e-9 (1 + ||f||_inf)``; raises :class:`SolveError`
    with a condition estimate when the metric is singular or too
    ill-conditioned for that residual to hold.
    """
    M, f = spec.M, spec.f
    try:
        a = np.linalg.solve(M, -f)
    except np.linalg.LinAlgError as exc:
        raise SolveError(f"singular metric: {exc}", condition=float(np.linalg.cond(M))) from exc
    resid = np.abs(M @ a + f).max() if f.size else 0.0
    bound = SOLVE_RTOL * (1.0 + np.abs(f).max(initial=0.0))
    if not np.isfinite(a).all() or resid >= bound:
        raise SolveError(
            f"ill-conditioned metric (residual {resid:.3e} > {bound:.3e})",
            condition=float(np.linalg.cond(M)),
        )
    return a
