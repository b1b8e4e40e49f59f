"""Composable second-order motion generation for dynamic scenes.

Behaviors (goal attraction, collision avoidance, joint limits) are designed
as second-order systems on task spaces, combined through differential-map
pullbacks, generalized to moving references, and solved for configuration-
space accelerations; a scenario runner benchmarks the resulting policies.
"""

from .dynamics import (RelativePotential, RelativeState, dynamic_energize,
                       dynamic_potential_gradient, dynamic_pull,
                       pull_reference_velocity, pulled_dynamic_energize,
                       relative_state)
from .energies import (BarrierGeometry, CollisionEnergy, EuclideanEnergy, Geometry,
                       GoalAttractorEnergy, Lagrangian, RepellerGeometry,
                       ZeroGeometry, energize, euler_lagrange)
from .errors import (ConfigValidationError, DimensionMismatchError, FabricError,
                     MapSingularityError, NumericDomainError, SolveError)
from .leaves import (AttractorParams, BarrierParams, Leaf, Obstacle,
                     SmoothedNormPotential, damping_term, make_attractor,
                     make_collision_leaf, make_limit_leaf)
from .maps import (CoordinateBoundMap, DifferentialMap, DistanceMap, IdentityMap,
                   Jet, LinearMap, distance_map, eval_jet)
from .planner import FabricPlanner, StepInfo
from .reference import (CircleTrajectory, ConstantTrajectory, LineTrajectory,
                        ReferenceTrajectory, SinusoidTrajectory, SplineTrajectory)
from .robots import (DiffDrive, DiffDriveConstraint, NonholonomicConstraint,
                     PlanarArm, PointRobot, diffdrive_constraint, wrap_angle)
from .simulate import (BatchResult, Metrics, RunRecord, RunResult, Scenario,
                       compute_metrics, rk4_step, run_scenario)
from .specs import Spec, add, force, pull, solve, zero_spec

__version__ = "0.1.0"

__all__ = [
    "AttractorParams", "BarrierGeometry", "BarrierParams", "BatchResult",
    "CircleTrajectory", "CollisionEnergy", "ConfigValidationError",
    "ConstantTrajectory", "CoordinateBoundMap", "DiffDrive", "DiffDriveConstraint",
    "DifferentialMap", "DimensionMismatchError", "DistanceMap", "EuclideanEnergy",
    "FabricError", "FabricPlanner", "Geometry", "GoalAttractorEnergy", "IdentityMap",
    "Jet", "Lagrangian", "Leaf", "LineTrajectory", "LinearMap", "MapSingularityError",
    "Metrics", "NonholonomicConstraint", "NumericDomainError", "Obstacle",
    "PlanarArm", "PointRobot", "ReferenceTrajectory", "RelativePotential",
    "RelativeState", "RepellerGeometry", "RunRecord", "RunResult", "Scenario",
    "SinusoidTrajectory", "SmoothedNormPotential", "SolveError", "Spec",
    "SplineTrajectory", "StepInfo", "ZeroGeometry", "add", "compute_metrics",
    "damping_term", "diffdrive_constraint", "distance_map", "dynamic_energize",
    "dynamic_potential_gradient", "dynamic_pull", "energize", "euler_lagrange",
    "eval_jet", "force", "make_attractor", "make_collision_leaf", "make_limit_leaf",
    "pull", "pull_reference_velocity", "pulled_dynamic_energize", "relative_state",
    "rk4_step", "run_scenario", "solve", "wrap_angle", "zero_spec",
]
