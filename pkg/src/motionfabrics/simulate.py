"""Closed-loop integration of scenarios and metric computation.

A :class:`Scenario` declares a robot, a goal (point or reference trajectory),
obstacles, integration settings and one or more initial states.  Running it
integrates the composed fabric with fixed-step classical Runge-Kutta and
produces one :class:`RunRecord` and one :class:`Metrics` per initial state.
Runs are deterministic: identical scenarios produce identical records.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigValidationError, FabricError, NumericDomainError
from .leaves import (AttractorParams, BarrierParams, Obstacle, make_attractor,
                     make_collision_leaf, make_limit_leaf)
from .maps import LinearMap
from .planner import FabricPlanner
from .reference import ConstantTrajectory, ReferenceTrajectory
from .robots import DiffDrive, PlanarArm, PointRobot, wrap_angle

Array = np.ndarray

#: velocity norm below which the robot counts as (momentarily) stationary
DEADLOCK_SPEED = 1e-3
#: how long the robot must stay stationary to be declared deadlocked
DEADLOCK_WINDOW = 1.0
#: velocity criterion for goal attainment
GOAL_SPEED = 0.1


@dataclass
class Scenario:
    """Declarative description of one experiment."""

    robot: object
    goal: object  # point array or ReferenceTrajectory
    initial_states: list[tuple[Array, Array]]
    obstacles: list[Obstacle] = field(default_factory=list)
    mode: str = "dynamic"
    dt: float = 0.01
    T: float = 15.0
    epsilon_goal: float = 0.1
    beta: float = 2.5
    attractor_params: AttractorParams = field(default_factory=AttractorParams)
    collision_params: BarrierParams = field(default_factory=BarrierParams)
    limit_params: BarrierParams = field(default_factory=lambda: BarrierParams(k_b=0.2, lam=0.25))
    limits: tuple[Array, Array] | None = None
    seed: int | None = None
    name: str = "scenario"
    description: str = ""

    def __post_init__(self):
        bad = []
        if self.dt <= 0:
            bad.append("integration.dt")
        if self.T < self.dt:
            bad.append("integration.T")
        if self.epsilon_goal <= 0:
            bad.append("success.epsilon_goal")
        if not self.initial_states:
            bad.append("initial.states")
        if self.mode not in ("static", "dynamic"):
            bad.append("planner.mode")
        if bad:
            raise ConfigValidationError(f"invalid scenario fields: {', '.join(bad)}", bad)
        self.initial_states = [
            (np.asarray(q, dtype=float), np.asarray(qd, dtype=float))
            for q, qd in self.initial_states
        ]

    @property
    def goal_reference(self) -> ReferenceTrajectory:
        if isinstance(self.goal, ReferenceTrajectory):
            return self.goal
        return ConstantTrajectory(self.goal)

    @property
    def tracking_task(self) -> bool:
        """True when the goal genuinely moves (trajectory-following task)."""
        return isinstance(self.goal, ReferenceTrajectory) and \
            not isinstance(self.goal, ConstantTrajectory)


@dataclass
class RunRecord:
    """Per-step trajectory data plus terminal flags for one run."""

    t: Array
    q: Array
    qdot: Array
    x_task: Array
    min_dist: Array
    solver_time: Array
    goal_reached: bool = False
    collided: bool = False
    deadlocked: bool = False
    numeric_failure: bool = False
    time_to_goal: float | None = None

    @property
    def steps(self) -> int:
        return self.t.shape[0]


@dataclass
class Metrics:
    clearance: float
    path_length: float
    time_to_goal: float | None
    summed_error: float | None
    solver_time: float
    success: bool


@dataclass
class RunResult:
    record: RunRecord
    metrics: Metrics


@dataclass
class BatchResult:
    """Results for every initial state of a scenario."""

    runs: list[RunResult]

    @property
    def records(self) -> list[RunRecord]:
        return [r.record for r in self.runs]

    @property
    def metrics(self) -> list[Metrics]:
        return [r.metrics for r in self.runs]

    @property
    def success_rate(self) -> float:
        return sum(r.metrics.success for r in self.runs) / len(self.runs)

    @property
    def collisions(self) -> int:
        return sum(r.record.collided for r in self.runs)

    @property
    def deadlocks(self) -> int:
        return sum(r.record.deadlocked for r in self.runs)


def rk4_step(dynamics, state: Array, t: float, dt: float) -> Array:
    """Classical fourth-order Runge-Kutta update."""
    k1 = dynamics(state, t)
    k2 = dynamics(state + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = dynamics(state + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = dynamics(state + dt * k3, t + dt)
    out = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.isfinite(out).all():
        raise NumericDomainError("non-finite state after integration step")
    return out


def build_planner(scenario: Scenario) -> FabricPlanner:
    """Assemble the fabric planner declared by a scenario."""
    robot = scenario.robot
    if isinstance(robot, DiffDrive):
        n = 3
        goal_map = LinearMap(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
        body_maps = [goal_map]
        constraint = robot.constraint()
        limits = None
    elif isinstance(robot, PlanarArm):
        n = robot.n
        goal_map = robot.ee_map()
        body_maps = robot.body_maps()
        constraint = None
        limits = robot.joint_limits
    elif isinstance(robot, PointRobot):
        n = 2
        goal_map = robot.body_map()
        body_maps = robot.body_maps()
        constraint = None
        limits = scenario.limits
        if limits is None:
            limits = (-5.0 * np.ones(2), 5.0 * np.ones(2))
    else:
        raise ConfigValidationError("unknown robot type", ["robot.type"])

    planner = FabricPlanner(n, mode=scenario.mode, damping_beta=scenario.beta,
                            constraint=constraint)
    planner.add_leaf(make_attractor(scenario.goal, goal_map,
                                    scenario.attractor_params))
    body_radius = getattr(robot, "body_radius", 0.0)
    for i, obstacle in enumerate(scenario.obstacles):
        for j, bmap in enumerate(body_maps):
            planner.add_leaf(make_collision_leaf(
                obstacle, bmap, body_radius, scenario.collision_params,
                name=f"obstacle{i}_body{j}"))
    if limits is not None:
        lower, upper = limits
        for joint in range(n):
            planner.add_leaves(make_limit_leaf(n, joint, lower[joint], upper[joint],
                                               scenario.limit_params))
    return planner


def _body_positions(robot, q: Array) -> list[Array]:
    if isinstance(robot, DiffDrive):
        return [q[:2]]
    zero = np.zeros_like(q)
    return [m.jet(q, zero).x for m in robot.body_maps()]


def _min_surface_distance(robot, q: Array, obstacles: list[Obstacle], t: float) -> float:
    """Smallest body-to-obstacle surface distance in meters (inf if none)."""
    if not obstacles:
        return math.inf
    body_radius = getattr(robot, "body_radius", 0.0)
    points = _body_positions(robot, q)
    best = math.inf
    for obstacle in obstacles:
        c = obstacle.center_at(t)
        reach = obstacle.radius + body_radius
        for p in points:
            d = float(np.linalg.norm(p - c)) - reach
            if d < best:
                best = d
    return best


def _run_single(scenario: Scenario, planner: FabricPlanner,
                q0: Array, qd0: Array) -> RunRecord:
    robot = scenario.robot
    diffdrive = isinstance(robot, DiffDrive)
    n = 3 if diffdrive else planner.n
    k = 2 if diffdrive else n
    dt = scenario.dt
    steps = int(math.floor(scenario.T / dt + 1e-9))
    rows = steps + 1
    goal_ref = scenario.goal_reference
    track_vel = scenario.tracking_task

    t_arr = np.empty(rows)
    q_arr = np.empty((rows, n))
    qd_arr = np.empty((rows, k))
    x_arr = np.empty((rows, 2))
    dist_arr = np.empty(rows)
    time_arr = np.zeros(rows)

    if diffdrive:
        ee = lambda q: q[:2]
        call_times: list[float] = []

        def dynamics(state, tt):
            pose, vel = state[:3], state[3:]
            t0 = time.perf_counter()
            acc = planner.compute_nonholonomic_action(pose, vel, tt)
            call_times.append(time.perf_counter() - t0)
            J_nh, _ = planner.constraint.eval(pose, vel)
            return np.concatenate([J_nh @ vel, acc])
    else:
        ee_map = robot.ee_map() if isinstance(robot, PlanarArm) else robot.body_map()
        zero = np.zeros(n)
        ee = lambda q: ee_map.jet(q, zero).x
        call_times = []

        def dynamics(state, tt):
            qq, qd = state[:n], state[n:]
            t0 = time.perf_counter()
            acc = planner.compute_action(qq, qd, tt)
            call_times.append(time.perf_counter() - t0)
            return np.concatenate([qd, acc])

    record = RunRecord(t_arr, q_arr, qd_arr, x_arr, dist_arr, time_arr)
    state = np.concatenate([q0, qd0])
    still_count = 0
    deadlock_steps = max(1, int(round(DEADLOCK_WINDOW / dt)))
    filled = rows

    for i in range(rows):
        tt = i * dt
        q, qd = state[:n], state[n:]
        t_arr[i] = tt
        q_arr[i] = q
        qd_arr[i] = qd
        x_now = ee(q)
        x_arr[i] = x_now
        dist_arr[i] = _min_surface_distance(robot, q, scenario.obstacles, tt)

        g_pos, g_vel, _ = goal_ref.eval(tt)
        close = float(np.linalg.norm(x_now - g_pos)) < scenario.epsilon_goal
        if track_vel:
            # for moving goals the rest criterion is relative to the target
            if diffdrive:
                J_nh, _ = planner.constraint.eval(q, qd)
                x_vel = (J_nh @ qd)[:2]
            else:
                x_vel = ee_map.jet(q, qd).xdot
            slow = float(np.linalg.norm(x_vel - g_vel)) < GOAL_SPEED
        else:
            slow = float(np.linalg.norm(qd)) < GOAL_SPEED
        if close and slow and not record.goal_reached:
            record.goal_reached = True
            record.time_to_goal = tt

        if dist_arr[i] <= 0.0:
            record.collided = True
            filled = i + 1
            break

        if float(np.linalg.norm(qd)) < DEADLOCK_SPEED and not record.goal_reached:
            still_count += 1
            if still_count >= deadlock_steps:
                record.deadlocked = True
        else:
            still_count = 0

        if i < steps:
            call_times.clear()
            try:
                state = rk4_step(dynamics, state, tt, dt)
            except (NumericDomainError, FabricError):
                record.numeric_failure = True
                filled = i + 1
                break
            time_arr[i] = sum(call_times) / len(call_times)
            if diffdrive:
                state[2] = wrap_angle(state[2])

    if filled < rows:
        record.t = t_arr[:filled]
        record.q = q_arr[:filled]
        record.qdot = qd_arr[:filled]
        record.x_task = x_arr[:filled]
        record.min_dist = dist_arr[:filled]
        record.solver_time = time_arr[:filled]
    return record


def compute_metrics(record: RunRecord, scenario: Scenario) -> Metrics:
    """Aggregate a run record into the benchmark metrics."""
    if record.steps == 0:
        raise ValueError("cannot compute metrics of an empty record")
    clearance = float(record.min_dist.min())
    deltas = np.diff(record.x_task, axis=0)
    path_length = float(np.sqrt((deltas**2).sum(axis=1)).sum()) if record.steps > 1 else 0.0
    if scenario.tracking_task:
        ref = scenario.goal_reference
        err = 0.0
        for tt, x in zip(record.t, record.x_task):
            err += float(np.linalg.norm(x - ref.eval(tt)[0])) * scenario.dt
        summed_error = err
    else:
        summed_error = None
    active = record.solver_time[record.solver_time > 0.0]
    solver_time = float(active.mean()) if active.size else 0.0
    success = record.goal_reached and not record.collided
    return Metrics(clearance=clearance, path_length=path_length,
                   time_to_goal=record.time_to_goal, summed_error=summed_error,
                   solver_time=solver_time, success=success)


def run_scenario(scenario: Scenario) -> BatchResult:
    """Integrate every initial state of the scenario."""
    runs = []
    for q0, qd0 in scenario.initial_states:
        planner = build_planner(scenario)
        record = _run_single(scenario, planner, q0, qd0)
        runs.append(RunResult(record, compute_metrics(record, scenario)))
    return BatchResult(runs)
