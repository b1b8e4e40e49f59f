"""Scenario configuration: JSON schema, validation and construction.

Configs are plain JSON.  Analytic goal and obstacle trajectories are a closed
enumeration (circle, line, sinusoid) with numeric parameters; there is no
runtime expression language.
"""

from __future__ import annotations

import numpy as np

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

from .errors import ConfigValidationError
from .leaves import AttractorParams, BarrierParams, Obstacle
from .reference import (CircleTrajectory, LineTrajectory, ReferenceTrajectory,
                        SinusoidTrajectory, SplineTrajectory)
from .robots import DiffDrive, PlanarArm, PointRobot
from .simulate import Scenario

_VEC = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_POS_NUM = {"type": "number", "exclusiveMinimum": 0}

_TRAJECTORY = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["circle", "line", "sinusoid"]},
        "center": _VEC,
        "radius": {"type": "number"},
        "omega": {"type": "number"},
        "phase": {"type": "number"},
        "start": _VEC,
        "velocity": _VEC,
        "amplitude": _VEC,
    },
}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ScenarioConfig",
    "type": "object",
    "additionalProperties": False,
    "required": ["robot", "goal", "initial", "integration"],
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "robot": {
            "type": "object",
            "additionalProperties": False,
            "required": ["type"],
            "properties": {
                "type": {"enum": ["point", "planar", "diffdrive"]},
                "n": {"type": "integer", "minimum": 1},
                "link_lengths": {"type": "array", "items": _POS_NUM, "minItems": 1},
                "limits": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["lower", "upper"],
                    "properties": {"lower": _VEC, "upper": _VEC},
                },
                "body_radius": {"type": "number", "minimum": 0},
                "wheel": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["radius", "track"],
                    "properties": {"radius": _POS_NUM, "track": _POS_NUM},
                },
            },
        },
        "planner": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "mode": {"enum": ["static", "dynamic"]},
                "beta": _POS_NUM,
                "attractor": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "gain": _POS_NUM,
                        "smoothing": _POS_NUM,
                        "metric_near": _POS_NUM,
                        "metric_far": _POS_NUM,
                        "metric_width": _POS_NUM,
                    },
                },
                "collision": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"k_b": _POS_NUM, "lam": _POS_NUM},
                },
                "limits": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"k_b": _POS_NUM, "lam": _POS_NUM},
                },
            },
        },
        "goal": {
            "type": "object",
            "additionalProperties": False,
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "point": _VEC,
                "analytic": _TRAJECTORY,
                "spline": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["control_points", "duration"],
                    "properties": {
                        "control_points": {
                            "type": "array",
                            "items": _VEC,
                            "minItems": 3,
                            "maxItems": 3,
                        },
                        "duration": _POS_NUM,
                    },
                },
            },
        },
        "obstacles": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["radius"],
                "minProperties": 2,
                "maxProperties": 2,
                "properties": {
                    "center": _VEC,
                    "trajectory": _TRAJECTORY,
                    "radius": _POS_NUM,
                },
            },
        },
        "initial": {
            "type": "object",
            "additionalProperties": False,
            "minProperties": 1,
            "properties": {
                "states": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["q", "qdot"],
                        "properties": {"q": _VEC, "qdot": _VEC},
                    },
                },
                "position": _VEC,
                "headings": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["count", "speed"],
                    "properties": {
                        "count": {"type": "integer", "minimum": 1},
                        "speed": {"type": "number", "minimum": 0},
                    },
                },
            },
        },
        "integration": {
            "type": "object",
            "additionalProperties": False,
            "required": ["dt", "T"],
            "properties": {"dt": _POS_NUM, "T": _POS_NUM},
        },
        "success": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"epsilon_goal": _POS_NUM},
        },
        "batch": {
            "type": "object",
            "additionalProperties": False,
            "required": ["runs"],
            "properties": {
                "runs": {"type": "integer", "minimum": 1},
                "randomize": {
                    "type": "array",
                    "items": {"enum": ["obstacles", "goal", "initial"]},
                },
                "seed": {"type": "integer", "minimum": 0},
                "workspace": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["low", "high"],
                    "properties": {"low": _VEC, "high": _VEC},
                },
                "obstacle_count": {"type": "integer", "minimum": 0},
                "radius_range": {
                    "type": "array",
                    "items": _POS_NUM,
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
        "outputs": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "csv": {"type": "string"},
                "json": {"type": "string"},
                "svg": {"type": "string"},
            },
        },
    },
}


def scenario_schema() -> dict:
    """The JSON schema every scenario config must satisfy."""
    return SCENARIO_SCHEMA


def validate_config(cfg: dict) -> None:
    """Raise :class:`ConfigValidationError` naming every offending field."""
    if jsonschema is None:  # pragma: no cover
        raise RuntimeError("jsonschema is required for config validation")
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        fields, lines = [], []
        for err in errors:
            path = ".".join(str(p) for p in err.absolute_path) or "<root>"
            fields.append(path)
            lines.append(f"{path}: {err.message}")
        raise ConfigValidationError("invalid scenario config:\n" + "\n".join(lines), fields)


def build_trajectory(spec: dict, where: str) -> ReferenceTrajectory:
    kind = spec["kind"]
    try:
        if kind == "circle":
            return CircleTrajectory(np.asarray(spec["center"], dtype=float),
                                    spec["radius"], spec["omega"],
                                    spec.get("phase", 0.0))
        if kind == "line":
            return LineTrajectory(np.asarray(spec["start"], dtype=float),
                                  np.asarray(spec["velocity"], dtype=float))
        if kind == "sinusoid":
            return SinusoidTrajectory(np.asarray(spec["center"], dtype=float),
                                      np.asarray(spec["amplitude"], dtype=float),
                                      spec["omega"], spec.get("phase", 0.0))
    except KeyError as exc:
        raise ConfigValidationError(
            f"{where}: missing parameter {exc} for {kind} trajectory",
            [f"{where}.{exc.args[0]}"]) from exc
    raise ConfigValidationError(f"{where}: unknown trajectory kind", [where])


def _build_robot(cfg: dict):
    rcfg = cfg["robot"]
    kind = rcfg["type"]
    body_radius = rcfg.get("body_radius", 0.0)
    if kind == "point":
        return PointRobot(body_radius)
    if kind == "planar":
        if "link_lengths" in rcfg:
            lengths = np.asarray(rcfg["link_lengths"], dtype=float)
        elif "n" in rcfg:
            lengths = np.ones(rcfg["n"])
        else:
            raise ConfigValidationError("planar robot needs n or link_lengths",
                                        ["robot.n", "robot.link_lengths"])
        limits = None
        if "limits" in rcfg:
            limits = (np.asarray(rcfg["limits"]["lower"], dtype=float),
                      np.asarray(rcfg["limits"]["upper"], dtype=float))
        return PlanarArm(lengths, limits)
    wheel = rcfg.get("wheel")
    if wheel:
        return DiffDrive(body_radius, wheel["radius"], wheel["track"])
    return DiffDrive(body_radius)


def _build_goal(cfg: dict):
    gcfg = cfg["goal"]
    if "point" in gcfg:
        return np.asarray(gcfg["point"], dtype=float)
    if "analytic" in gcfg:
        return build_trajectory(gcfg["analytic"], "goal.analytic")
    scfg = gcfg["spline"]
    return SplineTrajectory(np.asarray(scfg["control_points"], dtype=float),
                            scfg["duration"])


def _build_obstacles(cfg: dict) -> list[Obstacle]:
    out = []
    for i, ocfg in enumerate(cfg.get("obstacles", [])):
        if "center" in ocfg:
            center = np.asarray(ocfg["center"], dtype=float)
        else:
            center = build_trajectory(ocfg["trajectory"], f"obstacles.{i}.trajectory")
        out.append(Obstacle(center, ocfg["radius"]))
    return out


def _build_initial_states(cfg: dict, n: int, k: int):
    icfg = cfg["initial"]
    if "states" in icfg:
        states = []
        for i, st in enumerate(icfg["states"]):
            q = np.asarray(st["q"], dtype=float)
            qd = np.asarray(st["qdot"], dtype=float)
            if q.shape != (n,) or qd.shape != (k,):
                raise ConfigValidationError(
                    f"initial.states.{i}: expected q of length {n} and qdot of length {k}",
                    [f"initial.states.{i}"])
            states.append((q, qd))
        return states
    if "position" not in icfg or "headings" not in icfg:
        raise ConfigValidationError("initial needs either states or position+headings",
                                    ["initial"])
    pos = np.asarray(icfg["position"], dtype=float)
    if pos.shape != (n,):
        raise ConfigValidationError(f"initial.position: expected length {n}",
                                    ["initial.position"])
    count = icfg["headings"]["count"]
    speed = icfg["headings"]["speed"]
    states = []
    for i in range(count):
        angle = -np.pi + 2.0 * np.pi * i / count
        qd = speed * np.array([np.cos(angle), np.sin(angle)])
        states.append((pos.copy(), qd))
    return states


def build_scenario(cfg: dict, mode_override: str | None = None,
                   obstacles: list[Obstacle] | None = None,
                   goal=None, initial_states=None) -> Scenario:
    """Turn a validated config dict into a runnable scenario.

    The keyword overrides support batch randomization and CLI flags.
    """
    robot = _build_robot(cfg)
    if isinstance(robot, DiffDrive):
        n, k = 3, 2
    else:
        n = robot.n
        k = n
    pcfg = cfg.get("planner", {})
    attractor = AttractorParams(**pcfg.get("attractor", {}))
    collision = BarrierParams(**pcfg.get("collision", {}))
    limit = BarrierParams(**{"k_b": 0.2, "lam": 0.25, **pcfg.get("limits", {})})
    if goal is None:
        goal = _build_goal(cfg)
    if obstacles is None:
        obstacles = _build_obstacles(cfg)
    if initial_states is None:
        initial_states = _build_initial_states(cfg, n, k)
    limits = None
    if cfg["robot"].get("limits") and cfg["robot"]["type"] == "point":
        limits = (np.asarray(cfg["robot"]["limits"]["lower"], dtype=float),
                  np.asarray(cfg["robot"]["limits"]["upper"], dtype=float))
    return Scenario(
        robot=robot,
        goal=goal,
        initial_states=initial_states,
        obstacles=obstacles,
        mode=mode_override or pcfg.get("mode", "dynamic"),
        dt=cfg["integration"]["dt"],
        T=cfg["integration"]["T"],
        epsilon_goal=cfg.get("success", {}).get("epsilon_goal", 0.1),
        beta=pcfg.get("beta", 2.5),
        attractor_params=attractor,
        collision_params=collision,
        limit_params=limit,
        limits=limits,
        seed=cfg.get("batch", {}).get("seed"),
        name=cfg.get("name", "scenario"),
        description=cfg.get("description", ""),
    )


# -- batch randomization ---------------------------------------------------


def _workspace(cfg: dict, robot) -> tuple[np.ndarray, np.ndarray]:
    bcfg = cfg.get("batch", {})
    if "workspace" in bcfg:
        return (np.asarray(bcfg["workspace"]["low"], dtype=float),
                np.asarray(bcfg["workspace"]["high"], dtype=float))
    if isinstance(robot, PlanarArm):
        reach = float(robot.link_lengths.sum())
        return -reach * np.ones(2), reach * np.ones(2)
    return -5.0 * np.ones(2), 5.0 * np.ones(2)


def _goal_curve_samples(goal, T: float) -> np.ndarray:
    if isinstance(goal, ReferenceTrajectory):
        return np.array([goal.eval(t)[0] for t in np.linspace(0.0, T, 64)])
    return np.asarray(goal, dtype=float)[None, :]


def _sample_obstacles(rng, cfg, robot, goal, base_scenario) -> list[Obstacle]:
    bcfg = cfg.get("batch", {})
    count = bcfg.get("obstacle_count", max(len(base_scenario.obstacles), 1))
    lo_r, hi_r = bcfg.get("radius_range", [0.3, 0.8])
    low, high = _workspace(cfg, robot)
    keep_clear = [(_goal_curve_samples(goal, base_scenario.T), 0.25)]
    for q0, _ in base_scenario.initial_states:
        pts = np.array([p for p in _start_points(robot, q0)])
        keep_clear.append((pts, 0.5))
    obstacles = []
    for _ in range(count):
        for _attempt in range(1000):
            radius = float(rng.uniform(lo_r, hi_r))
            center = rng.uniform(low, high)
            ok = True
            for pts, margin in keep_clear:
                if np.linalg.norm(pts - center, axis=1).min() < radius + margin:
                    ok = False
                    break
            if ok:
                obstacles.append(Obstacle(center, radius))
                break
        else:
            raise ConfigValidationError(
                "could not place randomized obstacles clear of start and goal",
                ["batch.obstacle_count"])
    return obstacles


def _start_points(robot, q0):
    if isinstance(robot, DiffDrive):
        return [q0[:2]]
    zero = np.zeros_like(q0)
    return [m.jet(q0, zero).x for m in robot.body_maps()]


def _sample_goal(rng, cfg, robot, base_scenario) -> np.ndarray:
    low, high = _workspace(cfg, robot)
    reach = float(robot.link_lengths.sum()) if isinstance(robot, PlanarArm) else None
    for _ in range(1000):
        goal = rng.uniform(low, high)
        if reach is not None:
            r = np.linalg.norm(goal)
            if not 0.2 * reach <= r <= 0.9 * reach:
                continue
        ok = True
        for obstacle in base_scenario.obstacles:
            samples = np.array([obstacle.center_at(t)
                                for t in np.linspace(0.0, base_scenario.T, 64)])
            if np.linalg.norm(samples - goal, axis=1).min() < obstacle.radius + 0.2:
                ok = False
                break
        if ok:
            return goal
    raise ConfigValidationError("could not sample a feasible random goal", ["batch"])


def _sample_initial(rng, cfg, robot, base_scenario):
    low, high = _workspace(cfg, robot)
    n = 3 if isinstance(robot, DiffDrive) else robot.n
    k = 2 if isinstance(robot, DiffDrive) else n
    for _ in range(1000):
        if isinstance(robot, PointRobot):
            q0 = rng.uniform(low, high)
        elif isinstance(robot, PlanarArm):
            q0 = rng.uniform(-np.pi, np.pi, size=n)
        else:
            q0 = np.concatenate([rng.uniform(low, high), rng.uniform(-np.pi, np.pi, 1)])
        clear = True
        for obstacle in base_scenario.obstacles:
            c = obstacle.center_at(0.0)
            for p in _start_points(robot, q0):
                if np.linalg.norm(p - c) < obstacle.radius + 0.3:
                    clear = False
                    break
            if not clear:
                break
        if clear:
            return [(q0, np.zeros(k))]
    raise ConfigValidationError("could not sample a collision-free initial state", ["batch"])


def expand_batch(cfg: dict, mode_override: str | None = None,
                 seed_override: int | None = None) -> list[tuple[str, Scenario]]:
    """Expand a config into its batch of (possibly randomized) scenarios."""
    base = build_scenario(cfg, mode_override)
    bcfg = cfg.get("batch")
    if not bcfg:
        return [(base.name, base)]
    seed = seed_override if seed_override is not None else bcfg.get("seed", 0)
    randomize = set(bcfg.get("randomize", []))
    robot = base.robot
    out = []
    for i in range(bcfg["runs"]):
        rng = np.random.default_rng([seed, i])
        goal = _sample_goal(rng, cfg, robot, base) if "goal" in randomize else base.goal
        obstacles = (_sample_obstacles(rng, cfg, robot, goal, base)
                     if "obstacles" in randomize else base.obstacles)
        initial = (_sample_initial(rng, cfg, robot, base)
                   if "initial" in randomize else base.initial_states)
        scenario = build_scenario(cfg, mode_override or base.mode,
                                  obstacles=obstacles, goal=goal,
                                  initial_states=initial)
        scenario.seed = seed
        scenario.name = f"{base.name}_run{i:03d}" if bcfg["runs"] > 1 else base.name
        out.append((scenario.name, scenario))
    return out
