"""Built-in benchmark scenarios.

Each entry is a complete scenario config (same schema as user configs) for
the desk-scale experiments: point robots with local-minimum obstacle layouts,
spline-guided variants, trajectory following, moving obstacles, planar arms
and a differential-drive goal run.
"""

from __future__ import annotations

import copy

_POINT_BASE = {
    "robot": {"type": "point"},
    "integration": {"dt": 0.01, "T": 15.0},
    "success": {"epsilon_goal": 0.1},
    "initial": {"position": [3.0, 2.0], "headings": {"count": 10, "speed": 1.0}},
}


def _point(name, description, goal, obstacles, mode, **extra):
    cfg = copy.deepcopy(_POINT_BASE)
    cfg["name"] = name
    cfg["description"] = description
    cfg["goal"] = goal
    cfg["obstacles"] = obstacles
    cfg["planner"] = {"mode": mode}
    cfg.update(extra)
    return cfg


_SPLINE_POINTS = [[3.0, 2.0], [1.2, -2.6], [-2.0, -1.0]]

REPRO_CONFIGS: dict[str, dict] = {
    "point-1obs": _point(
        "point-1obs",
        "Point robot from [3,2] with 10 unit-speed headings to goal [-2,-1]; "
        "one obstacle at [0.5,0] with radius 0.8; static attractor.",
        {"point": [-2.0, -1.0]},
        [{"center": [0.5, 0.0], "radius": 0.8}],
        "static",
    ),
    "point-2obs": _point(
        "point-2obs",
        "Point robot, two overlapping obstacles at [0.5,0] and [0,1] (radius 0.8) "
        "forming a concave pocket on the way to [-2,-1]; static attractor.",
        {"point": [-2.0, -1.0]},
        [{"center": [0.5, 0.0], "radius": 0.8},
         {"center": [0.0, 1.0], "radius": 0.8}],
        "static",
    ),
    "point-spline": _point(
        "point-spline",
        "Two-obstacle pocket solved with a three-control-point spline guiding "
        "around the pocket; time-parameterized goal handling.",
        {"spline": {"control_points": _SPLINE_POINTS, "duration": 8.0}},
        [{"center": [0.5, 0.0], "radius": 0.8},
         {"center": [0.0, 1.0], "radius": 0.8}],
        "dynamic",
    ),
    "point-obstructed-spline": _point(
        "point-obstructed-spline",
        "Spline guidance with a third obstacle blocking the spline midpoint; "
        "runs must stay collision-free even though the guide is infeasible.",
        {"spline": {"control_points": _SPLINE_POINTS, "duration": 8.0}},
        [{"center": [0.5, 0.0], "radius": 0.8},
         {"center": [0.0, 1.0], "radius": 0.8},
         {"center": [0.85, -1.05], "radius": 0.8}],
        "dynamic",
    ),
    "point-follow": {
        "name": "point-follow",
        "description": "Point robot following the circle [-4 sin(0.2 t), 4 cos(0.2 t)] "
                       "from [0.5, 4.5]; five randomized obstacles per seed.",
        "robot": {"type": "point",
                  "limits": {"lower": [-6.0, -6.0], "upper": [6.0, 6.0]}},
        "goal": {"analytic": {"kind": "circle", "center": [0.0, 0.0], "radius": 4.0,
                              "omega": 0.2, "phase": 1.5707963267948966}},
        "obstacles": [],
        "planner": {"mode": "dynamic"},
        "initial": {"states": [{"q": [0.5, 4.5], "qdot": [0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 15.0},
        "batch": {"runs": 20, "randomize": ["obstacles"], "seed": 7,
                  "obstacle_count": 5, "radius_range": [0.3, 0.8]},
    },
    "point-moving-obs": {
        "name": "point-moving-obs",
        "description": "Point robot from [0.5, 4.5] to randomized goals while an "
                       "obstacle oscillates along [0, -2.5 cos(t)].",
        "robot": {"type": "point",
                  "limits": {"lower": [-6.0, -6.0], "upper": [6.0, 6.0]}},
        "goal": {"point": [-2.0, -1.0]},
        "obstacles": [{"trajectory": {"kind": "sinusoid", "center": [0.0, 0.0],
                                      "amplitude": [0.0, -2.5], "omega": 1.0},
                       "radius": 0.8}],
        "planner": {"mode": "dynamic"},
        "initial": {"states": [{"q": [0.5, 4.5], "qdot": [0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 15.0},
        "batch": {"runs": 20, "randomize": ["goal"], "seed": 11,
                  "workspace": {"low": [-4.0, -4.0], "high": [4.0, 4.0]}},
    },
    "planar4": {
        "name": "planar4",
        "description": "Four-link planar arm (unit links) reaching end-effector goal "
                       "[2,3] around a single obstacle; static attractor.",
        "robot": {"type": "planar", "link_lengths": [1.0, 1.0, 1.0, 1.0]},
        "goal": {"point": [2.0, 3.0]},
        "obstacles": [{"center": [1.9, 2.5], "radius": 0.3}],
        "planner": {"mode": "static"},
        "initial": {"states": [{"q": [1.5707963267948966, 0.0, -1.5707963267948966, 0.0],
                                "qdot": [0.0, 0.0, 0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 15.0},
    },
    "planar5": {
        "name": "planar5",
        "description": "Five-link planar arm toward [2,3] with two overlapping "
                       "obstacles blocking the direct end-effector path; static "
                       "attractor runs into the pocket.",
        "robot": {"type": "planar", "link_lengths": [1.0, 1.0, 1.0, 1.0, 1.0]},
        "goal": {"point": [2.0, 3.0]},
        "obstacles": [{"center": [2.55, 2.35], "radius": 0.35},
                      {"center": [2.35, 2.55], "radius": 0.35}],
        "planner": {"mode": "static"},
        "initial": {"states": [{"q": [1.5707963267948966, 0.0, -1.5707963267948966,
                                      0.0, 0.0],
                                "qdot": [0.0, 0.0, 0.0, 0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 15.0},
    },
    "planar5-spline": {
        "name": "planar5-spline",
        "description": "Five-link arm, same pocket, guided by a spline swinging the "
                       "end-effector around the obstacles.",
        "robot": {"type": "planar", "link_lengths": [1.0, 1.0, 1.0, 1.0, 1.0]},
        "goal": {"spline": {"control_points": [[3.0, 2.0], [3.4, 3.3], [2.0, 3.0]],
                            "duration": 8.0}},
        "obstacles": [{"center": [2.55, 2.35], "radius": 0.35},
                      {"center": [2.35, 2.55], "radius": 0.35}],
        "planner": {"mode": "dynamic"},
        "initial": {"states": [{"q": [1.5707963267948966, 0.0, -1.5707963267948966,
                                      0.0, 0.0],
                                "qdot": [0.0, 0.0, 0.0, 0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 15.0},
    },
    "planar-follow": {
        "name": "planar-follow",
        "description": "Five-link arm following the circle [-3.5 cos(0.1 t), "
                       "-3.5 sin(0.1 t)] with five randomized obstacles per seed.",
        "robot": {"type": "planar", "link_lengths": [1.0, 1.0, 1.0, 1.0, 1.0]},
        "goal": {"analytic": {"kind": "circle", "center": [0.0, 0.0], "radius": 3.5,
                              "omega": 0.1, "phase": 3.141592653589793}},
        "obstacles": [],
        "planner": {"mode": "dynamic"},
        "initial": {"states": [{"q": [1.5707963267948966, 0.0, -1.5707963267948966,
                                      0.0, -1.5707963267948966],
                                "qdot": [0.0, 0.0, 0.0, 0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 15.0},
        "batch": {"runs": 20, "randomize": ["obstacles"], "seed": 13,
                  "obstacle_count": 5, "radius_range": [0.3, 0.6]},
    },
    "planar-moving-obs": {
        "name": "planar-moving-obs",
        "description": "Two-link arm with two obstacles rising along [+-1.5, "
                       "-2 + 0.3 t] and randomized end-effector goals.",
        "robot": {"type": "planar", "link_lengths": [1.0, 1.0]},
        "goal": {"point": [1.0, 1.5]},
        "obstacles": [{"trajectory": {"kind": "line", "start": [-1.5, -2.0],
                                      "velocity": [0.0, 0.3]}, "radius": 0.4},
                      {"trajectory": {"kind": "line", "start": [1.5, -2.0],
                                      "velocity": [0.0, 0.3]}, "radius": 0.4}],
        "planner": {"mode": "dynamic"},
        "initial": {"states": [{"q": [1.0, -0.2], "qdot": [0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 15.0},
        "batch": {"runs": 20, "randomize": ["goal"], "seed": 17},
    },
    "diffdrive-goal": {
        "name": "diffdrive-goal",
        "description": "Differential-drive base from pose [-3,-1,0] to goal [3,1] "
                       "around one obstacle; actuation is forward speed and yaw rate.",
        "robot": {"type": "diffdrive"},
        "goal": {"point": [3.0, 1.0]},
        "obstacles": [{"center": [0.0, 0.0], "radius": 0.6}],
        "planner": {"mode": "static"},
        "initial": {"states": [{"q": [-3.0, -1.0, 0.0], "qdot": [0.0, 0.0]}]},
        "integration": {"dt": 0.01, "T": 20.0},
    },
}


def repro_names() -> list[str]:
    return sorted(REPRO_CONFIGS)


def repro_config(name: str) -> dict:
    """Deep copy of a built-in scenario config."""
    if name not in REPRO_CONFIGS:
        raise KeyError(f"unknown scenario '{name}'; available: {', '.join(repro_names())}")
    return copy.deepcopy(REPRO_CONFIGS[name])
