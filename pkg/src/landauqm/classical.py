"""Classical Hamiltonian flow of a charge in a uniform field, both gauges."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .gauge import Gauge
from .params import PhysicalParams, cyclotron_frequency


@dataclass(frozen=True)
class ClassicalState:
    x: float
    y: float
    px: float
    py: float
    t: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "px", "py", "t"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"non-finite state component {name}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.px, self.py])


def flow(gauge: Gauge, s: ClassicalState, params: PhysicalParams) -> ClassicalState:
    """Hamilton's equations; the returned state holds (dx/dt, dy/dt, dpx/dt, dpy/dt)."""
    m, w = params.m, cyclotron_frequency(params)
    if gauge is Gauge.LANDAU:
        pi_x = s.px + m * w * s.y
        return ClassicalState(pi_x / m, s.py / m, 0.0, -w * pi_x, 1.0)
    pi_x = s.px + 0.5 * m * w * s.y
    pi_y = s.py - 0.5 * m * w * s.x
    return ClassicalState(pi_x / m, pi_y / m, 0.5 * w * pi_y, -0.5 * w * pi_x, 1.0)


def flow_matrix(gauge: Gauge, params: PhysicalParams) -> np.ndarray:
    """The flow is linear and homogeneous; column k is flow(e_k)."""
    cols = []
    for k in range(4):
        e = np.zeros(4)
        e[k] = 1.0
        cols.append(flow(gauge, ClassicalState(*e), params).as_array())
    return np.column_stack(cols)


@dataclass(frozen=True)
class Trajectory:
    gauge: Gauge
    t: np.ndarray
    states: np.ndarray  # (len, 4) columns x, y, px, py

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i) -> ClassicalState:
        x, y, px, py = self.states[i]
        return ClassicalState(x, y, px, py, self.t[i])

    @property
    def positions(self) -> np.ndarray:
        return self.states[:, :2]

    def velocities(self, params: PhysicalParams) -> np.ndarray:
        return np.array([velocity(self.gauge, self[i], params) for i in range(len(self))])


def rk4_integrate(
    gauge: Gauge, s0: ClassicalState, dt: float, steps: int, params: PhysicalParams, backend=None
) -> Trajectory:
    if dt <= 0:
        raise ValueError("dt must be positive")
    if steps < 1:
        raise ValueError("need at least one step")
    states = kernels.rk4_linear(flow_matrix(gauge, params), s0.as_array(), dt, steps, backend)
    if not np.all(np.isfinite(states)):
        raise FloatingPointError("trajectory left the finite range")
    t = s0.t + dt * np.arange(steps + 1)
    return Trajectory(gauge, t, states)


def vector_potential(gauge: Gauge, x: float, y: float, params: PhysicalParams):
    if gauge is Gauge.LANDAU:
        return (-params.B * y, 0.0)
    return (-0.5 * params.B * y, 0.5 * params.B * x)


def state_from_velocity(
    gauge: Gauge, x: float, y: float, vx: float, vy: float, params: PhysicalParams, t: float = 0.0
) -> ClassicalState:
    """Canonical momenta p = m v + (q/c) A(x, y)."""
    ax, ay = vector_potential(gauge, x, y, params)
    k = params.q / params.c
    return ClassicalState(x, y, params.m * vx + k * ax, params.m * vy + k * ay, t)


def velocity(gauge: Gauge, s: ClassicalState, params: PhysicalParams) -> tuple[float, float]:
    d = flow(gauge, s, params)
    return d.x, d.y


def invariants_eval(gauge: Gauge, s: ClassicalState, params: PhysicalParams) -> tuple[float, float, float]:
    """The two linear constants of motion and the energy."""
    m = params.m
    mw = m * cyclotron_frequency(params)
    if gauge is Gauge.LANDAU:
        energy = ((s.px + mw * s.y) ** 2 + s.py**2) / (2 * m)
        return s.px, s.py + mw * s.x, energy
    energy = ((s.px + 0.5 * mw * s.y) ** 2 + (s.py - 0.5 * mw * s.x) ** 2) / (2 * m)
    return s.px - 0.5 * mw * s.y, s.py + 0.5 * mw * s.x, energy


def invariants_along(traj: Trajectory, params: PhysicalParams) -> np.ndarray:
    return np.array([invariants_eval(traj.gauge, traj[i], params) for i in range(len(traj))])


def orbit_radius_estimate(traj: Trajectory | np.ndarray) -> float:
    """Radius of the algebraic least-squares circle through the (x, y) points."""
    pts = traj.positions if isinstance(traj, Trajectory) else np.asarray(traj)[:, :2]
    x, y = pts[:, 0], pts[:, 1]
    a = np.column_stack([x, y, np.ones_like(x)])
    b = x * x + y * y
    scale = max(np.ptp(x), np.ptp(y))
    if scale == 0 or np.linalg.matrix_rank(a / [scale, scale, 1.0], tol=1e-9) < 3:
        raise ValueError("trajectory points are degenerate (coincident or collinear)")
    (cx2, cy2, c0), *_ = np.linalg.lstsq(a, b, rcond=None)
    cx, cy = cx2 / 2, cy2 / 2
    return math.sqrt(c0 + cx * cx + cy * cy)


def cyclotron_period(params: PhysicalParams) -> float:
    return 2 * math.pi / abs(cyclotron_frequency(params))


def write_trajectory_csv(traj: Trajectory, params: PhysicalParams, path) -> None:
    inv = invariants_along(traj, params)
    with open(path, "w", newline="") as fh:
        fh.write("t,x,y,px,py,c1,c2,H\n")
        for t, s, c in zip(traj.t, traj.states, inv):
            fh.write(",".join(f"{v:.17g}" for v in (t, *s, *c)) + "\n")
