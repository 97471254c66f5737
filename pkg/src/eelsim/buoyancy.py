"""Variable-ballast depth and pitch control: leadscrew-to-syringe kinematics,
fill-to-mass bookkeeping, and the heave/pitch vertical dynamics.

The robot's displaced volume is constant; only onboard water mass changes.
Neutral buoyancy sits at 50% fill, so fill fractions above/below neutral
produce net downward/upward force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import GRAVITY, RHO_WATER, RobotGeometry, RobotState

SYRINGES_PER_MODULE = 2


@dataclass(frozen=True)
class LeadscrewState:
    """Motor angle with the stroke and fill fraction it produces."""

    motor_angle: float  # rad
    stroke: float       # m
    fill: float         # stroke / max_stroke

    @staticmethod
    def from_motor_angle(motor_angle: float, geom: RobotGeometry) -> "LeadscrewState":
        stroke = leadscrew_stroke(motor_angle, geom)
        return LeadscrewState(motor_angle=motor_angle, stroke=stroke,
                              fill=stroke / geom.max_stroke)


def leadscrew_stroke(motor_angle: float, geom: RobotGeometry) -> float:
    """Plunger travel for a motor angle; saturates at [0, max_stroke].

    Both telescoping stages advance per screw revolution, so travel per motor
    rev is gear_ratio * (lead_primary + lead_secondary).
    """
    per_rev = geom.gear_ratio * (geom.lead_primary + geom.lead_secondary)
    stroke = per_rev * motor_angle / (2.0 * math.pi)
    return min(max(stroke, 0.0), geom.max_stroke)


def net_ballast_mass(fills: Sequence[float], geom: RobotGeometry) -> float:
    """Net onboard water mass relative to neutral (kg, positive = heavy)."""
    f = np.asarray(fills, dtype=float)
    if np.any((f < 0.0) | (f > 1.0)):
        raise ValueError(f"fills must be in [0, 1], got {list(f)}")
    per_module = SYRINGES_PER_MODULE * geom.syringe_volume * RHO_WATER
    return float(np.sum((f - geom.neutral_fill) * per_module))


def module_ballast_masses(fills: Sequence[float], geom: RobotGeometry) -> np.ndarray:
    f = np.asarray(fills, dtype=float)
    per_module = SYRINGES_PER_MODULE * geom.syringe_volume * RHO_WATER
    return (f - geom.neutral_fill) * per_module


def pitch_equilibrium(fills: Sequence[float], geom: RobotGeometry) -> float:
    """Static pitch where the shifted CoM hangs below the centroid.

    Per-module ballast moves the CoM axially by a; with metacentric height h
    the equilibrium is atan(a / h), positive head-down (head station is +x).
    """
    dm = module_ballast_masses(fills, geom)
    m_tot = geom.total_mass + float(np.sum(dm))
    if m_tot <= 0:
        raise ValueError("total mass including ballast must be positive")
    a = float(np.sum(dm * geom.module_stations)) / m_tot
    return math.atan2(a, geom.metacentric_height_h)


def step_vertical(state: RobotState, fills: Sequence[float], dt: float,
                  geom: RobotGeometry, water_depth: float | None = None,
                  pitch_time_constant: float = 2.0) -> RobotState:
    """Advance heave and pitch one step (semi-implicit Euler).

    Heave: (m + dm) dv/dt = dm*g - cz*v*|v|, clamped at the surface and at
    ``water_depth`` when given. Pitch: critically damped second-order
    relaxation toward the static equilibrium.
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    dm = net_ballast_mass(fills, geom)
    m = geom.total_mass + dm

    v = state.heave_rate
    v += dt * (dm * GRAVITY - geom.heave_drag_cz * v * abs(v)) / m
    z = state.depth_z + dt * v
    if z < 0.0:
        z, v = 0.0, max(v, 0.0)     # surface: keep only downward velocity
    if water_depth is not None and z > water_depth:
        z, v = water_depth, min(v, 0.0)

    # second-order relaxation: critically damped, decay rate 1/tau
    sigma = 1.0 / pitch_time_constant
    eq = pitch_equilibrium(fills, geom)
    pr = state.pitch_rate
    pr += dt * (sigma * sigma * (eq - state.pitch) - 2.0 * sigma * pr)
    p = state.pitch + dt * pr

    if not all(math.isfinite(q) for q in (z, v, p, pr)):
        from .hydro import SimulationDiverged
        raise SimulationDiverged("vertical dynamics diverged", state)

    return state.replace(depth_z=z, heave_rate=v, pitch=p, pitch_rate=pr,
                         fills=tuple(float(x) for x in fills))


def terminal_heave_rate(ballast_mass: float, geom: RobotGeometry) -> float:
    """Closed-form terminal speed sqrt(|dm| g / cz), signed like the ballast."""
    mag = math.sqrt(abs(ballast_mass) * GRAVITY / geom.heave_drag_cz)
    return math.copysign(mag, ballast_mass)
