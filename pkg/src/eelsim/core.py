"""Shared domain types, unit conventions, geometry validation, and planar
forward kinematics of the articulated module chain.

Conventions used throughout the package:
  * all angles are radians internally (config files accept ``*_deg`` keys),
  * the world frame is planar x/y with heading measured CCW from +x,
  * depth_z is in meters, positive down, 0 at the surface,
  * pitch is positive head-down,
  * link/module index 0 is the head; the chain extends behind it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
RHO_WATER = 1000.0  # kg/m^3, fresh water
GRAVITY = 9.81      # m/s^2


class GeometryError(ValueError):
    """Raised when an operation receives geometry that fails validation."""


class JointLimitError(ValueError):
    """Raised when a joint angle outside the configured limit is used."""


@dataclass(frozen=True)
class GaitParams:
    """Parameters of the traveling-wave joint-angle template."""

    amplitude_A: float            # rad, wave amplitude per joint
    spatial_freq_xi: float        # wave cycles along the body
    temporal_freq_omega: float    # Hz
    offset_phi: float = 0.0       # rad, uniform turning offset
    joint_count_N: int = 3

    def __post_init__(self) -> None:
        if not 0.0 < self.amplitude_A < math.pi / 2:
            raise ValueError(f"amplitude_A must be in (0, pi/2), got {self.amplitude_A}")
        if self.temporal_freq_omega <= 0.0:
            raise ValueError(f"temporal_freq_omega must be > 0, got {self.temporal_freq_omega}")
        if self.joint_count_N < 1:
            raise ValueError(f"joint_count_N must be >= 1, got {self.joint_count_N}")
        # headroom so commanded angles stay clear of the mechanical joint limit
        if abs(self.offset_phi) + self.amplitude_A >= math.pi / 2:
            raise ValueError(
                f"|offset_phi| + amplitude_A must be < pi/2, got "
                f"{abs(self.offset_phi) + self.amplitude_A}"
            )


@dataclass(frozen=True)
class ComplianceParams:
    """Cable-slack compliance: G in [0, 1] per joint, uniform scalar allowed."""

    G: float | tuple[float, ...] = 0.0
    slack_gain_l0: float = 0.1    # m of cable slack per rad of allowed deviation

    def __post_init__(self) -> None:
        gs = self.G if isinstance(self.G, tuple) else (self.G,)
        for g in gs:
            if not 0.0 <= g <= 1.0:
                raise ValueError(f"G must be in [0, 1], got {g}")
        if self.slack_gain_l0 <= 0.0:
            raise ValueError(f"slack_gain_l0 must be > 0, got {self.slack_gain_l0}")

    def g_for_joint(self, i: int) -> float:
        if isinstance(self.G, tuple):
            return self.G[i]
        return self.G


@dataclass(frozen=True)
class RobotGeometry:
    """Physical constants of the robot.

    Construction never validates; pass through :func:`validate_geometry`
    before simulating (tests deliberately build invalid geometries).
    """

    cable_lateral_offset_Lc: float = 0.05     # m, cable anchor offset from joint axis
    joint_half_length_Lj: float = 0.075       # m, pivot to module face
    module_length: float = 0.10               # m
    module_diameter: float = 0.10             # m
    module_count: int = 4
    total_mass: float = 6.15                  # kg, neutrally buoyant at 50% fill
    body_length: float = 1.013                # m, overall incl. head dome + tail
    neutral_fill: float = 0.5
    syringe_volume: float = 35e-6             # m^3 each, two per module
    syringe_inner_diameter: float = 0.024     # m
    gear_ratio: float = 36.0 / 16.0           # leadscrew revs per motor rev
    lead_primary: float = 0.002               # m advance per screw rev, stage 1
    lead_secondary: float = 0.002             # m advance per screw rev, stage 2
    drag_normal_Cn: float = 7.5               # N·s/m^2 per unit length
    drag_tangent_Ct: float = 2.5              # N·s/m^2 per unit length
    heave_drag_cz: float = 8.0                # kg/m, quadratic heave drag
    metacentric_height_h: float = 0.02        # m, CoM below centroid at neutral
    joint_limit: float = math.radians(80.0)   # rad

    @property
    def joint_count(self) -> int:
        return self.module_count - 1

    @property
    def link_pitch(self) -> float:
        """Distance between consecutive joint pivots (and link midpoints)."""
        return self.module_length + 2.0 * self.joint_half_length_Lj

    @property
    def link_hydro_length(self) -> float:
        """Wetted length attributed to each link for drag integration."""
        return self.body_length / self.module_count

    @property
    def module_stations(self) -> np.ndarray:
        """Axial positions of module midpoints, head first, body center at 0."""
        n = self.module_count
        return self.link_pitch * ((n - 1) / 2.0 - np.arange(n))

    @property
    def max_stroke(self) -> float:
        """Full syringe plunger travel implied by volume and bore."""
        area = math.pi * (self.syringe_inner_diameter / 2.0) ** 2
        return self.syringe_volume / area


def validate_geometry(geom: RobotGeometry) -> list[str]:
    """Check every geometry invariant; returns a complete list of violations.

    An empty list means the geometry is valid. Never raises on finite input.
    """
    errors: list[str] = []

    def positive(name: str) -> None:
        v = getattr(geom, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            errors.append(f"{name} must be > 0, got {v!r}")

    for name in (
        "cable_lateral_offset_Lc",
        "joint_half_length_Lj",
        "module_length",
        "module_diameter",
        "total_mass",
        "body_length",
        "syringe_volume",
        "syringe_inner_diameter",
        "gear_ratio",
        "heave_drag_cz",
        "metacentric_height_h",
    ):
        positive(name)

    if geom.module_count < 2:
        errors.append(f"module_count must be >= 2, got {geom.module_count}")
    if not 0.0 < geom.neutral_fill < 1.0:
        errors.append(f"neutral_fill must be in (0, 1), got {geom.neutral_fill}")
    if geom.lead_primary < 0 or geom.lead_secondary < 0 or (geom.lead_primary + geom.lead_secondary) <= 0:
        errors.append(
            f"leads must be >= 0 with positive sum, got "
            f"({geom.lead_primary}, {geom.lead_secondary})"
        )
    if not (geom.drag_tangent_Ct > 0):
        errors.append(f"drag_tangent_Ct must be > 0, got {geom.drag_tangent_Ct}")
    if not (geom.drag_normal_Cn > geom.drag_tangent_Ct):
        errors.append(
            "anisotropy required: drag_normal_Cn must exceed drag_tangent_Ct, got "
            f"Cn={geom.drag_normal_Cn}, Ct={geom.drag_tangent_Ct}"
        )
    if not (0.0 < geom.joint_limit <= math.pi / 2):
        errors.append(f"joint_limit must be in (0, pi/2], got {geom.joint_limit}")
    return errors


def require_valid_geometry(geom: RobotGeometry) -> RobotGeometry:
    errors = validate_geometry(geom)
    if errors:
        raise GeometryError("; ".join(errors))
    return geom


DEFAULT_GEOMETRY = RobotGeometry()


@dataclass(frozen=True)
class RobotState:
    """Full simulation state. Immutable; updates go through ``replace``."""

    head_pose: tuple[float, float, float] = (0.0, 0.0, 0.0)  # x, y, heading
    joint_angles: tuple[float, ...] = ()
    joint_velocities: tuple[float, ...] = ()
    depth_z: float = 0.0
    heave_rate: float = 0.0
    pitch: float = 0.0
    pitch_rate: float = 0.0
    fills: tuple[float, ...] = ()
    sim_time: float = 0.0

    def replace(self, **kw) -> "RobotState":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        return {
            "head_pose": list(self.head_pose),
            "joint_angles": list(self.joint_angles),
            "joint_velocities": list(self.joint_velocities),
            "depth_z": self.depth_z,
            "heave_rate": self.heave_rate,
            "pitch": self.pitch,
            "pitch_rate": self.pitch_rate,
            "fills": list(self.fills),
            "sim_time": self.sim_time,
        }

    @staticmethod
    def from_dict(d: dict) -> "RobotState":
        return RobotState(
            head_pose=tuple(d["head_pose"]),
            joint_angles=tuple(d["joint_angles"]),
            joint_velocities=tuple(d["joint_velocities"]),
            depth_z=d["depth_z"],
            heave_rate=d["heave_rate"],
            pitch=d["pitch"],
            pitch_rate=d["pitch_rate"],
            fills=tuple(d["fills"]),
            sim_time=d["sim_time"],
        )


def initial_state(geom: RobotGeometry, gait: GaitParams | None = None,
                  head_pose: tuple[float, float, float] = (0.0, 0.0, 0.0),
                  fills: float | Sequence[float] = 0.5) -> RobotState:
    """State at t=0: joints on the gait template (or straight), at rest."""
    n = geom.joint_count
    if gait is not None:
        from . import gait as gait_mod  # local import to avoid a cycle
        angles = tuple(float(a) for a in gait_mod.suggested_profile(gait, 0.0))
    else:
        angles = (0.0,) * n
    if isinstance(fills, (int, float)):
        f = (float(fills),) * geom.module_count
    else:
        f = tuple(float(v) for v in fills)
    return RobotState(
        head_pose=tuple(float(v) for v in head_pose),
        joint_angles=angles,
        joint_velocities=(0.0,) * n,
        fills=f,
    )


@dataclass(frozen=True)
class ChainPose:
    """Planar pose of every link: midpoints, orientations, pivot points."""

    mids: np.ndarray       # (n_links, 2)
    headings: np.ndarray   # (n_links,)
    pivots: np.ndarray     # (n_links - 1, 2)

    @property
    def n_links(self) -> int:
        return len(self.headings)

    def poses(self) -> list[tuple[float, float, float]]:
        return [(float(m[0]), float(m[1]), float(h))
                for m, h in zip(self.mids, self.headings)]


def forward_kinematics(head_pose: Sequence[float],
                       joint_angles: Sequence[float],
                       geom: RobotGeometry) -> ChainPose:
    """Chain layout from head pose and joint angles.

    Link 0 midpoint sits at ``head_pose``; each joint pivot lies half a link
    pitch behind the preceding midpoint, and link i+1's orientation is link
    i's plus joint_angles[i]. Raises JointLimitError outside the joint limit.
    """
    angles = np.asarray(joint_angles, dtype=float)
    if angles.size != geom.joint_count:
        raise ValueError(f"expected {geom.joint_count} joint angles, got {angles.size}")
    over = np.abs(angles) > geom.joint_limit + 1e-12
    if np.any(over):
        idx = int(np.argmax(over))
        raise JointLimitError(
            f"joint {idx} angle {angles[idx]:.4f} rad exceeds limit {geom.joint_limit:.4f}"
        )

    half = geom.link_pitch / 2.0
    n = geom.module_count
    mids = np.empty((n, 2))
    headings = np.empty(n)
    pivots = np.empty((n - 1, 2))

    x, y, th = float(head_pose[0]), float(head_pose[1]), float(head_pose[2])
    mids[0] = (x, y)
    headings[0] = th
    for i in range(n - 1):
        # pivot behind link i, then next midpoint behind the pivot
        pivots[i] = mids[i] - half * np.array([math.cos(headings[i]), math.sin(headings[i])])
        headings[i + 1] = headings[i] + angles[i]
        mids[i + 1] = pivots[i] - half * np.array(
            [math.cos(headings[i + 1]), math.sin(headings[i + 1])]
        )
    return ChainPose(mids=mids, headings=headings, pivots=pivots)


def joint_torques_from_link_wrenches(chain: ChainPose,
                                     forces: np.ndarray,
                                     torques_about_mid: np.ndarray) -> np.ndarray:
    """Generalized torque on each joint from per-link wrenches.

    ``forces`` is (n_links, 2) applied at link midpoints and
    ``torques_about_mid`` (n_links,) the accompanying couples. Joint i feels
    every wrench on links behind it (indices > i), via the pivot-arm cross
    product (planar Jacobian transpose).
    """
    n_j = chain.n_links - 1
    out = np.zeros(n_j)
    for i in range(n_j):
        arm = chain.mids[i + 1:] - chain.pivots[i]          # (n_links-i-1, 2)
        f = forces[i + 1:]
        cross = arm[:, 0] * f[:, 1] - arm[:, 1] * f[:, 0]
        out[i] = float(np.sum(cross) + np.sum(torques_about_mid[i + 1:]))
    return out
