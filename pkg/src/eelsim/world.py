"""Obstacle fields (hexagonal post lattices, depth-band barriers), penalty
contact between capsule links and circular posts, and scenario outcome
classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import ChainPose, RobotGeometry, joint_torques_from_link_wrenches
from .hydro import LinkWrench


@dataclass(frozen=True)
class DepthBarrier:
    """Blocks forward progress over an x range while depth is inside a band."""

    z_lo: float
    z_hi: float
    x_lo: float
    x_hi: float

    def blocks(self, depth_z: float) -> bool:
        return self.z_lo <= depth_z <= self.z_hi


@dataclass(frozen=True)
class ObstacleField:
    posts: tuple[tuple[float, float, float], ...] = ()   # (cx, cy, radius)
    lateral_barriers: tuple[DepthBarrier, ...] = ()
    bounds: tuple[float, float, float, float] | None = None  # x_lo, y_lo, x_hi, y_hi
    water_depth: float | None = None

    def __post_init__(self) -> None:
        for cx, cy, r in self.posts:
            if r <= 0:
                raise ValueError(f"post radius must be > 0, got {r}")
            if self.bounds is not None:
                x0, y0, x1, y1 = self.bounds
                if not (x0 <= cx <= x1 and y0 <= cy <= y1):
                    raise ValueError(f"post ({cx}, {cy}) outside bounds {self.bounds}")

    @property
    def far_boundary_x(self) -> float | None:
        if self.bounds is not None:
            return self.bounds[2]
        xs = [p[0] + p[2] for p in self.posts] + [b.x_hi for b in self.lateral_barriers]
        return max(xs) if xs else None


EMPTY_FIELD = ObstacleField()


def build_hex_lattice(spacing: float, post_diameter: float, rows: int, cols: int,
                      origin: Sequence[float] = (0.0, 0.0)) -> ObstacleField:
    """Triangular lattice of circular posts, rows advancing along +x.

    Row pitch is spacing*sqrt(3)/2; odd rows shift half a spacing in y.
    Columns are centered on the origin's y, and post (0, 0) of a 1x1 lattice
    sits exactly at the origin.
    """
    if spacing <= post_diameter:
        raise ValueError(
            f"spacing {spacing} must exceed post diameter {post_diameter} (posts overlap)"
        )
    ox, oy = float(origin[0]), float(origin[1])
    r = post_diameter / 2.0
    posts = []
    for i in range(rows):
        x = ox + i * spacing * math.sqrt(3.0) / 2.0
        y_shift = spacing / 2.0 if i % 2 else 0.0
        for j in range(cols):
            y = oy + (j - (cols - 1) / 2.0) * spacing + y_shift
            posts.append((x, y, r))
    margin = spacing
    xs = [p[0] for p in posts]
    ys = [p[1] for p in posts]
    bounds = (min(xs) - margin, min(ys) - margin, max(xs) + margin, max(ys) + margin)
    return ObstacleField(posts=tuple(posts), bounds=bounds)


@dataclass(frozen=True)
class ContactParams:
    stiffness: float = 5000.0   # N/m
    damping: float = 50.0       # N*s/m
    friction_mu: float = 0.2
    force_cap: float = 25.0     # N per contact; actuators cannot brace harder

    def scaled(self, k_scale: float) -> "ContactParams":
        return ContactParams(stiffness=self.stiffness * k_scale,
                             damping=self.damping, friction_mu=self.friction_mu,
                             force_cap=self.force_cap)


@dataclass(frozen=True)
class ContactResult:
    wrenches: tuple[LinkWrench, ...]          # per link, torque about world origin
    joint_torques: np.ndarray                 # generalized torque per joint
    flags: tuple[bool, ...]                   # per link: any contact
    post_reactions: tuple[tuple[int, float, float], ...]  # (post index, fx, fy) on the post

    @property
    def any_contact(self) -> bool:
        return any(self.flags)


def contact_forces(chain: ChainPose, f: ObstacleField, geom: RobotGeometry,
                   link_velocities: np.ndarray | None = None,
                   params: ContactParams = ContactParams(),
                   depth_z: float = 0.0) -> ContactResult:
    """Penalty contact between every link capsule and every post/barrier.

    Normal force k*delta plus dashpot on the closing rate, plus Coulomb
    friction mu*|Fn| opposing tangential sliding. Velocities default to zero
    (static checks); pass per-link midpoint (vx, vy, omega) for the damped
    and friction terms.
    """
    n = chain.n_links
    if link_velocities is None:
        link_velocities = np.zeros((n, 3))
    cap_r = geom.module_diameter / 2.0
    half = geom.link_hydro_length / 2.0
    tang = np.stack([np.cos(chain.headings), np.sin(chain.headings)], axis=1)
    p0s = chain.mids - half * tang
    p1s = chain.mids + half * tang

    forces = np.zeros((n, 2))
    torques_mid = np.zeros(n)
    torques_origin = np.zeros(n)
    flags = [False] * n
    reactions: list[tuple[int, float, float]] = []

    if f.posts:
        centers = np.array([(p[0], p[1]) for p in f.posts])
        radii = np.array([p[2] for p in f.posts])

    for k in range(n):
        if f.posts:
            # closest point on this link's axis segment to every post center
            d = p1s[k] - p0s[k]
            denom = float(d @ d)
            tt = np.clip((centers - p0s[k]) @ d / denom, 0.0, 1.0) if denom else \
                np.zeros(len(centers))
            q = p0s[k] + tt[:, None] * d
            sep = q - centers
            dist = np.hypot(sep[:, 0], sep[:, 1])
            delta = (radii + cap_r) - dist
            hit = np.flatnonzero(delta > 0.0)
            for pi in hit:  # ascending post order keeps sums deterministic
                qi = q[pi]
                dist_i = dist[pi]
                n_hat = sep[pi] / dist_i if dist_i > 1e-12 else np.array([1.0, 0.0])
                vx, vy, om = link_velocities[k]
                v_q = np.array([vx, vy]) + om * np.array(
                    [-(qi[1] - chain.mids[k][1]), qi[0] - chain.mids[k][0]])
                v_n = float(v_q @ n_hat)
                fn_mag = params.stiffness * delta[pi] - params.damping * v_n
                fn_mag = min(max(fn_mag, 0.0), params.force_cap)  # pushes only, braced
                t_hat = np.array([-n_hat[1], n_hat[0]])
                v_t = float(v_q @ t_hat)
                ft_mag = -params.friction_mu * fn_mag * math.copysign(1.0, v_t) \
                    if abs(v_t) > 1e-9 else 0.0
                fvec = fn_mag * n_hat + ft_mag * t_hat

                forces[k] += fvec
                arm_mid = qi - chain.mids[k]
                torques_mid[k] += arm_mid[0] * fvec[1] - arm_mid[1] * fvec[0]
                torques_origin[k] += qi[0] * fvec[1] - qi[1] * fvec[0]
                flags[k] = True
                reactions.append((int(pi), float(-fvec[0]), float(-fvec[1])))

        for b in f.lateral_barriers:
            if not b.blocks(depth_z):
                continue
            lead_x = max(p0s[k][0], p1s[k][0]) + cap_r
            trail_x = min(p0s[k][0], p1s[k][0]) - cap_r
            if lead_x <= b.x_lo or trail_x >= b.x_hi:  # not reached / fully past
                continue
            pen = min(lead_x, b.x_hi) - b.x_lo
            vx = link_velocities[k][0]
            fx = -min(params.stiffness * pen + params.damping * max(vx, 0.0),
                      params.force_cap)
            fvec = np.array([fx, 0.0])
            forces[k] += fvec
            q = chain.mids[k]  # lumped at the midpoint
            torques_origin[k] += q[0] * fvec[1] - q[1] * fvec[0]
            flags[k] = True

    joint_tau = joint_torques_from_link_wrenches(chain, forces, torques_mid)
    wrenches = tuple(
        LinkWrench(fx=float(forces[k][0]), fy=float(forces[k][1]),
                   torque_about_origin=float(torques_origin[k]))
        for k in range(n)
    )
    return ContactResult(wrenches=wrenches, joint_torques=joint_tau,
                         flags=tuple(flags), post_reactions=tuple(reactions))


@dataclass(frozen=True)
class OutcomeCriteria:
    success_x: float | None = None
    progress_eps: float = 0.02       # m of head progress per window
    progress_window: float | None = None  # s; None disables stuck detection
    tau_max: float = 1.4             # N*m, motor stall torque
    t_over: float = 2.0              # s of continuous overload


@dataclass(frozen=True)
class Outcome:
    kind: str       # Success | Stuck | Overload | Timeout
    time: float
    evidence: str = ""

    KINDS = ("Success", "Stuck", "Overload", "Timeout")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown outcome kind {self.kind!r}")


class OutcomeTracker:
    """Streaming outcome classifier; feed records in sim-time order."""

    def __init__(self, criteria: OutcomeCriteria):
        self.criteria = criteria
        self._history: list[tuple[float, float]] = []  # (t, head x)
        self._overload_since: float | None = None
        self.outcome: Outcome | None = None

    def update(self, sim_time: float, head_x: float,
               max_joint_torque: float) -> Outcome | None:
        if self.outcome is not None:
            return self.outcome
        c = self.criteria

        if c.success_x is not None and head_x >= c.success_x:
            self.outcome = Outcome("Success", sim_time,
                                   f"head x {head_x:.3f} past {c.success_x:.3f}")
            return self.outcome

        if max_joint_torque > c.tau_max:
            if self._overload_since is None:
                self._overload_since = sim_time
            elif sim_time - self._overload_since >= c.t_over:
                self.outcome = Outcome(
                    "Overload", sim_time,
                    f"joint torque > {c.tau_max} N*m since t={self._overload_since:.2f}")
                return self.outcome
        else:
            self._overload_since = None

        if c.progress_window is not None:
            self._history.append((sim_time, head_x))
            w = c.progress_window
            while len(self._history) > 1 and self._history[0][0] < sim_time - w - 1e-9:
                self._history.pop(0)
            t0, x0 = self._history[0]
            if sim_time - t0 >= w - 1e-9 and head_x - x0 < c.progress_eps:
                self.outcome = Outcome(
                    "Stuck", sim_time,
                    f"progress {head_x - x0:.4f} m < {c.progress_eps} m over {w:.1f} s")
                return self.outcome
        return None

    def finish(self, sim_time: float) -> Outcome:
        if self.outcome is None:
            self.outcome = Outcome("Timeout", sim_time, "scenario duration reached")
        return self.outcome


def classify_outcome(stream: Iterable, criteria: OutcomeCriteria) -> Outcome:
    """Classify a full telemetry stream (records need sim_time, state, torques)."""
    tracker = OutcomeTracker(criteria)
    last_t = 0.0
    for rec in stream:
        last_t = rec.sim_time
        head_x = rec.state.head_pose[0]
        tau = max((abs(v) for v in rec.joint_torques), default=0.0)
        out = tracker.update(last_t, head_x, tau)
        if out is not None:
            return out
    return tracker.finish(last_t)
