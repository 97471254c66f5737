"""Anisotropic resistive fluid forces on each link and the quasi-static
planar force/torque balance that turns shape change into body motion.

Drag is linear in velocity with distinct tangential/normal coefficients, so
the net wrench is affine in the unknown body twist and the balance is a 3x3
linear solve. The resistance matrix is negative definite whenever Cn, Ct > 0,
which makes the solution unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import ChainPose, RobotGeometry, RobotState, forward_kinematics

_ROT90 = np.array([[0.0, -1.0], [1.0, 0.0]])
# Simpson weights over {tail end, midpoint, nose end} of a link
_QUAD_S = np.array([-0.5, 0.0, 0.5])
_QUAD_W = np.array([1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0])


class SimulationDiverged(RuntimeError):
    """Raised when integration produces non-finite state."""

    def __init__(self, message: str, last_state: RobotState):
        super().__init__(message)
        self.last_state = last_state


@dataclass(frozen=True)
class LinkWrench:
    """Planar force on one link plus torque about the world-frame origin."""

    fx: float
    fy: float
    torque_about_origin: float

    def torque_about(self, point: Sequence[float]) -> float:
        px, py = float(point[0]), float(point[1])
        return self.torque_about_origin - (px * self.fy - py * self.fx)


def link_drag(link_pose: Sequence[float], link_velocity: Sequence[float],
              geom: RobotGeometry) -> LinkWrench:
    """Resistive wrench on a single link.

    ``link_pose`` is the midpoint (x, y, heading); ``link_velocity`` the
    midpoint's (vx, vy, omega). Force density -Ct*(v.t)t - Cn*(v.n)n per unit
    length is integrated by Simpson quadrature over the link's wetted length
    (exact for this linear drag law on a rigid link).
    """
    x, y, th = (float(v) for v in link_pose)
    vx, vy, om = (float(v) for v in link_velocity)
    ell = geom.link_hydro_length
    tang = np.array([math.cos(th), math.sin(th)])
    mid = np.array([x, y])

    pts = mid[None, :] + (_QUAD_S * ell)[:, None] * tang[None, :]
    vel = np.array([vx, vy])[None, :] + om * (pts - mid) @ _ROT90.T
    f = _drag_density(vel, tang, geom)

    w = _QUAD_W * ell
    force = w @ f
    torque = float(np.sum(w * (pts[:, 0] * f[:, 1] - pts[:, 1] * f[:, 0])))
    return LinkWrench(fx=float(force[0]), fy=float(force[1]), torque_about_origin=torque)


def _drag_density(vel: np.ndarray, tang: np.ndarray, geom: RobotGeometry) -> np.ndarray:
    vt = vel @ tang
    v_tang = vt[:, None] * tang[None, :]
    v_norm = vel - v_tang
    return -geom.drag_tangent_Ct * v_tang - geom.drag_normal_Cn * v_norm


def _quad_geometry(chain: ChainPose, geom: RobotGeometry):
    """All quadrature points, tangents, weights and link indices, stacked."""
    ell = geom.link_hydro_length
    tang = np.stack([np.cos(chain.headings), np.sin(chain.headings)], axis=1)
    pts = (chain.mids[:, None, :] + (_QUAD_S * ell)[None, :, None] * tang[:, None, :])
    n = chain.n_links
    pts = pts.reshape(n * 3, 2)
    tangs = np.repeat(tang, 3, axis=0)
    weights = np.tile(_QUAD_W * ell, n)
    link_idx = np.repeat(np.arange(n), 3)
    return pts, tangs, weights, link_idx


def _point_velocities(chain: ChainPose, pts: np.ndarray, link_idx: np.ndarray,
                      body_velocity: np.ndarray, shape_rates: np.ndarray) -> np.ndarray:
    """World velocity of each quadrature point.

    Shape motion rotates everything behind joint i about its pivot with the
    head held fixed; the rigid twist (about the head midpoint) adds on top.
    """
    vel = np.zeros_like(pts)
    for i, rate in enumerate(shape_rates):
        if rate == 0.0:
            continue
        mask = link_idx > i
        vel[mask] += rate * (pts[mask] - chain.pivots[i]) @ _ROT90.T
    vx, vy, om = body_velocity
    vel += np.array([vx, vy])[None, :] + om * (pts - chain.mids[0]) @ _ROT90.T
    return vel


def total_drag_wrench(chain: ChainPose, body_velocity: Sequence[float],
                      shape_rates: Sequence[float], geom: RobotGeometry,
                      ref: Sequence[float] | None = None) -> np.ndarray:
    """Net (Fx, Fy, torque-about-ref) drag wrench for the whole chain.

    ``ref`` defaults to the head midpoint (the body-solve reference).
    """
    u = np.asarray(body_velocity, dtype=float)
    rates = np.asarray(shape_rates, dtype=float)
    ref_pt = chain.mids[0] if ref is None else np.asarray(ref, dtype=float)

    pts, tangs, weights, link_idx = _quad_geometry(chain, geom)
    vel = _point_velocities(chain, pts, link_idx, u, rates)
    f = _drag_density_multi(vel, tangs, geom)

    force = weights @ f
    arm = pts - ref_pt
    torque = float(np.sum(weights * (arm[:, 0] * f[:, 1] - arm[:, 1] * f[:, 0])))
    return np.array([force[0], force[1], torque])


def _drag_density_multi(vel: np.ndarray, tangs: np.ndarray, geom: RobotGeometry) -> np.ndarray:
    vt = np.sum(vel * tangs, axis=1)
    v_tang = vt[:, None] * tangs
    v_norm = vel - v_tang
    return -geom.drag_tangent_Ct * v_tang - geom.drag_normal_Cn * v_norm


def solve_body_velocity(chain: ChainPose, shape_rates: Sequence[float],
                        external_wrenches: Sequence[LinkWrench] | None,
                        geom: RobotGeometry) -> np.ndarray:
    """Body twist (vx, vy, omega) about the head midpoint that zeroes the
    net drag + external wrench.

    The drag wrench is affine in the twist; its linear part (the resistance
    matrix) is assembled analytically in one quadrature pass and must be
    invertible.
    """
    rates = np.asarray(shape_rates, dtype=float)
    head = chain.mids[0]

    pts, tangs, weights, link_idx = _quad_geometry(chain, geom)
    v_shape = _point_velocities(chain, pts, link_idx, np.zeros(3), rates)

    # force density f = M v with M = -Cn I + (Cn - Ct) t t^T per unit length
    cn, ct = geom.drag_normal_Cn, geom.drag_tangent_Ct
    m = (cn - ct) * tangs[:, :, None] * tangs[:, None, :]  # (n, 2, 2)
    m[:, 0, 0] -= cn
    m[:, 1, 1] -= cn

    arm = pts - head
    jarm = arm @ _ROT90.T                     # rotation arm: v += omega * jarm
    wm = weights[:, None, None] * m

    resist = np.empty((3, 3))
    resist[0:2, 0:2] = wm.sum(axis=0)
    m_jarm = np.einsum("nij,nj->ni", wm, jarm)
    resist[0:2, 2] = m_jarm.sum(axis=0)
    jarm_m = np.einsum("ni,nij->nj", jarm, wm)
    resist[2, 0:2] = jarm_m.sum(axis=0)
    resist[2, 2] = float(np.einsum("ni,nij,nj->", jarm, wm, jarm))

    f_shape = np.einsum("nij,nj->ni", wm, v_shape)
    w0 = np.empty(3)
    w0[0:2] = f_shape.sum(axis=0)
    w0[2] = float(np.sum(jarm * f_shape))

    rhs = -w0
    if external_wrenches:
        for wr in external_wrenches:
            rhs -= np.array([wr.fx, wr.fy, wr.torque_about(head)])

    det = np.linalg.det(resist)
    assert abs(det) > 1e-18, "drag resistance matrix is singular"
    return np.linalg.solve(resist, rhs)


def link_midpoint_velocities(chain: ChainPose, body_velocity: Sequence[float],
                             shape_rates: Sequence[float]) -> np.ndarray:
    """(n_links, 3) midpoint (vx, vy, omega) from a twist plus joint rates."""
    u = np.asarray(body_velocity, dtype=float)
    rates = np.asarray(shape_rates, dtype=float)
    n = chain.n_links
    out = np.zeros((n, 3))
    out[:, 0:2] = u[0:2] + u[2] * (chain.mids - chain.mids[0]) @ _ROT90.T
    out[:, 2] = u[2]
    for i, rate in enumerate(rates):
        if rate == 0.0:
            continue
        out[i + 1:, 0:2] += rate * (chain.mids[i + 1:] - chain.pivots[i]) @ _ROT90.T
        out[i + 1:, 2] += rate
    return out


def step_planar(state: RobotState, resolved_angles: Sequence[float],
                resolved_rates: Sequence[float],
                contact_wrenches: Sequence[LinkWrench] | None,
                dt: float, geom: RobotGeometry) -> tuple[RobotState, np.ndarray]:
    """Advance the planar pose one step; returns (new state, body twist).

    Joint angles/rates are replaced by the resolved values, the head pose is
    advanced semi-implicitly by the solved twist. Raises SimulationDiverged
    (carrying the last valid state) if anything goes non-finite.
    """
    if not 0.0 < dt <= 0.02:
        raise ValueError(f"dt must be in (0, 0.02], got {dt}")
    chain = forward_kinematics(state.head_pose, resolved_angles, geom)
    u = solve_body_velocity(chain, resolved_rates, contact_wrenches, geom)

    x, y, th = state.head_pose
    new_pose = (x + dt * u[0], y + dt * u[1], th + dt * u[2])
    if not all(math.isfinite(v) for v in new_pose):
        raise SimulationDiverged("planar pose diverged", state)

    new_state = state.replace(
        head_pose=new_pose,
        joint_angles=tuple(float(a) for a in resolved_angles),
        joint_velocities=tuple(float(r) for r in resolved_rates),
        sim_time=state.sim_time + dt,
    )
    return new_state, u
