"""Bilateral cable actuation: exact lengths, the compliance slack policy,
inversion of commanded lengths into feasible joint-angle intervals, and the
joint response inside those intervals.

Cables are inextensible and pull only, so a commanded length L bounds the
joint one-sidedly: the geometric anchor distance must satisfy len(alpha) <= L.
The left cable length grows with alpha, the right shrinks, so the left cable
caps alpha from above and the right from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ComplianceParams, GaitParams, RobotGeometry


class InfeasibleCableCommand(ValueError):
    """Commanded cable lengths admit no joint angle within the joint limit."""


@dataclass(frozen=True)
class CablePair:
    """Commanded (or geometric) left/right cable lengths for one joint, m."""

    left_length: float
    right_length: float

    def validate(self, geom: RobotGeometry) -> None:
        limit = 1.5 * anchor_span(geom)
        for name, v in (("left_length", self.left_length), ("right_length", self.right_length)):
            if not 0.0 < v <= limit:
                raise ValueError(f"{name}={v} outside (0, {limit:.4f}]")


@dataclass(frozen=True)
class AngleInterval:
    """Feasible joint-angle range implied by a pair of slack-capable cables."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"lo {self.lo} > hi {self.hi}")

    def clamp(self, alpha: float) -> float:
        return min(max(alpha, self.lo), self.hi)

    @property
    def degenerate(self) -> bool:
        return self.hi - self.lo < 1e-12


@dataclass(frozen=True)
class JointDynamics:
    """Lumped second-order response of a joint left free inside its interval.

    ``stall_torque`` caps what the cable motor can exert holding a bound;
    external torque beyond it back-drives the joint (overload yielding).
    """

    inertia: float = 0.01       # kg*m^2
    damping: float = 0.5        # N*m*s/rad
    stall_torque: float = 1.4   # N*m, per Table-I cable motor rating

    def __post_init__(self) -> None:
        if self.inertia <= 0 or self.damping <= 0 or self.stall_torque <= 0:
            raise ValueError("inertia, damping and stall_torque must be > 0")


def anchor_span(geom: RobotGeometry) -> float:
    """2*sqrt(Lc^2 + Lj^2): cable length when the anchors are farthest."""
    return 2.0 * math.hypot(geom.cable_lateral_offset_Lc, geom.joint_half_length_Lj)


def anchor_angle(geom: RobotGeometry) -> float:
    """atan(Lc / Lj), the anchor diagonal's angle off the module axis."""
    return math.atan2(geom.cable_lateral_offset_Lc, geom.joint_half_length_Lj)


def exact_cable_lengths(alpha: float, geom: RobotGeometry) -> CablePair:
    """Geometric cable lengths that pin the joint at exactly ``alpha``."""
    if abs(alpha) > geom.joint_limit + 1e-12:
        raise ValueError(f"alpha {alpha} exceeds joint limit {geom.joint_limit}")
    s = anchor_span(geom)
    t0 = anchor_angle(geom)
    return CablePair(
        left_length=s * math.cos(-alpha / 2.0 + t0),
        right_length=s * math.cos(alpha / 2.0 + t0),
    )


def commanded_cable_lengths(alpha_suggested: float, c: ComplianceParams,
                            p: GaitParams, geom: RobotGeometry,
                            joint_index: int = 0) -> CablePair:
    """Slack policy: exact on the taut side, anchored-plus-slack otherwise.

    gamma = (2G - 1) * A. At G=0 both branches are exact for the whole gait
    range; at G=1 both cables carry slack proportional to the distance from
    the envelope edge. Output is clamped to the 1.5x-span allowance.
    """
    A = p.amplitude_A
    g = (2.0 * c.g_for_joint(joint_index) - 1.0) * A
    l0 = c.slack_gain_l0
    s = anchor_span(geom)

    if alpha_suggested <= -g:
        left = exact_cable_lengths(alpha_suggested, geom).left_length
    else:
        left = exact_cable_lengths(-min(A, g), geom).left_length + l0 * (g + alpha_suggested)
    if alpha_suggested >= g:
        right = exact_cable_lengths(alpha_suggested, geom).right_length
    else:
        right = exact_cable_lengths(min(A, g), geom).right_length + l0 * (g - alpha_suggested)

    cap = 1.5 * s  # lengths beyond the span are already unconstraining
    return CablePair(left_length=min(left, cap), right_length=min(right, cap))


def angle_interval_from_cables(pair: CablePair, geom: RobotGeometry) -> AngleInterval:
    """Invert a cable pair into the feasible joint-angle interval.

    hi comes from the left cable, lo from the right; both are clipped to the
    joint limit. Raises InfeasibleCableCommand when a cable is shorter than
    any reachable anchor distance, or the two bounds cross.
    """
    pair.validate(geom)
    s = anchor_span(geom)
    t0 = anchor_angle(geom)
    jl = geom.joint_limit

    hi = 2.0 * (t0 - math.acos(min(1.0, pair.left_length / s)))
    lo = 2.0 * (math.acos(min(1.0, pair.right_length / s)) - t0)

    tol = 1e-9
    if hi < -jl - tol:
        raise InfeasibleCableCommand(
            f"left cable {pair.left_length:.4f} m shorter than reachable at joint limit"
        )
    if lo > jl + tol:
        raise InfeasibleCableCommand(
            f"right cable {pair.right_length:.4f} m shorter than reachable at joint limit"
        )
    if lo > hi + tol:
        raise InfeasibleCableCommand(
            f"cable pair over-constrains the joint: lo {lo:.4f} > hi {hi:.4f}"
        )

    hi = min(max(hi, -jl), jl)
    lo = min(max(lo, -jl), jl)
    if lo > hi:  # float-level crossing after the clip
        lo = hi = 0.5 * (lo + hi)
    return AngleInterval(lo=lo, hi=hi)


def resolve_joint_angle(interval: AngleInterval, alpha_prev: float,
                        alpha_rate_prev: float, tau_ext: float, dt: float,
                        dyn: JointDynamics = JointDynamics(),
                        hard_limit: float = math.pi / 2) -> tuple[float, float]:
    """One damped-inertia step of the free joint inside its cable interval.

    Integrates I*dw/dt = tau - b*w semi-implicitly. A violated bound is
    enforced (position projected, realized rate returned) only while the
    motor can hold it, i.e. |tau_ext| <= stall_torque; past stall the joint
    back-drives under the excess torque, and once outside the interval the
    taut cable keeps pulling it back at the stall limit. ``hard_limit`` is
    the mechanical joint stop and is never exceeded.

    On projection the returned rate is the realized (alpha_new-alpha_prev)/dt:
    zero against a static bound at rest, the bound's own rate when the
    command drags a pinned (degenerate-interval) joint.
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")

    def integrate(tau: float) -> tuple[float, float]:
        r = alpha_rate_prev + dt * (tau - dyn.damping * alpha_rate_prev) / dyn.inertia
        return alpha_prev + dt * r, r

    tol = 1e-12
    if alpha_prev > interval.hi + tol:      # beyond the left-cable bound
        alpha, rate = integrate(tau_ext - dyn.stall_torque)
        if alpha < interval.hi:             # pulled back onto the bound
            alpha = interval.hi
            rate = (alpha - alpha_prev) / dt
    elif alpha_prev < interval.lo - tol:
        alpha, rate = integrate(tau_ext + dyn.stall_torque)
        if alpha > interval.lo:
            alpha = interval.lo
            rate = (alpha - alpha_prev) / dt
    else:
        alpha, rate = integrate(tau_ext)
        if alpha > interval.hi:
            if tau_ext <= dyn.stall_torque:
                alpha = interval.hi
                rate = (alpha - alpha_prev) / dt
            else:
                alpha, rate = integrate(tau_ext - dyn.stall_torque)
                if alpha < interval.hi:
                    alpha = interval.hi
                    rate = (alpha - alpha_prev) / dt
        elif alpha < interval.lo:
            if -tau_ext <= dyn.stall_torque:
                alpha = interval.lo
                rate = (alpha - alpha_prev) / dt
            else:
                alpha, rate = integrate(tau_ext + dyn.stall_torque)
                if alpha > interval.lo:
                    alpha = interval.lo
                    rate = (alpha - alpha_prev) / dt

    if alpha > hard_limit:                  # mechanical stop
        alpha = hard_limit
        rate = (alpha - alpha_prev) / dt
    elif alpha < -hard_limit:
        alpha = -hard_limit
        rate = (alpha - alpha_prev) / dt
    return alpha, rate


def cable_tension_flags(interval: AngleInterval, alpha: float,
                        tol: float = 1e-9) -> tuple[bool, bool]:
    """(left_taut, right_taut): which bound the joint currently rides."""
    return (interval.hi - alpha <= tol, alpha - interval.lo <= tol)
