"""Traveling-wave joint-angle template (serpenoid) with turning offset."""

from __future__ import annotations

import math

import numpy as np

from .core import TWO_PI, GaitParams


def suggested_angle(p: GaitParams, joint_index: int, t: float) -> float:
    """Template angle for one joint at simulation time t (seconds).

    A * sin(2*pi*xi*i/N - 2*pi*omega*t) + phi, bounded in [phi - A, phi + A].
    """
    if not 0 <= joint_index < p.joint_count_N:
        raise IndexError(
            f"joint_index {joint_index} out of range [0, {p.joint_count_N})"
        )
    phase = TWO_PI * p.spatial_freq_xi * joint_index / p.joint_count_N \
        - TWO_PI * p.temporal_freq_omega * t
    return p.amplitude_A * math.sin(phase) + p.offset_phi


def suggested_profile(p: GaitParams, t: float) -> np.ndarray:
    """All N template angles at time t (vectorized suggested_angle)."""
    i = np.arange(p.joint_count_N)
    phase = TWO_PI * p.spatial_freq_xi * i / p.joint_count_N \
        - TWO_PI * p.temporal_freq_omega * t
    return p.amplitude_A * np.sin(phase) + p.offset_phi
