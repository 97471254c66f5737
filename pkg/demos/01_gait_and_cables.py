"""Serpenoid template and bilateral cable actuation.

Shows the traveling-wave joint profile, the exact left/right cable lengths
as a function of joint angle, and how the compliance setting G turns cable
commands into feasible joint-angle intervals over a gait cycle.

Writes PNGs into demos/out/.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eelsim import (ComplianceParams, GaitParams, DEFAULT_GEOMETRY,
                    angle_interval_from_cables, commanded_cable_lengths,
                    exact_cable_lengths, suggested_profile)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

gait = GaitParams(amplitude_A=math.radians(30), spatial_freq_xi=0.5,
                  temporal_freq_omega=0.2, joint_count_N=3)
geom = DEFAULT_GEOMETRY

# 1. traveling wave: each joint is the same sine, delayed down the body
ts = np.linspace(0, 10, 400)
fig, ax = plt.subplots(figsize=(7, 3))
for i in range(gait.joint_count_N):
    ax.plot(ts, [math.degrees(suggested_profile(gait, t)[i]) for t in ts],
            label=f"joint {i}")
ax.set(xlabel="time (s)", ylabel="suggested angle (deg)",
       title="serpenoid template: head-to-tail traveling wave")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "gait_wave.png", dpi=120)
print(f"joint 1 at t=0: {math.degrees(suggested_profile(gait, 0)[1]):.2f} deg "
      "(30*sin(pi/3) = 25.98)")

# 2. cable lengths vs joint angle
alphas = np.linspace(-math.radians(60), math.radians(60), 200)
pairs = [exact_cable_lengths(a, geom) for a in alphas]
fig, ax = plt.subplots(figsize=(6, 3.5))
ax.plot(np.degrees(alphas), [p.left_length for p in pairs], label="left cable")
ax.plot(np.degrees(alphas), [p.right_length for p in pairs], label="right cable")
ax.axhline(2 * geom.joint_half_length_Lj, ls=":", c="gray", lw=0.8)
ax.set(xlabel="joint angle (deg)", ylabel="cable length (m)",
       title="anchor-to-anchor cable lengths (both 2*Lj at zero)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "cable_lengths.png", dpi=120)

# 3. feasible joint intervals over one gait cycle for the three G states
lat = GaitParams(amplitude_A=math.radians(50), spatial_freq_xi=0.6,
                 temporal_freq_omega=0.1, joint_count_N=3)
fig, axes = plt.subplots(1, 3, figsize=(11, 3.2), sharey=True)
for ax, G in zip(axes, (0.0, 0.5, 1.0)):
    comp = ComplianceParams(G=G, slack_gain_l0=0.1)
    ts = np.linspace(0, 10, 200)
    sugg, los, his = [], [], []
    for t in ts:
        a_s = float(suggested_profile(lat, t)[1])
        iv = angle_interval_from_cables(
            commanded_cable_lengths(a_s, comp, lat, geom), geom)
        sugg.append(math.degrees(a_s))
        los.append(math.degrees(iv.lo))
        his.append(math.degrees(iv.hi))
    ax.fill_between(ts, los, his, alpha=0.3, label="feasible interval")
    ax.plot(ts, sugg, "k--", lw=1, label="suggested")
    ax.set(title=f"G = {G}", xlabel="time (s)")
axes[0].set_ylabel("joint angle (deg)")
axes[0].legend(loc="lower left", fontsize=8)
fig.suptitle("compliance: slack cables turn commands into one- or two-sided bounds")
fig.tight_layout()
fig.savefig(OUT / "compliance_intervals.png", dpi=120)
print("wrote", OUT / "gait_wave.png", OUT / "cable_lengths.png",
      OUT / "compliance_intervals.png")
