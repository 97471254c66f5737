"""Straight open-water swimming.

Runs the bundled 10-cycle straight-swim scenario and reports body-lengths
per cycle and path straightness; draws the head path and body snapshots.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eelsim import (bundled_scenario_path, forward_kinematics, load_scenario,
                    run_scenario)
from eelsim.calibrate import measure_gait

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

cfg = load_scenario(bundled_scenario_path("straight_openwater"))
records, outcome = run_scenario(cfg)
print(f"{cfg.name}: {outcome.kind} after {records[-1].sim_time:.0f} s")

m = measure_gait(cfg.geometry, cfg.gait, cfg.compliance, cycles=10.0)
print(f"speed: {m.bl_per_cycle:.3f} BL/cycle, {m.mean_speed * 100:.1f} cm/s "
      f"(reference robot: 0.305 BL/cycle, 6.2 cm/s)")
print(f"straightness: max deviation {100 * m.drift_fraction:.2f}% of progress")

xy = np.array([r.state.head_pose[:2] for r in records])
fig, ax = plt.subplots(figsize=(8, 4))
ax.plot(xy[:, 0], xy[:, 1], "b-", lw=0.8, label="head path")
for r in records[::2000]:
    chain = forward_kinematics(r.state.head_pose, r.state.joint_angles, cfg.geometry)
    ax.plot(chain.mids[:, 0], chain.mids[:, 1], "o-", c="gray", ms=3, alpha=0.5)
ax.set(xlabel="x (m)", ylabel="y (m)", title="straight swim, body snapshots every 10 s")
ax.axis("equal")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "straight_swim.png", dpi=120)
print("wrote", OUT / "straight_swim.png")
