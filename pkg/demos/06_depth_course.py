"""3D obstacle course: depth-band barriers force dive-then-surface.

The modulated run ships ballast early to duck under the first barrier band,
then blows ballast to clear the second (shallower-only) band. The control
run with fixed neutral fills hits the first band and stalls.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eelsim import bundled_scenario_path, load_scenario, run_scenario

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

fig, ax = plt.subplots(figsize=(8, 4))
for name, color in (("depth_course", "tab:green"), ("depth_course_flat", "tab:red")):
    cfg = load_scenario(bundled_scenario_path(name))
    records, outcome = run_scenario(cfg)
    x = np.array([r.state.head_pose[0] for r in records])
    z = np.array([r.state.depth_z for r in records])
    ax.plot(x, z, color=color, lw=1.2,
            label=f"{name}: {outcome.kind} at t={outcome.time:.0f}s")
    print(name, outcome.kind, f"t={outcome.time:.1f}s")

for b in cfg.obstacles.lateral_barriers:
    ax.add_patch(plt.Rectangle((b.x_lo, b.z_lo), b.x_hi - b.x_lo, b.z_hi - b.z_lo,
                               color="k", alpha=0.3))
ax.invert_yaxis()
ax.set(xlabel="x (m)", ylabel="depth (m)",
       title="two-barrier depth course (shaded = blocked depth bands)")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "depth_course.png", dpi=120)
print("wrote", OUT / "depth_course.png")
