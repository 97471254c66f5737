"""Variable-ballast depth and pitch control.

Left: the bundled descent scenario (syringes empty-to-full over 20 s while
undulating) reaching the 1.52 m reference depth well before the tank floor
cuts it off. Right: a head-heavy fill pattern pitching the body head-down
toward its static equilibrium.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eelsim import (DEFAULT_GEOMETRY, bundled_scenario_path, load_scenario,
                    net_ballast_mass, pitch_equilibrium, run_scenario,
                    terminal_heave_rate)
from eelsim.buoyancy import leadscrew_stroke

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

geom = DEFAULT_GEOMETRY
print(f"leadscrew: {1000 * leadscrew_stroke(2 * math.pi, geom):.1f} mm per motor rev, "
      f"max stroke {1000 * geom.max_stroke:.1f} mm")
print(f"full fill ballast: {1000 * net_ballast_mass([1] * 4, geom):.0f} g -> "
      f"terminal descent {terminal_heave_rate(net_ballast_mass([1] * 4, geom), geom):.2f} m/s")

cfg = load_scenario(bundled_scenario_path("descent"))
records, _ = run_scenario(cfg)
t = np.array([r.sim_time for r in records])
z = np.array([r.state.depth_z for r in records])
t152 = t[np.argmax(z >= 1.52)]
print(f"descent: reached 1.52 m at t = {t152:.1f} s (fill ramp ends at 20 s)")

fills = (1.0, 0.5, 0.5, 0.0)
eq = pitch_equilibrium(fills, geom)
print(f"head-heavy fills {fills}: equilibrium pitch "
      f"{math.degrees(eq):+.1f} deg (positive = head-down)")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 3.5))
ax1.plot(t, z)
ax1.axhline(1.52, ls="--", c="r", lw=0.8, label="1.52 m reference")
ax1.axhline(1.82, ls=":", c="k", lw=0.8, label="tank floor")
ax1.invert_yaxis()
ax1.set(xlabel="time (s)", ylabel="depth (m)", title="descent under fill ramp")
ax1.legend()

pitch = np.array([r.state.pitch for r in records])
ax2.plot(t, np.degrees(pitch))
ax2.set(xlabel="time (s)", ylabel="pitch (deg)",
        title="pitch during descent (uniform fills: stays level)")
fig.tight_layout()
fig.savefig(OUT / "depth_pitch.png", dpi=120)
print("wrote", OUT / "depth_pitch.png")
