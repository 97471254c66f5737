"""Acceptance suite: one test per headline capability, each printing a
PASS/FAIL line (run with ``pytest -s tests/test_acceptance.py`` to see them).

Tolerances are fixed here, not tuned elsewhere:
  1. straight swim   0.305 BL/cycle +-15 %, straightness drift < 10 %, < 10 s wall
  2. turning         right turn for +20 deg offset, 15..50 deg/cycle, radius < 1 m
  3. descent         monotone post-onset, >= 1.52 m before t = 60 s; terminal
                     velocity oracle within 1 %
  4. lattice         G=1 and G=0.5 Succeed, G=0 Stuck/Overload, for contact
                     stiffness x0.5 / x1 / x2
  5. property suite  cable round trip 1e-9, monotonicity, interval nesting,
                     gait bounds/period/lag, drag dissipativity and frame
                     invariance, ballast antisymmetry, determinism, step count
  6. depth course    scripted ballast + G=1 traverses; same gait without
                     modulation gets Stuck at a barrier band
"""

import dataclasses
import math
import time
from multiprocessing import Pool

import numpy as np
import pytest

from eelsim.buoyancy import net_ballast_mass, terminal_heave_rate
from eelsim.cable import (angle_interval_from_cables, commanded_cable_lengths,
                          exact_cable_lengths, anchor_angle)
from eelsim.calibrate import STRAIGHT_GAIT, calibrate_drag, measure_gait
from eelsim.core import (DEFAULT_GEOMETRY, ComplianceParams, GaitParams,
                         RobotGeometry, forward_kinematics)
from eelsim.engine import EngineCore, run_scenario
from eelsim.gait import suggested_angle, suggested_profile
from eelsim.hydro import solve_body_velocity, total_drag_wrench
from eelsim.scenario import (FillSchedule, ScenarioConfig,
                             bundled_scenario_path, load_scenario)
from eelsim.world import ObstacleField, OutcomeCriteria


def report(criterion: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"{criterion}: {detail}"


# -- 1: straight swimming after calibration -----------------------------------

def test_criterion_1_straight_swim_speed():
    calib = calibrate_drag(target_blpc=0.305, geom=DEFAULT_GEOMETRY,
                           gait=STRAIGHT_GAIT)
    t0 = time.perf_counter()
    m = measure_gait(calib.geometry, STRAIGHT_GAIT,
                     ComplianceParams(G=0.0), cycles=10.0)
    wall = time.perf_counter() - t0
    ok = (abs(m.bl_per_cycle - 0.305) <= 0.15 * 0.305
          and m.drift_fraction < 0.10
          and wall < 10.0)
    report("1 (straight 0.305 BL/cycle +-15%)", ok,
           f"{m.bl_per_cycle:.4f} BL/cycle (Cn/Ct={calib.ratio:.2f}), "
           f"drift {100 * m.drift_fraction:.2f}% of progress, "
           f"{m.mean_speed:.4f} m/s, 10-cycle run in {wall:.1f} s")


# -- 2: turning ----------------------------------------------------------------

def test_criterion_2_turning():
    geom = load_scenario(bundled_scenario_path("turning")).geometry
    turn = dataclasses.replace(STRAIGHT_GAIT, offset_phi=math.radians(20))
    m = measure_gait(geom, turn, cycles=5.0)
    per_cycle = math.degrees(m.heading_change_per_cycle)
    mirror = measure_gait(geom, dataclasses.replace(turn, offset_phi=-turn.offset_phi),
                          cycles=3.0)
    ok = (per_cycle < 0  # +20 deg offset turns right (heading decreases)
          and 15.0 <= abs(per_cycle) <= 50.0
          and m.sweep_radius < 1.0
          and mirror.heading_change_per_cycle > 0)
    report("2 (turning)", ok,
           f"{per_cycle:+.1f} deg/cycle (reference robot: 32.1), sweep radius "
           f"{m.sweep_radius:.2f} m (reference robot ~0.6), mirror sign flips")


# -- 3: depth descent ------------------------------------------------------------

def test_criterion_3_descent():
    records, _ = run_scenario(load_scenario(bundled_scenario_path("descent")))
    zs = np.array([r.state.depth_z for r in records])
    ts = np.array([r.sim_time for r in records])
    onset = int(np.argmax(zs > 1e-9))
    monotone = bool(np.all(np.diff(zs[onset:]) >= -1e-12))
    reached = zs >= 1.52
    t_reach = float(ts[int(np.argmax(reached))]) if reached.any() else math.inf

    dm = net_ballast_mass([1.0] * 4, DEFAULT_GEOMETRY)
    vt = terminal_heave_rate(dm, DEFAULT_GEOMETRY)
    from eelsim.buoyancy import step_vertical
    from eelsim.core import RobotState
    st = RobotState(fills=(1.0,) * 4, depth_z=10.0)
    for _ in range(int(10.0 / 0.005)):
        st = step_vertical(st, (1.0,) * 4, 0.005, DEFAULT_GEOMETRY)
    vt_err = abs(st.heave_rate - vt) / vt

    ok = monotone and t_reach < 60.0 and vt_err < 0.01
    report("3 (descent to 1.52 m)", ok,
           f"reached 1.52 m at t={t_reach:.1f} s, monotone={monotone}, "
           f"terminal velocity {st.heave_rate:.4f} vs oracle {vt:.4f} "
           f"({100 * vt_err:.2f}% err)")


# -- 4: compliance-dependent lattice traversal -----------------------------------

def _lattice_run(job):
    name, k_scale = job
    cfg = load_scenario(bundled_scenario_path(name))
    if k_scale != 1.0:
        cfg = dataclasses.replace(cfg, contact=cfg.contact.scaled(k_scale))
    _, outcome = run_scenario(cfg)
    return name, k_scale, outcome.kind


def test_criterion_4_lattice_compliance_ordering():
    jobs = [(name, k) for k in (0.5, 1.0, 2.0)
            for name in ("lattice_g0", "lattice_g05", "lattice_g1")]
    with Pool(min(len(jobs), 5)) as pool:
        results = {(n, k): kind for n, k, kind in pool.imap_unordered(_lattice_run, jobs)}
    lines = []
    ok = True
    for k in (0.5, 1.0, 2.0):
        g0 = results[("lattice_g0", k)]
        g05 = results[("lattice_g05", k)]
        g1 = results[("lattice_g1", k)]
        ok &= g0 in ("Stuck", "Overload") and g05 == "Success" and g1 == "Success"
        lines.append(f"k_c x{k}: G=0 {g0}, G=0.5 {g05}, G=1 {g1}")
    report("4 (lattice: compliance required)", ok, "; ".join(lines))


# -- 5: always-on property suites -------------------------------------------------

def test_criterion_5_property_suites():
    geom = DEFAULT_GEOMETRY
    checks: list[tuple[str, bool]] = []

    # cable round trip at 1e-9 rad
    grid = np.linspace(-1.0, 1.0, 41)
    rt = all(abs(angle_interval_from_cables(exact_cable_lengths(a, geom), geom).hi - a) < 1e-9
             and abs(angle_interval_from_cables(exact_cable_lengths(a, geom), geom).lo - a) < 1e-9
             for a in grid)
    checks.append(("cable round-trip 1e-9", rt))

    # cable monotonicity over the common working range
    rng_m = np.linspace(-2 * anchor_angle(geom) + 1e-6, 2 * anchor_angle(geom) - 1e-6, 101)
    lefts = [exact_cable_lengths(a, geom).left_length for a in rng_m]
    rights = [exact_cable_lengths(a, geom).right_length for a in rng_m]
    checks.append(("cable monotonicity",
                   bool(np.all(np.diff(lefts) > 0) and np.all(np.diff(rights) < 0))))

    # interval nesting G=0 in G=0.5 in G=1 across the lattice gait's phase
    lat = GaitParams(amplitude_A=math.radians(50), spatial_freq_xi=0.6,
                     temporal_freq_omega=0.1, joint_count_N=3)
    nest = True
    for t in np.linspace(0, 10, 51):
        a_s = float(suggested_angle(lat, 1, t))
        iv = [angle_interval_from_cables(
            commanded_cable_lengths(a_s, ComplianceParams(G=g, slack_gain_l0=0.1), lat, geom),
            geom) for g in (0.0, 0.5, 1.0)]
        nest &= (iv[1].lo <= iv[0].lo + 1e-9 and iv[0].hi <= iv[1].hi + 1e-9
                 and iv[2].lo <= iv[1].lo + 1e-9 and iv[1].hi <= iv[2].hi + 1e-9)
    checks.append(("compliance interval nesting", nest))

    # serpenoid boundedness / periodicity / phase lag
    p = STRAIGHT_GAIT
    ts = np.linspace(0, 17, 97)
    bounded = all(abs(suggested_angle(p, i, t) - p.offset_phi) <= p.amplitude_A + 1e-15
                  for i in range(p.joint_count_N) for t in ts)
    periodic = all(abs(suggested_angle(p, 1, t) -
                       suggested_angle(p, 1, t + 1 / p.temporal_freq_omega)) < 1e-12
                   for t in ts)
    delay = p.spatial_freq_xi / (p.temporal_freq_omega * p.joint_count_N)
    lag = all(abs(suggested_angle(p, i, t) - suggested_angle(p, i - 1, t - delay)) < 1e-12
              for i in (1, 2) for t in ts)
    checks.append(("serpenoid bounds/period/lag", bounded and periodic and lag))

    # drag dissipativity + frame invariance
    rng = np.random.default_rng(0)
    chain = forward_kinematics((0, 0, 0.3), (0.4, -0.2, 0.5), geom)
    diss = all(float(np.dot(u, total_drag_wrench(chain, u, (0, 0, 0), geom))) <= 1e-12
               for u in rng.uniform(-1, 1, (20, 3)))
    th = 0.9
    c, s = math.cos(th), math.sin(th)
    chain_r = forward_kinematics((0, 0, 0.3 + th), (0.4, -0.2, 0.5), geom)
    u_a = solve_body_velocity(chain, (0.3, -0.5, 0.2), None, geom)
    u_b = solve_body_velocity(chain_r, (0.3, -0.5, 0.2), None, geom)
    frame = (abs(u_b[0] - (c * u_a[0] - s * u_a[1])) < 1e-10
             and abs(u_b[1] - (s * u_a[0] + c * u_a[1])) < 1e-10
             and abs(u_b[2] - u_a[2]) < 1e-10)
    checks.append(("drag dissipativity + frame invariance", diss and frame))

    # ballast antisymmetry
    f = rng.uniform(0, 1, 4)
    checks.append(("ballast antisymmetry",
                   abs(net_ballast_mass(f, geom) + net_ballast_mass(1 - f, geom)) < 1e-12))

    # determinism + step-count exactness
    cfg = ScenarioConfig(name="det", duration=1.0, dt=0.005,
                         geometry=dataclasses.replace(geom, drag_normal_Cn=32.964),
                         gait=STRAIGHT_GAIT,
                         criteria=OutcomeCriteria(progress_window=None))
    ra, _ = run_scenario(cfg)
    rb, _ = run_scenario(cfg)
    checks.append(("bit-identical repeat runs",
                   [r.to_json() for r in ra] == [r.to_json() for r in rb]))
    checks.append(("step-count exactness", len(ra) == 200))

    ok = all(v for _, v in checks)
    report("5 (property suites)", ok,
           "; ".join(f"{name} {'ok' if v else 'FAILED'}" for name, v in checks))


# -- 6: 3D obstacle course ---------------------------------------------------------

def test_criterion_6_depth_course():
    _, out_mod = run_scenario(load_scenario(bundled_scenario_path("depth_course")))
    _, out_flat = run_scenario(load_scenario(bundled_scenario_path("depth_course_flat")))
    ok = out_mod.kind == "Success" and out_flat.kind == "Stuck"
    report("6 (3D depth-band course)", ok,
           f"with modulation: {out_mod.kind}@{out_mod.time:.0f}s; "
           f"without: {out_flat.kind}@{out_flat.time:.0f}s")
