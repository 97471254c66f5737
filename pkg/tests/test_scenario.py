import math
import textwrap

import pytest

from eelsim.scenario import (ConfigError, FillSchedule, ScenarioConfig,
                             load_scenario, scenario_from_dict,
                             validate_scenario)

MINIMAL = {
    "name": "t",
    "duration": 1.0,
    "dt": 0.005,
    "gait": {"amplitude_A_deg": 30, "spatial_freq_xi": 0.5,
             "temporal_freq_omega": 0.2, "joint_count_N": 3},
}


def test_degree_suffix_conversion():
    cfg = scenario_from_dict(MINIMAL)
    assert cfg.gait.amplitude_A == pytest.approx(math.radians(30))


def test_degree_suffix_on_initial_heading():
    d = dict(MINIMAL)
    d["initial"] = {"x": 1.0, "heading_deg": 90}
    cfg = scenario_from_dict(d)
    assert cfg.initial_pose[2] == pytest.approx(math.pi / 2)


def test_fill_schedule_interpolation():
    s = FillSchedule(knots=((0.0, (0.0, 0.0)), (10.0, (1.0, 0.5))))
    assert s.fills_at(-1.0) == (0.0, 0.0)
    assert s.fills_at(5.0) == pytest.approx((0.5, 0.25))
    assert s.fills_at(20.0) == (1.0, 0.5)


def test_fill_schedule_scalar_broadcast():
    d = dict(MINIMAL)
    d["fill_schedule"] = [{"t": 0.0, "fills": 0.25}]
    cfg = scenario_from_dict(d)
    assert cfg.fill_schedule.fills_at(0.0) == (0.25,) * 4


def test_lattice_recipe_builds_posts():
    d = dict(MINIMAL)
    d["obstacles"] = {"lattice": {"spacing": 0.25, "post_diameter": 0.076,
                                  "rows": 3, "cols": 3, "origin": [1.0, 0.0]}}
    cfg = scenario_from_dict(d)
    assert len(cfg.obstacles.posts) == 9
    assert cfg.obstacles.far_boundary_x is not None


def test_progress_window_cycles_resolved():
    d = dict(MINIMAL)
    d["criteria"] = {"progress_window_cycles": 3}
    cfg = scenario_from_dict(d)
    assert cfg.criteria.progress_window == pytest.approx(3 / 0.2)


def test_validation_catches_mismatched_joint_count():
    d = dict(MINIMAL)
    d["gait"] = dict(d["gait"], joint_count_N=5)
    errors, _ = validate_scenario(scenario_from_dict(d))
    assert any("joint_count_N" in e for e in errors)


def test_validation_warns_small_slack_gain():
    d = dict(MINIMAL)
    d["compliance"] = {"G": 1.0, "slack_gain_l0": 0.02}
    _, warnings = validate_scenario(scenario_from_dict(d))
    assert any("slack_gain_l0" in w for w in warnings)


def test_config_hash_stable_and_sensitive():
    a = scenario_from_dict(MINIMAL)
    b = scenario_from_dict(MINIMAL)
    assert a.config_hash() == b.config_hash()
    d = dict(MINIMAL)
    d["duration"] = 2.0
    assert scenario_from_dict(d).config_hash() != a.config_hash()


def test_yaml_round_trip(tmp_path):
    p = tmp_path / "s.yaml"
    p.write_text(textwrap.dedent("""
        name: yaml-test
        duration: 2.0
        dt: 0.01
        gait: {amplitude_A_deg: 50, spatial_freq_xi: 0.6, temporal_freq_omega: 0.1, joint_count_N: 3}
        compliance: {G: 0.5}
        initial: {x: 0.0, y: 0.125, heading_deg: 0}
        criteria: {success_x: 2.0}
    """))
    cfg = load_scenario(p)
    assert cfg.name == "yaml-test"
    assert cfg.gait.amplitude_A == pytest.approx(math.radians(50))
    assert cfg.compliance.G == 0.5
    assert cfg.criteria.success_x == 2.0


def test_bad_yaml_raises_config_error(tmp_path):
    p = tmp_path / "bad.yaml"
    p.write_text("gait: {amplitude_A_deg: 500, spatial_freq_xi: 0.5, temporal_freq_omega: 0.2}")
    with pytest.raises(ConfigError):
        load_scenario(p)
