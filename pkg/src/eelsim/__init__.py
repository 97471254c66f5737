"""Deterministic planar simulator and control library for a cable-driven,
neutrally buoyant undulatory swimming robot.
"""

from .core import (ChainPose, ComplianceParams, GaitParams, GeometryError,
                   JointLimitError, RobotGeometry, RobotState,
                   DEFAULT_GEOMETRY, forward_kinematics, initial_state,
                   validate_geometry)
from .gait import suggested_angle, suggested_profile
from .cable import (AngleInterval, CablePair, InfeasibleCableCommand,
                    JointDynamics, angle_interval_from_cables,
                    commanded_cable_lengths, exact_cable_lengths,
                    resolve_joint_angle)
from .hydro import (LinkWrench, SimulationDiverged, link_drag,
                    solve_body_velocity, step_planar, total_drag_wrench)
from .buoyancy import (LeadscrewState, leadscrew_stroke, net_ballast_mass,
                       pitch_equilibrium, step_vertical, terminal_heave_rate)
from .world import (ContactParams, ContactResult, DepthBarrier, ObstacleField,
                    Outcome, OutcomeCriteria, OutcomeTracker,
                    build_hex_lattice, classify_outcome, contact_forces)
from .scenario import (FillSchedule, ScenarioConfig, bundled_scenario_path,
                       load_scenario, scenario_from_dict, validate_scenario)
from .engine import (EngineCore, Pause, Reset, Resume, SetCompliance,
                     SetFillRamp, SetFills, SetGait, run_scenario, step)
from .telemetry import TelemetryRecord, export_csv, read_log, write_log
from .calibrate import (STRAIGHT_GAIT, CalibrationResult, SwimMeasurement,
                        calibrate_drag, measure_gait, write_calibration)

__version__ = "0.1.0"
