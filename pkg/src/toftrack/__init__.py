"""Two-sensor infrared time-of-flight triangulation toolkit.

Core pieces: exact triangulation geometry (`geometry`), a multi-zone
sensor simulator with a dark/lit noise model (`sensor`), minimum-reading
position tracking with affine calibration (`tracker`), trial datasets and
their precision/accuracy statistics (`experiments`), scatter exports
(`plots`), and the shipped experiment data (`datasets`).
"""

from .geometry import (
    LEFT,
    RIGHT,
    SPEED_OF_LIGHT_M_PER_S,
    Baseline,
    DegenerateTriangleError,
    Point2D,
    TriangleRanges,
    distance,
    distance_from_time,
    forward_distances,
    triangulate,
)
from .sensor import (
    INVALID,
    AmbientCondition,
    Circle,
    NoiseModel,
    Scene,
    Segment,
    SensorConfig,
    ZoneFrame,
    apply_noise,
    cast_zone_rays,
    scan,
)
from .tracker import (
    CalibrationModel,
    DegenerateScaleFitWarning,
    NoTargetError,
    TrackEstimate,
    apply_calibration,
    estimate_position,
    fit_calibration,
    load_calibration,
    min_valid_reading,
    save_calibration,
)
from .experiments import (
    DEFAULT_TARGET_POSITIONS,
    PositionTrials,
    Rig,
    StatsReport,
    TrialFailure,
    TrialParseError,
    TrialTable,
    default_rig,
    frame_walls,
    load_trials,
    percent_error,
    population_std,
    run_simulated_experiment,
    save_trials,
    stats_report,
)
from .config import ConfigError, SimulationSetup, load_rig_config
from .plots import export_scatter

__version__ = "0.1.0"
