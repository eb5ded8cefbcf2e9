from .io import (
    read_discomfort_csv,
    read_trajectory_csv,
    write_discomfort_csv,
    write_trajectory_csv,
)
from .trajectory import (
    DiscomfortReport,
    SessionLog,
    Trajectory,
    TrajectoryValidation,
    TrajPoint,
    Violation,
    count_turns,
    heading_changes,
    slice_window,
    speed_between,
    validate_trajectory,
)
