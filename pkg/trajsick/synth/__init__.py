from .courses import (
    COURSE_KINDS,
    CourseSpec,
    gen_maze_trajectory,
    gen_race_trajectory,
    gen_trajectory,
)
from .sickness import SicknessModel, gen_discomfort, gen_session
