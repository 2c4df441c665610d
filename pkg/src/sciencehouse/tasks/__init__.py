from .catalog import TaskRuntime, all_task_ids, task_info
from .goals import EpisodeContext, ScoreState, evaluate_goals
from .variations import (
    apply_simplifications,
    generate_variation,
    split_variations,
    variation_count,
)

__all__ = [
    "TaskRuntime",
    "all_task_ids",
    "task_info",
    "EpisodeContext",
    "ScoreState",
    "evaluate_goals",
    "apply_simplifications",
    "generate_variation",
    "split_variations",
    "variation_count",
]
