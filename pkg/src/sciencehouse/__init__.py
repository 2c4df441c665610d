"""sciencehouse: a deterministic, seedable text-world simulation engine
for elementary-science experiment tasks."""

from .agents import random_valid_rollout
from .env import Environment, Observation, Transcript
from .exporters import export_training_examples, extract_triples, returns_to_go
from .grammar import clarify, enumerate_valid_actions, parse
from .oracle import OraclePolicy, oracle_next_action, run_oracle_episode
from .tasks import (
    all_task_ids,
    apply_simplifications,
    generate_variation,
    split_variations,
    task_info,
    variation_count,
)
from .world import World

__version__ = "0.1.0"

__all__ = [
    "Environment",
    "Observation",
    "Transcript",
    "World",
    "parse",
    "clarify",
    "enumerate_valid_actions",
    "generate_variation",
    "apply_simplifications",
    "split_variations",
    "variation_count",
    "all_task_ids",
    "task_info",
    "returns_to_go",
    "export_training_examples",
    "extract_triples",
    "random_valid_rollout",
    "OraclePolicy",
    "oracle_next_action",
    "run_oracle_episode",
    "__version__",
]
