"""Baseline agents: the random-valid policy and batch evaluation helpers."""

from __future__ import annotations

import random

from .env import Environment
from .rng import derive_seed


def random_valid_rollout(task_id: str, variation: int, seed: int,
                         simplifications="easy") -> dict:
    """At each step, choose uniformly from the valid-action list; run to
    episode end. Deterministic for a fixed (task, variation, seed)."""
    env = Environment()
    env.reset(task_id, variation, seed, simplifications)
    rng = random.Random(derive_seed(seed, task_id, variation, "random-valid"))
    while not env.done:
        actions = env.valid_actions()
        env.step(rng.choice(actions))
    return env.transcript.as_dict()
