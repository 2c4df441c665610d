"""Task catalog access and runtime assembly.

The catalog file (data/tasks.yaml) is the source of truth for task ids,
descriptions, goal predicates and variation tables; this module turns one
catalog entry plus one populated world into a TaskRuntime the episode
loop evaluates against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from ..config import load_configs
from ..errors import UnknownTask
from ..world import World
from . import goals
from .families import FAMILIES, BuildResult


@dataclass
class TaskRuntime:
    task_id: str
    topic: str
    name: str
    description: str
    required: list[goals.Predicate]
    optional: list[goals.Predicate]
    failure: list[goals.FailureRule]
    bindings: dict[str, object]
    focus_eligible: Callable[[World, int], bool]
    variation_index: int = 0
    seed: int = 0
    simplifications: tuple[str, ...] = ()
    masked: bool = False


def catalog() -> dict[str, dict]:
    return load_configs().tasks


def all_task_ids() -> list[str]:
    return list(catalog().keys())


def task_info(task_id: str) -> dict:
    entry = catalog().get(task_id)
    if entry is None:
        raise UnknownTask(f"unknown task id {task_id!r}")
    return entry


def build_runtime(world: World, task_id: str, row: dict,
                  rng: random.Random) -> TaskRuntime:
    entry = task_info(task_id)
    params = entry.get("params", {}) or {}
    build: BuildResult = FAMILIES[entry["family"]](world, row, params, rng)
    build.bindings.setdefault("agent", world.agent_id)
    required_specs = list(entry.get("required") or []) + build.extra_required
    required = [goals.build_predicate(s) for s in required_specs]
    optional = [goals.build_predicate(s) for s in entry.get("optional") or []]
    failure = [
        goals.FailureRule(kind=f["kind"], slot=f.get("slot"),
                          species_slot=f.get("species_slot"))
        for f in entry.get("failure") or []
    ]
    description = entry["description"].format(**build.display)
    return TaskRuntime(
        task_id=task_id,
        topic=entry["topic"],
        name=entry["name"],
        description=description.strip(),
        required=required,
        optional=optional,
        failure=failure,
        bindings=build.bindings,
        focus_eligible=build.focus_eligible,
        masked=bool(params.get("masked", False)),
    )
