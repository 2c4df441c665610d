"""Variation generation, environment simplifications and dataset splits.

generate_variation is a pure function of (task, index, seed,
simplifications): the same triple always yields a bit-identical world.
Hidden properties of masked variations are assigned from a balanced,
seeded shuffle so a constant-answer strategy scores at chance.
"""

from __future__ import annotations

import math
import random

from ..errors import IndexOutOfRange, UnknownFlag
from ..rng import derive_seed
from ..world import World
from .catalog import TaskRuntime, build_runtime, task_info

SIMPLIFICATIONS = (
    "teleport",
    "self watering",
    "open containers",
    "open doors",
    "no combustion",
)

DOOR_CLOSED_PROB = 0.25


def normalize_simplifications(flags) -> set[str]:
    if flags is None:
        return set()
    if isinstance(flags, str):
        flags = [flags]
    out: set[str] = set()
    for flag in flags:
        flag = flag.strip()
        if flag == "easy":
            out.update(SIMPLIFICATIONS)
        elif flag in SIMPLIFICATIONS:
            out.add(flag)
        elif flag == "":
            continue
        else:
            raise UnknownFlag(f"unknown simplification {flag!r}")
    return out


def variation_count(task_id: str) -> int:
    return len(task_info(task_id)["variations"])


def hidden_bits(task_id: str, seed: int) -> list[bool]:
    """Balanced hidden-property assignment for masked variations: exactly
    half true (within one), shuffled deterministically per (task, seed)."""
    n = variation_count(task_id)
    bits = [True] * (n // 2) + [False] * (n - n // 2)
    random.Random(derive_seed(seed, task_id, "hidden")).shuffle(bits)
    return bits


def _spawn_fixture(world: World, parent_id: int, spec: dict):
    if "species" in spec:
        species = world.configs.species[spec["species"]]
        stage = len(species["stages"]) - 1 if species["kind"] == "animal" else 0
        world.spawn_life(spec["species"], parent_id, stage=stage)
        return
    if "substance" in spec and "type" not in spec:
        world.spawn_substance(spec["substance"], parent_id)
        return
    obj = world.spawn(spec["type"], parent_id)
    if "substance" in spec:
        world.spawn_substance(spec["substance"], obj.id)
    for child in spec.get("contains", []):
        _spawn_fixture(world, obj.id, child)


def _populate_house(world: World):
    for room_name, specs in world.configs.world_map["fixtures"].items():
        room_id = world.rooms[room_name].obj_id
        for spec in specs:
            _spawn_fixture(world, room_id, spec)


def _add_distractors(world: World, rng: random.Random):
    for room_name, entries in world.configs.world_map.get("distractors", {}).items():
        room_id = world.rooms[room_name].obj_id
        for entry in entries:
            if rng.random() < float(entry["prob"]):
                world.spawn(entry["type"], room_id)


def _sample_closed_doors(world: World, rng: random.Random):
    seen = set()
    for oid in sorted(world.objects):
        door = world.objects[oid]
        if not door.is_door or door.id in seen:
            continue
        seen.add(door.id)
        seen.add(door.linked_door_id)
        if rng.random() < DOOR_CLOSED_PROB:
            door.container.is_open = False
            world.objects[door.linked_door_id].container.is_open = False


def apply_simplifications(world: World, flags) -> World:
    """Apply environment simplifications in place: teleport grammar, self-
    watering pots, containers open by default, doors open, no combustion."""
    flags = normalize_simplifications(flags)
    world.simplifications |= flags
    if "open containers" in flags:
        for obj in world.objects.values():
            if obj.container is not None and obj.container.closeable and not obj.is_door:
                obj.container.is_open = True
    if "open doors" in flags:
        for obj in world.objects.values():
            if obj.is_door:
                obj.container.is_open = True
    return world


def generate_variation(task_id: str, variation_index: int, seed: int,
                       simplifications=None) -> tuple[World, TaskRuntime]:
    entry = task_info(task_id)  # raises UnknownTask
    rows = entry["variations"]
    if not 0 <= variation_index < len(rows):
        raise IndexOutOfRange(
            f"task {task_id} has variations 0..{len(rows) - 1}")
    flags = normalize_simplifications(simplifications)
    row = dict(rows[variation_index])
    row["_hidden"] = hidden_bits(task_id, seed)[variation_index]
    world = World(seed=derive_seed(seed, task_id, variation_index),
                  simplifications=flags)
    build_rng = random.Random(derive_seed(seed, task_id, variation_index, "build"))
    _populate_house(world)
    world.spawn_agent(row["start"])
    runtime = build_runtime(world, task_id, row, build_rng)
    runtime.variation_index = variation_index
    runtime.seed = seed
    runtime.simplifications = tuple(sorted(flags))
    _add_distractors(world, build_rng)
    if "open doors" not in flags:
        _sample_closed_doors(world, build_rng)
    apply_simplifications(world, flags)
    return world, runtime


def split_variations(task_id: str) -> dict[str, list[int]]:
    """50/25/25 split; unseen-flagged variations go to dev/test only."""
    entry = task_info(task_id)  # raises UnknownTask
    rows = entry["variations"]
    n = len(rows)
    n_train = math.ceil(n / 2)
    n_dev = n // 4
    n_test = n - n_train - n_dev
    unseen = [i for i, r in enumerate(rows) if r.get("unseen")]
    seen = [i for i in range(n) if i not in set(unseen)]
    test: list[int] = []
    dev: list[int] = []
    train: list[int] = []
    for i in unseen:  # unseen variations fill test first, then dev
        if len(test) < n_test:
            test.append(i)
        elif len(dev) < n_dev:
            dev.append(i)
        else:
            raise ValueError(f"task {task_id}: more unseen variations than dev+test slots")
    for i in seen:
        if len(train) < n_train:
            train.append(i)
        elif len(dev) < n_dev:
            dev.append(i)
        else:
            test.append(i)
    return {"train": sorted(train), "dev": sorted(dev), "test": sorted(test)}
