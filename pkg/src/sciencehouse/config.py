"""Loads and caches the packaged config files (object catalog, map,
species, traits, recipes, physics constants, grammar)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import yaml

from .materials import Material, load_materials


def _load_yaml(name: str):
    text = resources.files("sciencehouse.data").joinpath(name).read_text()
    return yaml.safe_load(text)


@dataclass(frozen=True)
class Configs:
    materials: dict[str, Material]
    catalog: dict[str, dict]
    world_map: dict
    species: dict[str, dict]
    traits: dict[str, dict]
    recipes: list[dict]
    physics: dict
    grammar: list[dict]
    tasks: dict[str, dict]


@lru_cache(maxsize=1)
def load_configs() -> Configs:
    return Configs(
        materials=load_materials(),
        catalog=_load_yaml("objects.yaml"),
        world_map=_load_yaml("map.yaml"),
        species=_load_yaml("species.yaml"),
        traits=_load_yaml("traits.yaml"),
        recipes=_load_yaml("recipes.yaml"),
        physics=_load_yaml("physics.yaml"),
        grammar=_load_yaml("grammar.yaml"),
        tasks=_load_yaml("tasks.yaml"),
    )
