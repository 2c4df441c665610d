"""Chemical mixing: a container's contents matching a recipe's input
multiset react into the output substance. Recipes are order-independent."""

from __future__ import annotations

from collections import Counter
from typing import Optional

from ..objects import SimObject


def find_recipe(world, contents: list[SimObject]) -> Optional[dict]:
    have = Counter(o.type_name for o in contents)
    for recipe in world.configs.recipes:
        if Counter(recipe["inputs"]) == have:
            return recipe
    return None


def mix(world, container_id: int) -> Optional[SimObject]:
    """Consume the container's contents and produce the recipe output, or
    return None when nothing reacts (contents unchanged)."""
    contents = world.children(container_id)
    recipe = find_recipe(world, contents)
    if recipe is None:
        return None
    temps = [o.temperature for o in contents]
    avg_temp = sum(temps) / len(temps)
    for obj in contents:
        world.remove(obj.id)
    return world.spawn_substance(recipe["output"], container_id, temperature=avg_temp)
