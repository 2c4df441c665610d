"""Life stages, plant needs, pollination and fruiting.

Plants progress one stage at a time while their needs (water, soil,
temperature band) stay met; a need unmet past its deadline kills them.
Unplanted seeds are dormant. Pollinators transfer pollen between the
flowers of distinct reproducing plants in their room; a pollinated
flower wilts into a fruit containing seeds of genetic descendants.
"""

from __future__ import annotations

from ..objects import SimObject
from . import genetics

SOIL_DEADLINE = 15
TEMPERATURE_DEADLINE = 15


def _is_planted(world, obj: SimObject) -> bool:
    parent = world.parent_of(obj.id)
    if parent is None or parent.type_name not in ("flower pot", "ground"):
        return False
    return any(s.type_name == "soil" for s in world.children(parent.id))


def _water_available(world, obj: SimObject) -> SimObject | None:
    parent = world.parent_of(obj.id)
    if parent is None:
        return None
    for sibling in world.children(parent.id):
        if sibling.type_name == "water" and world.is_liquid(sibling):
            return sibling
    return None


def tick_life(world) -> None:
    self_watering = "self watering" in world.simplifications
    for oid in sorted(world.objects):
        obj = world.objects.get(oid)
        if obj is None or obj.life is None or obj.life.dead:
            continue
        spec = world.configs.species[obj.life.species]
        if spec["kind"] != "plant":
            continue  # animal stages are populated, not simulated
        life = obj.life
        if not life.planted:
            if _is_planted(world, obj):
                life.planted = True
            else:
                continue  # dormant until planted in soil
        # needs upkeep
        water = _water_available(world, obj)
        if self_watering:
            life.needs["water"] = 0
        elif water is not None:
            world.remove(water.id)  # the plant absorbs the watering
            life.needs["water"] = 0
        else:
            life.needs["water"] += 1
        if _is_planted(world, obj):
            life.needs["soil"] = 0
        else:
            life.needs["soil"] += 1
        low, high = spec["temperature_low"], spec["temperature_high"]
        if low <= obj.temperature <= high:
            life.needs["temperature"] = 0
        else:
            life.needs["temperature"] += 1
        if (life.needs["water"] > spec["water_deadline"]
                or life.needs["soil"] > SOIL_DEADLINE
                or life.needs["temperature"] > TEMPERATURE_DEADLINE):
            life.dead = True
            continue
        # stage advance, one stage at a time
        life.ticks_in_stage += 1
        duration = spec["stage_duration"]
        last_stage = len(spec["stages"]) - 1
        if (duration is not None and life.stage_index < last_stage
                and life.ticks_in_stage >= duration
                and all(v == 0 for v in life.needs.values())):
            life.stage_index += 1
            life.ticks_in_stage = 0
            obj.portable = False  # a sprouted plant is rooted
            if spec["stages"][life.stage_index] == "reproducing":
                _spawn_flowers(world, obj, spec)
    _tick_pollination(world)
    _tick_wilting(world)


def _spawn_flowers(world, plant: SimObject, spec: dict) -> None:
    color = _flower_color(world, plant)
    for _ in range(int(spec.get("flowers", 2))):
        world.spawn("flower", plant.id, name_prefix=color)


def _flower_color(world, plant: SimObject) -> str:
    if not plant.genotype:
        return ""
    for trait_name in sorted(plant.genotype):
        tdef = world.trait_defs.get(trait_name)
        if tdef is not None and tdef.part == "flower":
            return genetics.phenotype(plant.genotype, tdef)
    return ""


def _tick_pollination(world) -> None:
    pollinators = sorted(
        (o for o in world.objects.values()
         if o.life is not None and not o.life.dead
         and world.configs.species[o.life.species].get("pollinator")),
        key=lambda o: o.id,
    )
    for bee in pollinators:
        room = world.room_of(bee.id)
        flowering: list[tuple[SimObject, list[SimObject]]] = []
        for obj in sorted(world.objects.values(), key=lambda o: o.id):
            if obj.life is None or obj.life.dead or obj.life.species == bee.life.species:
                continue
            spec = world.configs.species[obj.life.species]
            if spec["kind"] != "plant":
                continue
            if spec["stages"][obj.life.stage_index] != "reproducing":
                continue
            if world.room_of(obj.id).name != room.name:
                continue
            fresh = [f for f in world.children(obj.id)
                     if f.type_name == "flower" and f.pollen_from is None]
            if fresh:
                flowering.append((obj, fresh))
        if len(flowering) < 2:
            continue
        # pollen moves between two distinct plants
        recipient_plant, recipient_flowers = world.rng.choice(flowering)
        donors = [p for p, _ in flowering if p.id != recipient_plant.id]
        donor = world.rng.choice(donors)
        flower = world.rng.choice(recipient_flowers)
        flower.pollen_from = dict(donor.genotype) if donor.genotype else {}
        flower.wilt_countdown = int(world.physics["wilt_ticks"])


def _tick_wilting(world) -> None:
    for oid in sorted(world.objects):
        flower = world.objects.get(oid)
        if flower is None or flower.type_name != "flower" or flower.pollen_from is None:
            continue
        flower.wilt_countdown -= 1
        if flower.wilt_countdown > 0:
            continue
        plant = world.parent_of(oid)
        if plant is None or plant.life is None:
            world.remove(oid)
            continue
        spec = world.configs.species[plant.life.species]
        pollen = flower.pollen_from if flower.pollen_from else None
        world.remove(oid)
        fruit = world.spawn(spec["fruit"], plant.id)
        for _ in range(int(spec.get("seeds_per_fruit", 3))):
            genotype = genetics.punnett_cross(plant.genotype, pollen, world.rng)
            world.spawn_life(plant.life.species, fruit.id, stage=0, genotype=genotype)
