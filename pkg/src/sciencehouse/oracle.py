"""Hand-coded oracle solvers, one per subtask family.

Oracles are reactive scripts with privileged read access to the world
(for navigation and for watching experiment outcomes); they act only
through the normal action interface and solve masked tasks by running
the experiment, never by reading hidden configuration. Each policy is a
generator yielding action strings; PlanStuck signals an engine
regression.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator, Optional

from .env import Environment
from .errors import PlanStuck
from .materials import GAS, LIQUID, SOLID

MAX_PLAN_STEPS = 100


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _name(env: Environment, obj_id: int) -> str:
    world = env.world
    return world.render_unique(obj_id, world.visible_objects())


def _room_path(env: Environment, goal: str) -> list[str]:
    world = env.world
    start = world.room_of(world.agent_id).name
    if start == goal:
        return []
    prev: dict[str, Optional[str]] = {start: None}
    queue = deque([start])
    while queue:
        here = queue.popleft()
        for nb in world.rooms[here].neighbors:
            if nb not in prev:
                prev[nb] = here
                queue.append(nb)
    if goal not in prev:
        raise PlanStuck(f"no path to {goal}")
    path = [goal]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return list(reversed(path))[1:]


def goto(env: Environment, room: str) -> Iterator[str]:
    world = env.world
    if world.room_of(world.agent_id).name == room:
        return
    if "teleport" in world.simplifications:
        yield f"teleport to {room}"
        return
    for hop in _room_path(env, room):
        here = world.room_of(world.agent_id).name
        door = world.door_between(here, hop)
        if door is not None and not door.container.is_open:
            yield f"open {_name(env, door.id)}"
        yield f"go to {hop}"


def reveal(env: Environment, obj_id: int) -> Iterator[str]:
    """Walk to the object's room and open any closed containers above it."""
    world = env.world
    yield from goto(env, world.room_of(obj_id).name)
    chain = []
    node = world.parent_of(obj_id)
    while node is not None and node.category != "room":
        chain.append(node)
        node = world.parent_of(node.id)
    for holder in reversed(chain):
        if holder.container is not None and holder.container.closeable \
                and not holder.container.is_open:
            yield f"open {_name(env, holder.id)}"


def wait_until(env: Environment, condition, limit: int = 90,
               upkeep=None) -> Iterator[str]:
    for _ in range(limit):
        if condition():
            return
        if upkeep is not None:
            yield from upkeep()
        yield "wait"
    if not condition():
        raise PlanStuck("condition never became true while waiting")


def _heat_threshold(env: Environment, substance_id: int) -> float:
    world = env.world
    obj = world.objects[substance_id]
    mat = world.materials[obj.material]
    return mat.melting_point if obj.state_of_matter == SOLID else mat.boiling_point


def _pick_heater(env: Environment, needed: float):
    """Canonical heater: stove, then oven, then the blast furnace."""
    world = env.world
    for type_name in ("stove", "oven", "blast furnace"):
        for obj in sorted(world.objects.values(), key=lambda o: o.id):
            if obj.type_name != type_name or obj.device is None:
                continue
            if obj.device.broken or obj.device.heat_setpoint is None:
                continue
            if obj.device.heat_setpoint > needed + 1:
                return obj
    raise PlanStuck("no working heater is hot enough")


def _heat_substance(env: Environment, substance_id: int) -> Iterator[str]:
    """Bring the substance onto/into a suitable heater and switch it on."""
    world = env.world
    substance = world.objects[substance_id]
    needed = _heat_threshold(env, substance_id)
    heater = _pick_heater(env, needed)
    heater_room = world.room_of(heater.id).name
    if substance.state_of_matter == SOLID:
        carried = substance
    else:
        carried = world.parent_of(substance_id)  # the holder container
    if world.parent.get(carried.id) != heater.id:
        yield from reveal(env, carried.id)
        yield f"pick up {_name(env, carried.id)}"
        yield from goto(env, heater_room)
        if heater.container is not None and heater.container.closeable \
                and not heater.container.is_open:
            yield f"open {_name(env, heater.id)}"
        yield f"move {_name(env, carried.id)} to {_name(env, heater.id)}"
    else:
        yield from goto(env, heater_room)
    if not heater.device.activated:
        yield f"activate {_name(env, heater.id)}"


def _water_upkeep(env: Environment, pot_ids: list[int]):
    """Keep planted pots watered when pots are not self-watering."""
    world = env.world

    def upkeep() -> Iterator[str]:
        if "self watering" in world.simplifications:
            return
        sink = None
        for obj in sorted(world.objects.values(), key=lambda o: o.id):
            if obj.type_name == "sink" and world.room_of(obj.id).name == "greenhouse":
                sink = obj
                break
        if sink is None:
            return
        if not sink.device.activated:
            yield f"activate {_name(env, sink.id)}"
        for pot_id in pot_ids:
            pot = world.objects.get(pot_id)
            if pot is None:
                continue
            plant = next((c for c in world.children(pot_id)
                          if c.life is not None and not c.life.dead), None)
            if plant is None or not plant.life.planted:
                continue
            has_water = any(c.type_name == "water" and world.is_liquid(c)
                            for c in world.children(pot_id))
            if has_water or plant.life.needs.get("water", 0) < 4:
                continue
            water = next((c for c in world.children(sink.id)
                          if c.type_name == "water" and world.is_liquid(c)), None)
            if water is not None:
                yield f"pour {_name(env, water.id)} into {_name(env, pot_id)}"

    return upkeep


# ---------------------------------------------------------------------------
# family plans
# ---------------------------------------------------------------------------

def plan_change_of_state(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    sid = b["substance"]
    substance = world.objects[sid]
    initial_state = substance.state_of_matter
    task = env.runtime.task_id
    yield from reveal(env, sid)
    yield f"focus on {_name(env, sid)}"
    if task == "1-3":  # freeze: move the holder into the freezer
        holder = world.parent_of(sid)
        freezer = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                       if o.type_name == "freezer")
        yield from reveal(env, holder.id)
        yield f"pick up {_name(env, holder.id)}"
        yield from goto(env, world.room_of(freezer.id).name)
        if not freezer.container.is_open:
            yield f"open {_name(env, freezer.id)}"
        yield f"move {_name(env, holder.id)} to {_name(env, freezer.id)}"
        if not freezer.device.activated:
            yield f"activate {_name(env, freezer.id)}"
        yield from wait_until(env, lambda: substance.state_of_matter == SOLID)
        return
    targets = {"1-1": GAS, "1-2": LIQUID}
    yield from _heat_substance(env, sid)
    if task in targets:
        target = targets[task]
        yield from wait_until(env, lambda: substance.state_of_matter == target)
    else:  # 1-4: any state change counts
        yield from wait_until(env, lambda: substance.state_of_matter != initial_state)


def plan_measure_temperature(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    thermometer, target = b["thermometer"], b["object"]
    yield from reveal(env, thermometer)
    yield f"focus on {_name(env, thermometer)}"
    yield f"pick up {_name(env, thermometer)}"
    yield from reveal(env, target)
    reading = world.objects[target].temperature
    yield f"use {_name(env, thermometer)} on {_name(env, target)}"
    box = b["box_above"] if reading > b["threshold"] else b["box_below"]
    yield f"pick up {_name(env, target)}"
    yield from goto(env, b["box_room"])
    yield f"move {_name(env, target)} to {_name(env, box)}"


def plan_boiling_point(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    sid, thermometer = b["substance"], b["thermometer"]
    substance = world.objects[sid]
    yield from reveal(env, sid)
    yield f"focus on {_name(env, sid)}"
    yield from reveal(env, thermometer)
    yield f"pick up {_name(env, thermometer)}"
    yield from _heat_substance(env, sid)
    for _ in range(MAX_PLAN_STEPS):
        if substance.state_of_matter == GAS:
            break
        yield f"use {_name(env, thermometer)} on {_name(env, sid)}"
    else:
        raise PlanStuck("substance never boiled")
    # the latent-heat clamp holds the fresh vapor at the boiling point
    boiling_point = substance.temperature
    yield f"use {_name(env, thermometer)} on {_name(env, sid)}"
    box = b["box_above"] if boiling_point > b["threshold"] else b["box_below"]
    holder = b["holder"]
    yield f"pick up {_name(env, holder)}"
    yield from goto(env, world.room_of(box).name)
    yield f"move {_name(env, holder)} to {_name(env, box)}"


def _connect_series(env: Environment, source: int, consumer: int,
                    middles: list[int]) -> Iterator[str]:
    """Wire source -> [middles] -> consumer -> source, entering cathodes and
    exiting anodes around the loop."""
    world = env.world

    def terminals(oid: int) -> tuple[str, str]:
        obj = world.objects[oid]
        if obj.electrical is not None and obj.electrical.polarized:
            return ("cathode", "anode")  # (entry, exit)
        return ("terminal 1", "terminal 2")

    def link(a: int, term_a: str, b: int, term_b: str) -> str:
        # the valid-action list renders connect pairs lower-id first
        if a > b:
            a, term_a, b, term_b = b, term_b, a, term_a
        return (f"connect {_name(env, a)} {term_a} "
                f"to {_name(env, b)} {term_b}")

    chain = [source] + middles + [consumer]
    for a, b in zip(chain, chain[1:]):
        exit_term = "anode" if a == source else terminals(a)[1]
        entry_term = terminals(b)[0]
        yield link(a, exit_term, b, entry_term)
    yield link(consumer, "anode", source, "cathode")


def plan_circuit(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    target, source = b["target"], b["source"]
    wires = b["wires"][:2]
    yield from goto(env, "workshop")
    yield f"focus on {_name(env, target)}"
    yield from _connect_series(env, source, target, wires)
    yield from wait_until(env, lambda: world.objects[target].device.powered, limit=5)


def plan_renewable(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    target, source = b["target"], b["source"]
    wires = b["wires"][:2]
    yield from goto(env, "workshop")
    yield f"focus on {_name(env, target)}"
    if b["source_room"] != "workshop":
        yield f"pick up {_name(env, target)}"
        for wire in wires:
            yield f"pick up {_name(env, wire)}"
        yield from goto(env, b["source_room"])
        yield f"put down {_name(env, target)}"
        for wire in wires:
            yield f"put down {_name(env, wire)}"
    source_obj = world.objects[source]
    if source_obj.device.switchable and not source_obj.device.activated:
        yield f"activate {_name(env, source)}"
    yield from _connect_series(env, source, target, wires)
    yield from wait_until(env, lambda: world.objects[target].device.powered, limit=5)


def plan_conductivity(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    obj, source, bulb = b["object"], b["source"], b["bulb"]
    wires = b["wires"][:3]
    yield from reveal(env, obj)
    yield f"focus on {_name(env, obj)}"
    yield from _connect_series(env, source, bulb, [wires[0], obj, wires[1]])
    yield "wait"
    lit = world.objects[bulb].device.powered
    box = b["box_conductive"] if lit else b["box_nonconductive"]
    yield f"disconnect {_name(env, obj)}"
    yield f"pick up {_name(env, obj)}"
    yield f"move {_name(env, obj)} to {_name(env, box)}"


def plan_classification(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    task = env.runtime.task_id
    if task in ("4-1", "4-3"):
        target = b["portable_seed"]
    elif task == "4-4":
        candidates = [
            o for o in sorted(world.objects.values(), key=lambda o: o.id)
            if o.life is not None and not o.life.dead and o.portable
            and world.configs.species[o.life.species]["kind"] == "animal"
        ]
        if not candidates:
            raise PlanStuck("no portable animal to classify")
        target = candidates[0].id
    else:  # 4-2: any portable non-living thing; the kitchen fork is canonical
        target = next(o.id for o in sorted(world.objects.values(), key=lambda o: o.id)
                      if o.type_name == "metal fork")
    yield from reveal(env, target)
    yield f"focus on {_name(env, target)}"
    yield f"pick up {_name(env, target)}"
    yield from goto(env, b["box_room"])
    yield f"move {_name(env, target)} to {_name(env, b['correct_box'])}"


def plan_grow_plant(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    seed, pot = b["seed"], b["pot"]
    plant = world.objects[seed]
    if b["soil_mode"] == "dig":
        shovel = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                      if o.type_name == "shovel")
        yield from reveal(env, shovel.id)
        yield f"pick up {_name(env, shovel.id)}"
        yield from goto(env, "outside")
        ground = next(o for o in world.objects.values() if o.diggable)
        yield f"use {_name(env, shovel.id)} on {_name(env, ground.id)}"
        soil = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                    if o.type_name == "soil")
        yield f"pick up {_name(env, soil.id)}"
        yield from goto(env, "greenhouse")
        yield f"move {_name(env, soil.id)} to {_name(env, pot)}"
    elif b["soil_mode"] == "room":
        soil = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                    if o.type_name == "soil")
        yield from reveal(env, soil.id)
        yield f"move {_name(env, soil.id)} to {_name(env, pot)}"
    yield from goto(env, "greenhouse")
    yield f"focus on {_name(env, seed)}"
    yield f"move {_name(env, seed)} to {_name(env, pot)}"
    stages = world.configs.species[plant.life.species]["stages"]
    adult = stages.index("adult")
    yield from wait_until(
        env,
        lambda: plant.life.stage_index >= adult and not plant.life.dead,
        upkeep=_water_upkeep(env, [pot]))
    if plant.life.dead:
        raise PlanStuck("plant died while growing")


def _release_bee(env: Environment) -> Iterator[str]:
    world = env.world
    for obj in sorted(world.objects.values(), key=lambda o: o.id):
        if obj.type_name == "bee jar" and obj.container.closeable \
                and not obj.container.is_open:
            yield f"open {_name(env, obj.id)}"


def plan_grow_fruit(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    seed_a, seed_b = b["seed_a"], b["seed_b"]
    pot_a, pot_b = b["pot_a"], b["pot_b"]
    species = b["species"]
    plant_a, plant_b = world.objects[seed_a], world.objects[seed_b]
    yield from goto(env, "greenhouse")
    yield f"focus on {_name(env, seed_a)}"
    yield f"move {_name(env, seed_a)} to {_name(env, pot_a)}"
    yield f"move {_name(env, seed_b)} to {_name(env, pot_b)}"
    yield from _release_bee(env)
    fruit_type = world.configs.species[species]["fruit"]

    def fruit_grown() -> bool:
        for obj in world.objects.values():
            if obj.type_name == fruit_type and any(
                    c.life is not None and c.life.species == species
                    for c in world.children(obj.id)):
                return True
        return False

    yield from wait_until(env, fruit_grown,
                          upkeep=_water_upkeep(env, [pot_a, pot_b]))
    if plant_a.life.dead or plant_b.life.dead:
        raise PlanStuck("a plant died before fruiting")


def plan_mix_generic(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    output, jar = b["output"], b["mix_jar"]
    note = b["note"]
    solid_type = b["solid_ingredient"]
    yield from reveal(env, note)
    yield f"read {_name(env, note)}"
    solid = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                 if o.type_name == solid_type and o.is_substance)
    yield from reveal(env, solid.id)
    yield f"pick up {_name(env, solid.id)}"
    yield from goto(env, b["mix_room"])
    yield f"move {_name(env, solid.id)} to {_name(env, jar)}"
    sink = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                if o.type_name == "sink"
                and world.room_of(o.id).name == b["mix_room"])
    if not sink.device.activated:
        yield f"activate {_name(env, sink.id)}"
    yield from wait_until(
        env, lambda: any(c.type_name == "water" and world.is_liquid(c)
                         for c in world.children(sink.id)), limit=3)
    water = next(c for c in world.children(sink.id)
                 if c.type_name == "water" and world.is_liquid(c))
    yield f"pour {_name(env, water.id)} into {_name(env, jar)}"
    yield f"mix {_name(env, jar)}"
    product = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                   if o.type_name == output)
    yield f"focus on {_name(env, product.id)}"


def _pour_paint(env: Environment, colour: str, jar: int) -> Iterator[str]:
    world = env.world
    paint = next((o for o in sorted(world.objects.values(), key=lambda o: o.id)
                  if o.type_name == colour and world.parent.get(o.id) != jar), None)
    if paint is None:
        raise PlanStuck(f"no {colour} left to pour")
    yield f"pour {_name(env, paint.id)} into {_name(env, jar)}"


def plan_mix_paint(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    output, jar = b["output"], b["mix_jar"]
    recipes = {r["output"]: list(r["inputs"]) for r in world.configs.recipes}
    input_a, input_b = recipes[output]
    yield from goto(env, b["mix_room"])
    # mix any intermediate colour first so the jar contents always match a recipe
    inputs = sorted((input_a, input_b), key=lambda c: c not in recipes)
    for colour in inputs:
        if colour in recipes:
            base_a, base_b = recipes[colour]
            yield from _pour_paint(env, base_a, jar)
            yield from _pour_paint(env, base_b, jar)
            yield f"mix {_name(env, jar)}"
        else:
            yield from _pour_paint(env, colour, jar)
    yield f"mix {_name(env, jar)}"
    product = next(o for o in sorted(world.objects.values(), key=lambda o: o.id)
                   if o.type_name == output)
    yield f"focus on {_name(env, product.id)}"


def plan_lifespan(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    animals = [b["animal_a"], b["animal_b"], b["animal_c"]]
    yield from goto(env, world.room_of(animals[0]).name)
    for animal in animals:
        yield f"look at {_name(env, animal)}"
    spans = {a: world.configs.species[world.objects[a].life.species]["lifespan"]
             for a in animals}
    answers = {"longest": max(animals, key=lambda a: spans[a]),
               "shortest": min(animals, key=lambda a: spans[a])}
    order = {"7-1": ["longest"], "7-2": ["shortest"],
             "7-3": ["longest", "shortest"]}[env.runtime.task_id]
    for which in order:
        yield f"focus on {_name(env, answers[which])}"


def plan_life_stages(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    stage_ids = []
    i = 0
    while f"stage_{i}" in b:
        stage_ids.append(b[f"stage_{i}"])
        i += 1
    yield from goto(env, b["task_room"])
    yield f"look at {_name(env, stage_ids[0])}"
    for sid in stage_ids:
        yield f"focus on {_name(env, sid)}"


def plan_planes(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    plane_a, plane_b = b["plane_a"], b["plane_b"]
    yield from goto(env, "workshop")
    block = next(o.id for o in sorted(world.objects.values(), key=lambda o: o.id)
                 if o.type_name == "block")

    def time_plane(plane_id: int) -> Iterator[str]:
        yield from reveal(env, block)
        if world.parent.get(block) != world.agent_id:
            yield f"pick up {_name(env, block)}"
        yield f"move {_name(env, block)} to {_name(env, plane_id)}"
        for _ in range(MAX_PLAN_STEPS):
            if world.objects[plane_id].plane.load_id != block:
                return
            yield "wait"
        raise PlanStuck("block never reached the bottom")

    ticks = {}
    for plane_id in (plane_a, plane_b):
        start = world.tick_count
        yield from time_plane(plane_id)
        ticks[plane_id] = world.tick_count - start
    if ticks[plane_a] == ticks[plane_b]:
        raise PlanStuck("planes are indistinguishable by timing")
    faster = plane_a if ticks[plane_a] < ticks[plane_b] else plane_b
    slower = plane_b if faster == plane_a else plane_a
    task = env.runtime.task_id
    question = world.configs.tasks[task]["variations"][env.runtime.variation_index]["question"]
    if task == "9-1":
        answer = faster if question == "steepest" else slower
    else:  # more friction -> slower
        answer = slower if question == "most" else faster
    yield f"focus on {_name(env, answer)}"


def plan_genetics(env: Environment) -> Iterator[str]:
    world = env.world
    b = env.runtime.bindings
    species = b["species"]
    seed_a, seed_b = b["seed_a"], b["seed_b"]
    pots = b["pots"]
    trait = world.trait_defs[b["trait"]]
    plant_a, plant_b = world.objects[seed_a], world.objects[seed_b]
    spec = world.configs.species[species]
    reproducing = spec["stages"].index("reproducing")
    yield from goto(env, "greenhouse")
    yield f"focus on {_name(env, seed_a)}"
    yield f"move {_name(env, seed_a)} to {_name(env, pots[0])}"
    yield f"move {_name(env, seed_b)} to {_name(env, pots[1])}"
    yield from _release_bee(env)
    upkeep = _water_upkeep(env, pots)
    yield from wait_until(
        env,
        lambda: (plant_a.life.stage_index >= reproducing
                 and plant_b.life.stage_index >= reproducing),
        upkeep=upkeep)

    def offspring_seeds() -> list:
        out = []
        for obj in sorted(world.objects.values(), key=lambda o: o.id):
            if obj.type_name != spec["fruit"]:
                continue
            for child in world.children(obj.id):
                if child.life is not None and child.life.species == species \
                        and child.life.stage_index == 0:
                    out.append(child)
        return out

    yield from wait_until(env, lambda: len(offspring_seeds()) >= 2, upkeep=upkeep)
    offspring = offspring_seeds()
    answer_seed, observe_seed = offspring[0], offspring[1]

    def observed_value(obj) -> Optional[str]:
        ref = world.referents(obj.id)[0]
        for value in (trait.dominant_value, trait.recessive_value):
            if ref.startswith(value + " "):
                return value
        return None

    if trait.part == "self" and trait.visible_at == "seed":
        yield f"look at {_name(env, observe_seed.id)}"
        dominant_shown = observed_value(observe_seed)
    else:
        yield f"move {_name(env, observe_seed.id)} to {_name(env, pots[2])}"
        target_stage = spec["stages"].index(trait.visible_at)
        yield from wait_until(
            env,
            lambda: observe_seed.life.stage_index >= target_stage
            and not observe_seed.life.dead,
            upkeep=upkeep)
        if trait.part == "flower":
            flower = next(c for c in world.children(observe_seed.id)
                          if c.type_name == "flower")
            yield f"look at {_name(env, flower.id)}"
            dominant_shown = flower.name_prefix
        else:
            yield f"look at {_name(env, observe_seed.id)}"
            dominant_shown = observed_value(observe_seed)
    if dominant_shown is None:
        raise PlanStuck("could not observe the offspring phenotype")
    # every offspring is heterozygous, so the shown value is the dominant one
    box = b["box_dominant"] if b["asked"] == dominant_shown else b["box_recessive"]
    yield f"move {_name(env, answer_seed.id)} to {_name(env, box)}"


PLANS = {
    "1-1": plan_change_of_state, "1-2": plan_change_of_state,
    "1-3": plan_change_of_state, "1-4": plan_change_of_state,
    "2-1": plan_measure_temperature,
    "2-2": plan_boiling_point, "2-3": plan_boiling_point,
    "3-1": plan_circuit, "3-2": plan_renewable,
    "3-3": plan_conductivity, "3-4": plan_conductivity,
    "4-1": plan_classification, "4-2": plan_classification,
    "4-3": plan_classification, "4-4": plan_classification,
    "5-1": plan_grow_plant, "5-2": plan_grow_fruit,
    "6-1": plan_mix_generic, "6-2": plan_mix_paint, "6-3": plan_mix_paint,
    "7-1": plan_lifespan, "7-2": plan_lifespan, "7-3": plan_lifespan,
    "8-1": plan_life_stages, "8-2": plan_life_stages,
    "9-1": plan_planes, "9-2": plan_planes, "9-3": plan_planes,
    "10-1": plan_genetics, "10-2": plan_genetics,
}


class OraclePolicy:
    """Scripted per-episode decision procedure: feed it observations, get
    the next canonical action."""

    def __init__(self, env: Environment):
        self.env = env
        self._plan = PLANS[env.runtime.task_id](env)
        self._exhausted = False

    def next_action(self, observation=None) -> str:
        if self.env.done:
            raise PlanStuck("the episode is over")
        try:
            return next(self._plan)
        except StopIteration:
            self._exhausted = True
            raise PlanStuck("oracle plan ran out of actions before success")


def oracle_next_action(env: Environment, observation=None,
                       plan_state: Optional[OraclePolicy] = None
                       ) -> tuple[str, OraclePolicy]:
    """Functional step interface: returns the next canonical action and the
    carried plan state."""
    if plan_state is None:
        plan_state = OraclePolicy(env)
    return plan_state.next_action(observation), plan_state


def run_oracle_episode(task_id: str, variation: int, seed: int,
                       simplifications="easy",
                       check_valid: bool = False) -> dict:
    """Run the oracle to episode end; returns the transcript dict. Raises
    PlanStuck if the policy cannot reach success."""
    env = Environment()
    obs = env.reset(task_id, variation, seed, simplifications)
    policy = OraclePolicy(env)
    for _ in range(3 * MAX_PLAN_STEPS):
        if env.done:
            break
        action = policy.next_action(obs)
        if check_valid:
            valid = env.valid_actions()
            if action not in valid:
                raise PlanStuck(
                    f"oracle action {action!r} not in the valid-action list "
                    f"({task_id} v{variation} s{seed})")
        obs = env.step(action)
    if env.outcome != "success" or env.score() != 1.0:
        raise PlanStuck(
            f"oracle failed {task_id} v{variation} s{seed}: "
            f"outcome={env.outcome} score={env.score():.3f}")
    return env.transcript.as_dict()
