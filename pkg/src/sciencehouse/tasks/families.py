"""Per-family world population for task variations.

A family builder takes the freshly built house (fixtures + agent already
placed), the variation row, and the build rng; it spawns the critical
task objects, computes slot bindings and display strings, and returns the
focus-eligibility rule. Hidden properties of masked variations arrive
pre-assigned (balanced across the task's variations) in row["_hidden"].
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from ..materials import Material
from ..objects import SimObject
from ..world import TraitDefinition, World


@dataclass
class BuildResult:
    bindings: dict[str, object] = field(default_factory=dict)
    display: dict[str, str] = field(default_factory=dict)
    focus_eligible: Callable[[World, int], bool] = lambda w, oid: True
    extra_required: list[dict] = field(default_factory=list)


def _find_in_room(world: World, type_name: str, room: str) -> SimObject:
    room_id = world.rooms[room].obj_id
    stack = [room_id]
    while stack:
        nid = stack.pop(0)
        for child in world.children(nid):
            if child.type_name == type_name:
                return child
            stack.append(child.id)
    raise KeyError(f"no {type_name!r} in {room}")


def _find_all_in_room(world: World, type_name: str, room: str) -> list[SimObject]:
    room_id = world.rooms[room].obj_id
    out, stack = [], [room_id]
    while stack:
        nid = stack.pop(0)
        for child in world.children(nid):
            if child.type_name == type_name:
                out.append(child)
            stack.append(child.id)
    return sorted(out, key=lambda o: o.id)


def _spawn_boxes(world: World, room: str, color_a: str, color_b: str):
    room_id = world.rooms[room].obj_id
    box_a = world.spawn("answer box", room_id, name_prefix=color_a)
    box_b = world.spawn("answer box", room_id, name_prefix=color_b)
    return box_a, box_b


def _eligible_ids(*ids: int) -> Callable[[World, int], bool]:
    allowed = set(ids)
    return lambda world, oid: oid in allowed


def _unknown_substance_material(name: str, boiling_point: float = 2500.0,
                                conductive: bool = False,
                                friction: float = 0.3,
                                melting_point: float = 1500.0) -> Material:
    return Material(
        name=name,
        thermal_conduction_coeff=0.7,
        melting_point=melting_point,
        boiling_point=boiling_point,
        combustion_point=None,
        electrically_conductive=conductive,
        friction_coeff=friction,
        phase_names={"solid": f"frozen {name}" if melting_point < 100 else name,
                     "liquid": name if melting_point < 100 else f"molten {name}",
                     "gas": f"{name} vapor"},
    )


def _ablate(world: World, names: list[str]):
    for type_name in names:
        for obj in world.objects.values():
            if obj.type_name == type_name and obj.device is not None:
                obj.device.broken = True
                obj.device.activated = False


# ---------------------------------------------------------------------------

def build_change_of_state(world: World, row: dict, params: dict,
                          rng: random.Random) -> BuildResult:
    holder = _find_in_room(world, row["holder"], row["room"])
    substance = world.spawn_substance(row["substance"], holder.id)
    _ablate(world, row.get("ablate", []))
    freezer = _find_in_room(world, "freezer", "kitchen")
    res = BuildResult()
    res.bindings = {"substance": substance.id, "substance_room": row["room"],
                    "holder": holder.id, "cooler": freezer.id}
    res.display = {"substance": world.referents(substance.id)[0],
                   "substance_room": row["room"]}
    res.focus_eligible = _eligible_ids(substance.id)
    return res


def build_measure_temperature(world: World, row: dict, params: dict,
                              rng: random.Random) -> BuildResult:
    if "find" in row:
        target = _find_in_room(world, row["find"], row["room"])
    else:
        holder = _find_in_room(world, row["holder"], row["room"])
        target = world.spawn_substance(row["substance"], holder.id)
    thermometer = _find_in_room(world, "thermometer", "kitchen")
    box_red, box_green = _spawn_boxes(world, row["box_room"], "red", "green")
    above = target.temperature > row["threshold"]
    res = BuildResult()
    res.bindings = {
        "object": target.id,
        "object_room": row["room"],
        "thermometer": thermometer.id,
        "box_above": box_red.id,
        "box_below": box_green.id,
        "correct_box": box_red.id if above else box_green.id,
        "wrong_box": box_green.id if above else box_red.id,
        "threshold": row["threshold"],
        "box_room": row["box_room"],
    }
    res.display = {
        "object": world.render_unique(target.id, {target.id}),
        "object_room": row["room"],
        "threshold": str(row["threshold"]),
        "box_room": row["box_room"],
    }
    res.focus_eligible = _eligible_ids(thermometer.id)
    return res


def build_boiling_point(world: World, row: dict, params: dict,
                        rng: random.Random) -> BuildResult:
    thermometer = _find_in_room(world, "thermometer", "kitchen")
    if params.get("masked"):
        name = f"unknown substance {row['letter']}".lower()
        above = bool(row["_hidden"])
        bp = rng.choice([120.0, 140.0, 160.0] if above else [40.0, 60.0, 80.0])
        world.add_material(_unknown_substance_material(name, boiling_point=bp,
                                                       melting_point=-20.0))
        holder = _find_in_room(world, "glass jar", "kitchen")
        substance = world.spawn_substance(name, holder.id)
        room = "kitchen"
    else:
        holder = _find_in_room(world, row["holder"], row["room"])
        substance = world.spawn_substance(row["substance"], holder.id)
        room = row["room"]
    box_red, box_green = _spawn_boxes(world, "kitchen", "red", "green")
    bp = world.materials[substance.material].boiling_point
    above = bp > row["threshold"]
    res = BuildResult()
    res.bindings = {
        "substance": substance.id,
        "substance_room": room,
        "holder": holder.id,
        "thermometer": thermometer.id,
        "box_above": box_red.id,
        "box_below": box_green.id,
        "correct_box": box_red.id if above else box_green.id,
        "wrong_box": box_green.id if above else box_red.id,
        "threshold": row["threshold"],
    }
    res.display = {
        "substance": world.referents(substance.id)[0],
        "substance_room": room,
        "threshold": str(row["threshold"]),
    }
    res.focus_eligible = _eligible_ids(substance.id)
    return res


def _spawn_wires(world: World, colors: list[str]) -> list[SimObject]:
    workbench = _find_in_room(world, "workbench", "workshop")
    return [world.spawn("wire", workbench.id, name_prefix=c) for c in colors]


def build_circuit(world: World, row: dict, params: dict,
                  rng: random.Random) -> BuildResult:
    wires = _spawn_wires(world, row["colors"])
    target = _find_in_room(world, row["target"], "workshop")
    battery = _find_in_room(world, "battery", "workshop")
    res = BuildResult()
    res.bindings = {"target": target.id, "source": battery.id,
                    "task_room": "workshop",
                    "wires": [w.id for w in wires]}
    res.display = {"target": row["target"]}
    res.focus_eligible = _eligible_ids(target.id)
    return res


def build_renewable(world: World, row: dict, params: dict,
                    rng: random.Random) -> BuildResult:
    wires = _spawn_wires(world, ["red", "blue", "green"])
    target = _find_in_room(world, row["target"], "workshop")
    source_room = "outside" if row["source"] in ("solar panel", "wind generator") else "workshop"
    source = _find_in_room(world, row["source"], source_room)
    res = BuildResult()
    res.bindings = {"target": target.id, "source": source.id,
                    "source_room": source_room,
                    "renewable": row["source_class"] == "renewable",
                    "wires": [w.id for w in wires]}
    res.display = {"target": row["target"], "source_class": row["source_class"]}
    res.focus_eligible = _eligible_ids(target.id)
    return res


def build_conductivity(world: World, row: dict, params: dict,
                       rng: random.Random) -> BuildResult:
    workbench = _find_in_room(world, "workbench", "workshop")
    wires = _spawn_wires(world, ["red", "blue", "green"])
    if params.get("masked"):
        name = f"unknown substance {row['letter']}".lower()
        conductive = bool(row["_hidden"])
        world.add_material(_unknown_substance_material(name, conductive=conductive))
        obj = world.spawn_substance(name, workbench.id)
    else:
        obj = world.spawn(row["object"], workbench.id)
        conductive = world.materials[obj.material].electrically_conductive
    box_red, box_green = _spawn_boxes(world, "workshop", "red", "green")
    battery = _find_in_room(world, "battery", "workshop")
    bulb = _find_in_room(world, "light bulb", "workshop")
    res = BuildResult()
    res.bindings = {
        "object": obj.id,
        "source": battery.id,
        "bulb": bulb.id,
        "task_room": "workshop",
        "box_conductive": box_red.id,
        "box_nonconductive": box_green.id,
        "correct_box": box_red.id if conductive else box_green.id,
        "wrong_box": box_green.id if conductive else box_red.id,
        "wires": [w.id for w in wires],
    }
    res.display = {"object": world.render_unique(obj.id, {obj.id})}
    res.focus_eligible = _eligible_ids(obj.id)
    return res


def _is_living(world: World, oid: int) -> bool:
    obj = world.objects[oid]
    return obj.life is not None and not obj.life.dead


def _is_nonliving(world: World, oid: int) -> bool:
    obj = world.objects[oid]
    return (obj.life is None and not obj.is_agent and not obj.is_door
            and obj.category != "room")


def _is_kind(world: World, oid: int, kind: str) -> bool:
    obj = world.objects[oid]
    return (obj.life is not None and not obj.life.dead
            and world.configs.species[obj.life.species]["kind"] == kind)


CATEGORY_RULES = {
    "living": _is_living,
    "nonliving": _is_nonliving,
    "plant": lambda world, oid: _is_kind(world, oid, "plant"),
    "animal": lambda world, oid: _is_kind(world, oid, "animal"),
}


def _spawn_menagerie(world: World, species_list: list[str]):
    outside = world.rooms["outside"].obj_id
    for species in species_list:
        spec = world.configs.species[species]
        world.spawn_life(species, outside, stage=len(spec["stages"]) - 1)


def build_classification(world: World, row: dict, params: dict,
                         rng: random.Random) -> BuildResult:
    _spawn_menagerie(world, row.get("critters", []))
    pots = _find_all_in_room(world, "flower pot", "greenhouse")
    world.spawn_life("pea plant", pots[0].id, stage=2)  # adult display plant
    table = _find_in_room(world, "table", "greenhouse")
    seed = world.spawn_life("pea plant", table.id, stage=0)
    box = world.spawn("answer box", world.rooms[row["box_room"]].obj_id,
                      name_prefix=row["box_color"])
    rule = CATEGORY_RULES[params["category"]]
    res = BuildResult()
    res.bindings = {"correct_box": box.id, "box_room": row["box_room"],
                    "category_fn": rule, "portable_seed": seed.id}
    res.display = {"box_color": row["box_color"], "box_room": row["box_room"]}
    res.focus_eligible = rule
    return res


def build_grow_plant(world: World, row: dict, params: dict,
                     rng: random.Random) -> BuildResult:
    table = _find_in_room(world, "table", "greenhouse")
    pots = _find_all_in_room(world, "flower pot", "greenhouse")
    seed = world.spawn_life(row["species"], table.id, stage=0)
    if row["soil"] == "pot":
        world.spawn_substance("soil", pots[0].id)
    elif row["soil"] == "room":
        world.spawn_substance("soil", table.id)
    res = BuildResult()
    res.bindings = {"seed": seed.id, "pot": pots[0].id,
                    "task_room": "greenhouse", "soil_mode": row["soil"]}
    res.display = {"species": row["species"]}
    res.focus_eligible = _eligible_ids(seed.id)
    return res


def build_grow_fruit(world: World, row: dict, params: dict,
                     rng: random.Random) -> BuildResult:
    table = _find_in_room(world, "table", "greenhouse")
    pots = _find_all_in_room(world, "flower pot", "greenhouse")
    species = row["species"]
    seed_a = world.spawn_life(species, table.id, stage=0)
    seed_b = world.spawn_life(species, table.id, stage=0)
    world.spawn_substance("soil", pots[0].id)
    world.spawn_substance("soil", pots[1].id)
    res = BuildResult()
    res.bindings = {"species": species, "seed_a": seed_a.id, "seed_b": seed_b.id,
                    "pot_a": pots[0].id, "pot_b": pots[1].id,
                    "task_room": "greenhouse"}
    res.display = {"species": species,
                   "fruit": world.configs.species[species]["fruit"]}
    res.focus_eligible = lambda w, oid: (
        w.objects[oid].life is not None and w.objects[oid].life.species == species)
    return res


SOLID_INGREDIENT = {"salt water": "salt", "soapy water": "soap",
                    "sugar water": "sugar", "dough": "flour"}


def build_mix_generic(world: World, row: dict, params: dict,
                      rng: random.Random) -> BuildResult:
    output = row["output"]
    solid = SOLID_INGREDIENT[output]
    if solid != "soap":  # soap is already a bathroom fixture
        cupboard = _find_in_room(world, "cupboard", "kitchen")
        world.spawn_substance(solid, cupboard.id)
    counter = _find_in_room(world, "counter", "kitchen")
    note = world.spawn("recipe note", counter.id,
                       document_text=f"To make {output}, mix: {solid} and water.")
    jar = _find_in_room(world, "glass jar", "kitchen")
    res = BuildResult()
    res.bindings = {"output": output, "note": note.id, "mix_jar": jar.id,
                    "solid_ingredient": solid, "mix_room": "kitchen"}
    res.display = {"output": output}
    res.focus_eligible = lambda w, oid: w.objects[oid].type_name == output
    return res


def build_mix_paint(world: World, row: dict, params: dict,
                    rng: random.Random) -> BuildResult:
    output = row["output"]
    recipes = {r["output"]: list(r["inputs"]) for r in world.configs.recipes}
    input_a, input_b = recipes[output]
    res = BuildResult()
    if params.get("tertiary"):
        # one input is itself mixed; the duplicated primary needs a second cup
        intermediate = input_a if input_a in recipes else input_b
        primary = input_b if intermediate == input_a else input_a
        base_a, base_b = recipes[intermediate]
        needed = [base_a, base_b, primary]
        duplicated = next(c for c in needed if needed.count(c) == 2)
        shelf = _find_in_room(world, "shelf", "art studio")
        extra_cup = world.spawn("wood cup", shelf.id)
        world.spawn_substance(duplicated, extra_cup.id)
        res.bindings["intermediate"] = intermediate
    jar = _find_in_room(world, "glass jar", "art studio")
    res.bindings.update({"output": output, "input_a": input_a, "input_b": input_b,
                         "mix_jar": jar.id, "mix_room": "art studio"})
    res.display = {"output": output}
    res.focus_eligible = lambda w, oid: w.objects[oid].type_name == output
    return res


def build_lifespan(world: World, row: dict, params: dict,
                   rng: random.Random) -> BuildResult:
    outside = world.rooms["outside"].obj_id
    animals = []
    for species in row["animals"]:
        spec = world.configs.species[species]
        animals.append(world.spawn_life(species, outside, stage=len(spec["stages"]) - 1))
    spans = {a.id: world.configs.species[a.life.species]["lifespan"] for a in animals}
    longest = max(animals, key=lambda a: spans[a.id])
    shortest = min(animals, key=lambda a: spans[a.id])
    answers = {"longest": longest.id, "shortest": shortest.id}
    order = params["order"]
    res = BuildResult()
    res.bindings = {"animal_a": animals[0].id, "animal_b": animals[1].id,
                    "animal_c": animals[2].id}
    for i, which in enumerate(order):
        res.bindings[f"answer_{i}"] = answers[which]
    res.display = {}
    res.focus_eligible = _eligible_ids(*(answers[w] for w in order))
    return res


def build_life_stages_plant(world: World, row: dict, params: dict,
                            rng: random.Random) -> BuildResult:
    pots = _find_all_in_room(world, "flower pot", "greenhouse")
    species = row["species"]
    n_stages = len(world.configs.species[species]["stages"])
    res = BuildResult()
    ids = []
    for stage in range(n_stages):
        inst = world.spawn_life(species, pots[stage].id, stage=stage)
        ids.append(inst.id)
        res.bindings[f"stage_{stage}"] = inst.id
    res.bindings["task_room"] = "greenhouse"
    res.display = {"species": species}
    res.focus_eligible = _eligible_ids(*ids)
    return res


def build_life_stages_animal(world: World, row: dict, params: dict,
                             rng: random.Random) -> BuildResult:
    outside = world.rooms["outside"].obj_id
    species = row["species"]
    n_stages = len(world.configs.species[species]["stages"])
    res = BuildResult()
    ids = []
    for stage in range(n_stages):
        inst = world.spawn_life(species, outside, stage=stage)
        ids.append(inst.id)
        res.bindings[f"stage_{stage}"] = inst.id
        res.extra_required.append({"pred": "focused-on", "slot": f"stage_{stage}"})
    res.bindings["task_room"] = "outside"
    res.display = {"species": species}
    res.focus_eligible = _eligible_ids(*ids)
    return res


PLANE_FRICTIONS = [0.10, 0.25, 0.40, 0.55]


def build_planes(world: World, row: dict, params: dict,
                 rng: random.Random) -> BuildResult:
    room_id = world.rooms["workshop"].obj_id
    workbench = _find_in_room(world, "workbench", "workshop")
    plane_a = world.spawn("inclined plane", room_id, name_prefix="red")
    plane_b = world.spawn("inclined plane", room_id, name_prefix="green")
    world.spawn("block", workbench.id)
    world.spawn("block", workbench.id)
    if params["compare"] == "angle":
        plane_a.plane.angle = float(row["angles"][0])
        plane_b.plane.angle = float(row["angles"][1])
        plane_a.material = plane_b.material = "steel"
        steeper = plane_a if plane_a.plane.angle > plane_b.plane.angle else plane_b
        shallower = plane_b if steeper is plane_a else plane_a
        answer = steeper if row["question"] == "steepest" else shallower
    else:
        plane_a.plane.angle = plane_b.plane.angle = 45.0
        if params.get("masked"):
            frictions = rng.sample(PLANE_FRICTIONS, 2)
            high = max(frictions)
            low = min(frictions)
            a_high = bool(row["_hidden"])
            mat_a = _unknown_substance_material(
                "unknown material a", friction=(high if a_high else low))
            mat_b = _unknown_substance_material(
                "unknown material b", friction=(low if a_high else high))
            world.add_material(mat_a)
            world.add_material(mat_b)
            plane_a.material = mat_a.name
            plane_b.material = mat_b.name
        else:
            plane_a.material = row["materials"][0]
            plane_b.material = row["materials"][1]
        fric_a = world.materials[plane_a.material].friction_coeff
        fric_b = world.materials[plane_b.material].friction_coeff
        rougher = plane_a if fric_a > fric_b else plane_b
        smoother = plane_b if rougher is plane_a else plane_a
        answer = rougher if row["question"] == "most" else smoother
    res = BuildResult()
    res.bindings = {"plane_a": plane_a.id, "plane_b": plane_b.id,
                    "answer_plane": answer.id, "task_room": "workshop"}
    res.display = {"question": row["question"]}
    res.focus_eligible = _eligible_ids(answer.id)
    return res


def build_genetics(world: World, row: dict, params: dict,
                   rng: random.Random) -> BuildResult:
    species = row.get("species", "pea plant")
    trait_name = row["trait"]
    template = world.configs.traits[trait_name]
    values = list(template["values"])
    if params.get("masked"):
        dominant_value = values[0] if bool(row["_hidden"]) else values[1]
    else:
        dominant_value = template["pea_dominant"]
    recessive_value = next(v for v in values if v != dominant_value)
    tdef = TraitDefinition(
        name=trait_name,
        dominant_symbol=template["symbols"][0],
        recessive_symbol=template["symbols"][1],
        dominant_value=dominant_value,
        recessive_value=recessive_value,
        visible_at=template["visible_at"],
        part=template["part"],
    )
    world.trait_defs[trait_name] = tdef
    table = _find_in_room(world, "table", "greenhouse")
    pots = _find_all_in_room(world, "flower pot", "greenhouse")
    for pot in pots[:3]:
        world.spawn_substance("soil", pot.id)
    genomes = [
        {trait_name: (tdef.dominant_symbol, tdef.dominant_symbol)},
        {trait_name: (tdef.recessive_symbol, tdef.recessive_symbol)},
    ]
    rng.shuffle(genomes)
    seed_a = world.spawn_life(species, table.id, stage=0, genotype=genomes[0])
    seed_b = world.spawn_life(species, table.id, stage=0, genotype=genomes[1])
    box_red, box_green = _spawn_boxes(world, "greenhouse", "red", "green")
    dominant_asked = row["asked"] == dominant_value
    res = BuildResult()
    res.bindings = {
        "species": species,
        "seed_a": seed_a.id,
        "seed_b": seed_b.id,
        "pots": [p.id for p in pots[:3]],
        "box_dominant": box_red.id,
        "box_recessive": box_green.id,
        "correct_box": box_red.id if dominant_asked else box_green.id,
        "wrong_box": box_green.id if dominant_asked else box_red.id,
        "trait": trait_name,
        "asked": row["asked"],
        "task_room": "greenhouse",
    }
    res.display = {"species": species, "trait": trait_name, "asked": row["asked"]}
    res.focus_eligible = lambda w, oid: (
        w.objects[oid].life is not None and w.objects[oid].life.species == species)
    return res


FAMILIES = {
    "change_of_state": build_change_of_state,
    "measure_temperature": build_measure_temperature,
    "boiling_point": build_boiling_point,
    "circuit": build_circuit,
    "renewable": build_renewable,
    "conductivity": build_conductivity,
    "classification": build_classification,
    "grow_plant": build_grow_plant,
    "grow_fruit": build_grow_fruit,
    "mix_generic": build_mix_generic,
    "mix_paint": build_mix_paint,
    "lifespan": build_lifespan,
    "life_stages_plant": build_life_stages_plant,
    "life_stages_animal": build_life_stages_animal,
    "planes": build_planes,
    "genetics": build_genetics,
}
