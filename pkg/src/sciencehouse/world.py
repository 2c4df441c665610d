"""The object-tree world model.

Rooms are ordinary objects with no parent; every other object has exactly
one parent, and containment drives visibility, thermal contact and the
rendered descriptions. All mutation goes through one World instance
(single writer); all randomness flows through ``world.rng``.
"""

from __future__ import annotations

import json
import random
from bisect import insort
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .config import Configs, load_configs
from .materials import LIQUID, SOLID, Material
from .objects import (
    ContainerFacet,
    DeviceFacet,
    ElectricalFacet,
    LifeFacet,
    PlaneFacet,
    SimObject,
)

VOWELS = "aeiou"


def article_for(name: str) -> str:
    return "an" if name[:1].lower() in VOWELS else "a"


@dataclass
class TraitDefinition:
    name: str
    dominant_symbol: str
    recessive_symbol: str
    dominant_value: str
    recessive_value: str
    visible_at: str  # earliest stage name at which the phenotype shows
    part: str        # "flower" or "self"


@dataclass
class Room:
    name: str
    obj_id: int
    ambient: float
    neighbors: list[str] = field(default_factory=list)


class World:
    """Mutable world state: object tree, rooms, materials and trait defs."""

    def __init__(self, configs: Optional[Configs] = None, seed: int = 0,
                 simplifications: Optional[set[str]] = None):
        self.configs = configs or load_configs()
        # per-world copy so masked variations can add synthetic materials
        self.materials: dict[str, Material] = dict(self.configs.materials)
        self.physics = self.configs.physics
        self.rng = random.Random(seed)
        self.simplifications = set(simplifications or ())
        self.objects: dict[int, SimObject] = {}
        self.parent: dict[int, int] = {}
        self._children: dict[int, list[int]] = {}
        self.rooms: dict[str, Room] = {}
        self.trait_defs: dict[str, TraitDefinition] = {}
        self.agent_id: int = -1
        self.tick_count = 0
        self.tick_start_temps: dict[int, float] = {}
        self._next_id = 1
        self._build_rooms()

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    def _build_rooms(self):
        wmap = self.configs.world_map
        for name, info in wmap["rooms"].items():
            obj = SimObject(
                id=self._take_id(), type_name=name, material=None,
                temperature=float(info["ambient"]),
                container=ContainerFacet(preposition="in"),
                category="room",
            )
            self.objects[obj.id] = obj
            self.rooms[name] = Room(name=name, obj_id=obj.id,
                                    ambient=float(info["ambient"]))
        for room_a, room_b in wmap["doors"]:
            self.rooms[room_a].neighbors.append(room_b)
            self.rooms[room_b].neighbors.append(room_a)
            door_a = self._spawn_door(room_a, room_b)
            door_b = self._spawn_door(room_b, room_a)
            door_a.linked_door_id = door_b.id
            door_b.linked_door_id = door_a.id
        for room in self.rooms.values():
            room.neighbors.sort()

    def _spawn_door(self, in_room: str, to_room: str) -> SimObject:
        door = SimObject(
            id=self._take_id(), type_name="door", material="wood",
            temperature=self.rooms[in_room].ambient,
            is_door=True, door_to=to_room, category="door",
            container=ContainerFacet(closeable=True, is_open=True),
        )
        self.objects[door.id] = door
        self._attach(door.id, self.rooms[in_room].obj_id)
        return door

    def door_between(self, room_a: str, room_b: str) -> Optional[SimObject]:
        for child in self.children(self.rooms[room_a].obj_id):
            if child.is_door and child.door_to == room_b:
                return child
        return None

    def _take_id(self) -> int:
        obj_id = self._next_id
        self._next_id += 1
        return obj_id

    def spawn(self, type_name: str, parent_id: int, name_prefix: str = "",
              document_text: Optional[str] = None) -> SimObject:
        """Instantiate a catalog object type under a parent."""
        entry = self.configs.catalog[type_name]
        parent = self.objects[parent_id]
        container = None
        if "container" in entry:
            c = entry["container"]
            closeable = bool(c.get("closeable", False))
            container = ContainerFacet(
                closeable=closeable,
                is_open=(not closeable) or ("open containers" in self.simplifications),
                preposition=c.get("preposition", "in"),
            )
        device = None
        if "device" in entry:
            d = entry["device"]
            device = DeviceFacet(
                activated=bool(d.get("start_active", False)),
                switchable=bool(d.get("switchable", True)),
                activation_condition=d.get("condition"),
                heat_setpoint=d.get("heat_setpoint"),
                heat_rate=float(d.get("heat_rate", 0.0)),
                power_source=bool(d.get("power_source", False)),
                renewable=bool(d.get("renewable", False)),
                power_consumer=bool(d.get("power_consumer", False)),
                spawns=d.get("spawns"),
                use_kind=d.get("use_kind"),
            )
        electrical = None
        if "electrical" in entry:
            electrical = ElectricalFacet(polarized=bool(entry["electrical"].get("polarized", False)))
        plane = PlaneFacet() if entry.get("plane") else None
        obj = SimObject(
            id=self._take_id(),
            type_name=type_name,
            material=entry.get("material"),
            temperature=self._effective_temperature(parent),
            portable=bool(entry.get("portable", False)),
            name_prefix=name_prefix,
            container=container,
            device=device,
            electrical=electrical,
            plane=plane,
            edible=bool(entry.get("edible", False)),
            flushable=bool(entry.get("flushable", False)),
            diggable=bool(entry.get("diggable", False)),
            document_text=document_text if document_text is not None else entry.get("text"),
            category=entry.get("category", "object"),
        )
        self.objects[obj.id] = obj
        self._attach(obj.id, parent_id)
        return obj

    def spawn_substance(self, material_name: str, parent_id: int,
                        temperature: Optional[float] = None) -> SimObject:
        """Spawn a pure substance; its type is its material and its state
        follows its temperature."""
        material = self.materials[material_name]
        parent = self.objects[parent_id]
        temp = self._effective_temperature(parent) if temperature is None else float(temperature)
        obj = SimObject(
            id=self._take_id(),
            type_name=material_name,
            material=material_name,
            temperature=temp,
            state_of_matter=material.state_at(temp),
            portable=True,
            is_substance=True,
            category="substance",
        )
        self.objects[obj.id] = obj
        self._attach(obj.id, parent_id)
        return obj

    def spawn_life(self, species: str, parent_id: int, stage: int = 0,
                   genotype: Optional[dict[str, tuple[str, str]]] = None) -> SimObject:
        spec = self.configs.species[species]
        parent = self.objects[parent_id]
        needs = {}
        if spec["kind"] == "plant":
            needs = {"water": 0, "soil": 0, "temperature": 0}
        portable = bool(spec.get("portable", False))
        if spec["kind"] == "plant":
            portable = stage == 0  # seeds are carriable; rooted plants are not
        obj = SimObject(
            id=self._take_id(),
            type_name=species,
            material="wood",
            temperature=self._effective_temperature(parent),
            portable=portable,
            life=LifeFacet(species=species, stage_index=stage, needs=needs),
            genotype=genotype,
            category=spec["kind"],
        )
        self.objects[obj.id] = obj
        self._attach(obj.id, parent_id)
        return obj

    def spawn_agent(self, room_name: str) -> SimObject:
        obj = SimObject(
            id=self._take_id(), type_name="agent", material=None,
            temperature=37.0, is_agent=True,
            container=ContainerFacet(preposition="in"),
            category="agent",
        )
        self.objects[obj.id] = obj
        self._attach(obj.id, self.rooms[room_name].obj_id)
        self.agent_id = obj.id
        return obj

    def add_material(self, material: Material):
        self.materials[material.name] = material

    def _effective_temperature(self, parent: SimObject) -> float:
        """Temperature a newly spawned object equilibrates at: the setpoint
        of an active heat device, else the enclosing room's ambient."""
        node = parent
        while node is not None:
            if node.device and node.device.activated and node.device.heat_setpoint is not None:
                return float(node.device.heat_setpoint)
            if node.category == "room":
                return node.temperature
            node = self.objects.get(self.parent.get(node.id, -1))
        return 20.0

    # ------------------------------------------------------------------
    # tree accessors and mutation
    # ------------------------------------------------------------------
    def _attach(self, obj_id: int, parent_id: int):
        self.parent[obj_id] = parent_id
        siblings = self._children.setdefault(parent_id, [])
        insort(siblings, obj_id)

    def _detach(self, obj_id: int):
        pid = self.parent.pop(obj_id, None)
        if pid is not None and obj_id in self._children.get(pid, ()):
            self._children[pid].remove(obj_id)

    def children(self, obj_id: int) -> list[SimObject]:
        return [self.objects[cid] for cid in self._children.get(obj_id, ())]

    def parent_of(self, obj_id: int) -> Optional[SimObject]:
        pid = self.parent.get(obj_id)
        return self.objects.get(pid) if pid is not None else None

    def room_of(self, obj_id: int) -> Room:
        node = self.objects[obj_id]
        while node.category != "room":
            node = self.objects[self.parent[node.id]]
        return self.rooms[node.type_name]

    def in_subtree(self, obj_id: int, root_id: int) -> bool:
        node_id = obj_id
        while node_id is not None:
            if node_id == root_id:
                return True
            node_id = self.parent.get(node_id)
        return False

    def reparent(self, obj_id: int, dest_id: int):
        """Raw tree move; callers validate preconditions. Refuses cycles."""
        if self.in_subtree(dest_id, obj_id):
            raise ValueError("reparent would create a containment cycle")
        self._detach(obj_id)
        self._attach(obj_id, dest_id)

    def remove(self, obj_id: int):
        """Delete an object and its entire subtree, dropping any electrical
        links into it."""
        doomed = [obj_id]
        i = 0
        while i < len(doomed):
            doomed.extend(c.id for c in self.children(doomed[i]))
            i += 1
        doomed_set = set(doomed)
        for obj in self.objects.values():
            if obj.electrical and obj.id not in doomed_set:
                obj.electrical.connections = [
                    c for c in obj.electrical.connections if c.other_id not in doomed_set
                ]
        for did in doomed:
            self._detach(did)
            self.objects.pop(did, None)
            self._children.pop(did, None)

    def portable_now(self, obj: SimObject) -> bool:
        """Solids of portable types can be carried; liquids and gases cannot
        be carried bare (they live in containers)."""
        if not self.objects.get(obj.id):
            return False
        if not obj.portable or obj.category == "room":
            return False
        if obj.is_substance and obj.state_of_matter != SOLID:
            return False
        return True

    def is_liquid(self, obj: SimObject) -> bool:
        return obj.is_substance and obj.state_of_matter == LIQUID

    # ------------------------------------------------------------------
    # visibility
    # ------------------------------------------------------------------
    def visible_objects(self, agent_id: Optional[int] = None) -> set[int]:
        """Everything the agent can currently see: the room's contents,
        recursing into open containers only. Closed containers hide their
        subtrees; other rooms are never visible."""
        agent_id = self.agent_id if agent_id is None else agent_id
        room = self.room_of(agent_id)
        visible: set[int] = set()
        stack = [self.rooms[room.name].obj_id]
        while stack:
            node_id = stack.pop()
            node = self.objects[node_id]
            if node.category != "room":
                visible.add(node_id)
            if node.category == "room" or node.container is None or node.is_open:
                stack.extend(c.id for c in self.children(node_id))
        return visible

    def visible_sorted(self, agent_id: Optional[int] = None) -> list[SimObject]:
        return [self.objects[i] for i in sorted(self.visible_objects(agent_id))]

    # ------------------------------------------------------------------
    # referents
    # ------------------------------------------------------------------
    def referents(self, obj_id: int) -> list[str]:
        """State-dependent names for an object, most specific first. Every
        returned string parses back to this object when no visible sibling
        shares it."""
        obj = self.objects[obj_id]
        if obj.category == "room":
            return [obj.type_name]
        if obj.is_agent:
            return ["agent"]
        if obj.is_door:
            return [f"door to {obj.door_to}", "door"]
        if obj.is_substance:
            material = self.materials[obj.material]
            state = obj.state_of_matter or SOLID
            names = [material.phase_name(state), f"{state} {obj.material}", "substance"]
            return _dedup(names)
        if obj.life is not None:
            spec = self.configs.species[obj.life.species]
            if obj.life.dead:
                names = [f"dead {obj.life.species}", obj.life.species]
            else:
                stage_name = spec["stage_names"][obj.life.stage_index]
                prefix = self._phenotype_prefix(obj)
                names = ([f"{prefix} {stage_name}"] if prefix else []) + [stage_name, obj.life.species]
            return _dedup(names)
        display = self.configs.catalog.get(obj.type_name, {}).get("display", obj.type_name)
        if obj.name_prefix:
            return _dedup([f"{obj.name_prefix} {display}", display])
        return [display]

    def _phenotype_prefix(self, obj: SimObject) -> str:
        """Visible trait value shown on the organism itself (height, seed
        shape) once its stage reaches the trait's visibility stage."""
        if not obj.genotype or obj.life is None:
            return ""
        spec = self.configs.species[obj.life.species]
        stage = spec["stages"][obj.life.stage_index]
        stages = spec["stages"]
        parts = []
        for trait_name in sorted(obj.genotype):
            tdef = self.trait_defs.get(trait_name)
            if tdef is None or tdef.part != "self":
                continue
            if stages.index(stage) >= stages.index(tdef.visible_at):
                parts.append(self.phenotype_value(obj.genotype[trait_name], tdef))
        return " ".join(parts)

    def phenotype_value(self, allele_pair: tuple[str, str], tdef: TraitDefinition) -> str:
        """Dominance rule: one dominant allele suffices for the dominant value."""
        if tdef.dominant_symbol in allele_pair:
            return tdef.dominant_value
        return tdef.recessive_value

    # ------------------------------------------------------------------
    # unique rendering (used by enumeration, menus and descriptions)
    # ------------------------------------------------------------------
    def referent_index(self, visible_ids: Iterable[int]) -> dict[str, list[int]]:
        """Maps lowercased referent -> visible object ids; the parser is
        case-insensitive, so grounding keys off the lowercased form."""
        index: dict[str, list[int]] = {}
        for oid in sorted(visible_ids):
            for ref in self.referents(oid):
                index.setdefault(ref.lower(), []).append(oid)
        return index

    def render_unique(self, obj_id: int, visible_ids: set[int],
                      index: Optional[dict[str, list[int]]] = None) -> str:
        """Shortest referent that grounds uniquely in the visible set; falls
        back to a container qualifier, then a stable #n discriminator."""
        index = index if index is not None else self.referent_index(visible_ids)
        refs = self.referents(obj_id)
        for ref in refs:
            if len(index.get(ref.lower(), [])) == 1:
                return ref
        base = refs[0]
        parent = self.parent_of(obj_id)
        if parent is not None:
            prep = "in"
            if parent.container is not None:
                prep = parent.container.preposition
            parent_ref = self.referents(parent.id)[0]
            qualifier = f"{base} ({prep} {parent_ref})"
            rivals = [
                rid for rid in index.get(base.lower(), [])
                if self.parent_of(rid) is not None
                and self.referents(self.parent_of(rid).id)[0].lower() == parent_ref.lower()
            ]
            if len(rivals) == 1:
                return qualifier
        siblings = index.get(base.lower(), [])
        return f"{base} #{siblings.index(obj_id) + 1}"

    # ------------------------------------------------------------------
    # descriptions
    # ------------------------------------------------------------------
    def _display_name(self, obj: SimObject, visible_ids: set[int],
                      index: dict[str, list[int]]) -> str:
        name = self.render_unique(obj.id, visible_ids, index)
        if obj.is_agent:
            return "the agent"
        if obj.is_substance:
            return name
        return f"{article_for(name)} {name}"

    def _suffix(self, obj: SimObject) -> str:
        parts = []
        if obj.burning:
            parts.append("on fire")
        if obj.device is not None:
            if obj.device.power_consumer:
                parts.append("on" if obj.device.powered else "off")
            elif obj.device.switchable or obj.device.heat_setpoint is not None or obj.device.spawns:
                parts.append("activated" if obj.device.activated else "deactivated")
        if obj.container is not None and obj.container.closeable:
            parts.append("open" if obj.container.is_open else "closed")
        if obj.plane is not None and obj.plane.load_id is not None:
            load = self.objects.get(obj.plane.load_id)
            if load is not None:
                pct = int(round(obj.plane.position * 100))
                parts.append(f"the {self.referents(load.id)[0]} is {pct}% of the way down")
        return f" ({', '.join(parts)})" if parts else ""

    def describe_room(self, room_name: Optional[str] = None) -> str:
        """The agent-facing room description: top-level contents, one line
        per visible open container, and the exits."""
        room = self.rooms[room_name] if room_name else self.room_of(self.agent_id)
        visible = self.visible_objects()
        index = self.referent_index(visible)
        lines = [f"You are in the {room.name}."]
        top = [o for o in self.children(room.obj_id) if not o.is_door]
        if top:
            named = ", ".join(self._display_name(o, visible, index) + self._suffix(o) for o in top)
            lines.append(f"You see: {named}")
        for holder in self.visible_sorted():
            if holder.is_agent or holder.container is None or not holder.is_open:
                continue
            if self.in_subtree(holder.id, self.agent_id):
                continue
            contents = self.children(holder.id)
            if not contents:
                continue
            named = ", ".join(self._display_name(o, visible, index) + self._suffix(o) for o in contents)
            prep = holder.container.preposition.capitalize()
            holder_name = self.render_unique(holder.id, visible, index)
            lines.append(f"{prep} the {holder_name} you see: {named}")
        doors = [o for o in self.children(room.obj_id) if o.is_door]
        doors.sort(key=lambda d: d.door_to)
        if doors:
            exits = ", ".join(
                f"a door to the {d.door_to} ({'open' if d.container and d.container.is_open else 'closed'})"
                if d.container else f"a door to the {d.door_to} (open)"
                for d in doors
            )
            lines.append(f"Exits: {exits}")
        return "\n".join(lines)

    def inventory_text(self) -> str:
        visible = self.visible_objects()
        index = self.referent_index(visible)
        items = self.children(self.agent_id)
        if not items:
            return "Your inventory is empty."
        named = ", ".join(self._display_name(o, visible, index) + self._suffix(o) for o in items)
        lines = [f"In your inventory you see: {named}"]
        stack = [o for o in items if o.container is not None and o.is_open]
        while stack:
            holder = stack.pop(0)
            contents = self.children(holder.id)
            if not contents:
                continue
            named = ", ".join(self._display_name(o, visible, index) + self._suffix(o) for o in contents)
            prep = holder.container.preposition.capitalize()
            holder_name = self.render_unique(holder.id, visible, index)
            lines.append(f"{prep} the {holder_name} you see: {named}")
            stack.extend(o for o in contents if o.container is not None and o.is_open)
        return "\n".join(lines)

    def describe_object(self, obj_id: int) -> str:
        """Detailed object description. Temperature is deliberately absent:
        it is only reported through the thermometer."""
        obj = self.objects[obj_id]
        visible = self.visible_objects()
        index = self.referent_index(visible)
        name = self.render_unique(obj_id, visible, index)
        if obj.is_substance:
            sentences = [f"{name}. It is in the {obj.state_of_matter} state."]
        elif obj.is_door:
            state = "open" if obj.container and obj.container.is_open else "closed"
            return f"a door to the {obj.door_to}. It is {state}."
        else:
            sentences = [f"{article_for(name)} {name}."]
            if obj.material:
                sentences.append(f"It is made of {obj.material}.")
        if obj.life is not None and not obj.life.dead:
            spec = self.configs.species[obj.life.species]
            sentences.append(f"It is in the {spec['stages'][obj.life.stage_index]} stage.")
        if obj.device is not None:
            if obj.device.power_consumer:
                sentences.append("It is currently on." if obj.device.powered else "It is currently off.")
            elif obj.device.switchable or obj.device.heat_setpoint is not None:
                sentences.append("It is activated." if obj.device.activated else "It is deactivated.")
        if obj.electrical is not None:
            t1, t2 = obj.electrical.terminals
            sentences.append(f"It has two terminals: {article_for(t1)} {t1} and {article_for(t2)} {t2}.")
        if obj.burning:
            sentences.append("It is on fire.")
        if obj.plane is not None:
            sentences.append(f"Its surface is made of {obj.material}.")
            if obj.plane.load_id is not None and obj.plane.load_id in self.objects:
                load_ref = self.referents(obj.plane.load_id)[0]
                pct = int(round(obj.plane.position * 100))
                sentences.append(f"The {load_ref} is {pct}% of the way down the plane.")
        if obj.container is not None:
            if obj.container.closeable and not obj.container.is_open:
                sentences.append("It is closed.")
            else:
                contents = self.children(obj_id)
                if contents:
                    named = ", ".join(self._display_name(o, visible, index) for o in contents)
                    sentences.append(f"{obj.container.preposition.capitalize()} it you see: {named}")
                else:
                    sentences.append("It is empty.")
        return " ".join(sentences)

    # ------------------------------------------------------------------
    # substance state upkeep
    # ------------------------------------------------------------------
    def sync_state_of_matter(self, obj: SimObject):
        if obj.is_substance and obj.material in self.materials:
            obj.state_of_matter = self.materials[obj.material].state_at(obj.temperature)

    # ------------------------------------------------------------------
    # serialization (determinism checks and transcripts)
    # ------------------------------------------------------------------
    def snapshot(self) -> dict:
        objs = []
        for oid in sorted(self.objects):
            o = self.objects[oid]
            objs.append({
                "id": o.id,
                "type": o.type_name,
                "prefix": o.name_prefix,
                "parent": self.parent.get(oid),
                "material": o.material,
                "temperature": round(o.temperature, 9),
                "state": o.state_of_matter,
                "open": (o.container.is_open if o.container else None),
                "activated": (o.device.activated if o.device else None),
                "powered": (o.device.powered if o.device else None),
                "connections": ([(c.own_terminal, c.other_id, c.other_terminal)
                                 for c in o.electrical.connections] if o.electrical else None),
                "stage": (o.life.stage_index if o.life else None),
                "dead": (o.life.dead if o.life else None),
                "genotype": (sorted(o.genotype.items()) if o.genotype else None),
                "plane": ([o.plane.angle, o.plane.load_id, round(o.plane.position, 9)]
                          if o.plane else None),
                "burning": o.burning,
            })
        return {"tick": self.tick_count, "objects": objs}

    def snapshot_json(self) -> str:
        return json.dumps(self.snapshot(), sort_keys=True)


def _dedup(names: list[str]) -> list[str]:
    seen = set()
    out = []
    for n in names:
        if n not in seen:
            seen.add(n)
            out.append(n)
    return out
