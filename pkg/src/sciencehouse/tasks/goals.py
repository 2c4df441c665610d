"""Goal predicates, score state and the per-step goal evaluator.

Required goals are ordered and latch one after another (a focus goal can
only latch on a focus event that happened after the previous required
goal latched). Optional subgoals latch in any order. Latched flags never
unlatch; each optional subgoal is worth one point and each required goal
is worth the sum of optional points, so required progress dominates the
score. Completing every required goal is success and forces the score to
exactly 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..world import World


@dataclass
class EpisodeContext:
    """Per-episode history the predicates evaluate against."""

    bindings: dict[str, object] = field(default_factory=dict)
    focus_events: list[tuple[int, int]] = field(default_factory=list)      # (step, obj)
    measure_events: list[tuple[int, int, int]] = field(default_factory=list)
    read_events: list[tuple[int, int]] = field(default_factory=list)
    examine_events: list[tuple[int, int]] = field(default_factory=list)
    initial_temps: dict[int, float] = field(default_factory=dict)
    initial_states: dict[int, Optional[str]] = field(default_factory=dict)
    step_idx: int = 0
    focus_eligible: Callable[[World, int], bool] = lambda world, oid: True

    def record_action_events(self, events: list[tuple]):
        for event in events:
            if event[0] == "focus":
                self.focus_events.append((self.step_idx, event[1]))
            elif event[0] == "measure":
                self.measure_events.append((self.step_idx, event[1], event[2]))
            elif event[0] == "read":
                self.read_events.append((self.step_idx, event[1]))
            elif event[0] == "examine":
                self.examine_events.append((self.step_idx, event[1]))


class Predicate:
    """World/history condition; subclasses override holds()."""

    def holds(self, world: World, ep: EpisodeContext, since_step: int) -> bool:
        raise NotImplementedError


def _resolve(ep: EpisodeContext, slot):
    """Slots name bindings; '@focus_target' is bound by category focus."""
    if isinstance(slot, str):
        return ep.bindings.get(slot)
    return slot


class FocusedOn(Predicate):
    """A focus event on the bound object after the previous goal latched."""

    def __init__(self, slot: str):
        self.slot = slot

    def holds(self, world, ep, since_step):
        target = _resolve(ep, self.slot)
        return any(oid == target and step > since_step
                   for step, oid in ep.focus_events)


class FocusedOnSpecies(Predicate):
    def __init__(self, species_slot: str):
        self.species_slot = species_slot

    def holds(self, world, ep, since_step):
        species = _resolve(ep, self.species_slot)
        for step, oid in ep.focus_events:
            if step <= since_step:
                continue
            obj = world.objects.get(oid)
            if obj is not None and obj.life is not None and obj.life.species == species:
                return True
        return False


class FocusedOnType(Predicate):
    def __init__(self, type_slot: str):
        self.type_slot = type_slot

    def holds(self, world, ep, since_step):
        type_name = _resolve(ep, self.type_slot)
        for step, oid in ep.focus_events:
            if step <= since_step:
                continue
            obj = world.objects.get(oid)
            if obj is not None and obj.type_name == type_name:
                return True
        return False


class FocusedOnCategory(Predicate):
    """Latches on the first eligible focus and binds it to @focus_target."""

    def __init__(self, category_fn_slot: str = "category_fn"):
        self.category_fn_slot = category_fn_slot

    def holds(self, world, ep, since_step):
        fn = ep.bindings.get(self.category_fn_slot)
        for step, oid in ep.focus_events:
            if step <= since_step:
                continue
            if oid in world.objects and fn(world, oid):
                ep.bindings["@focus_target"] = oid
                return True
        return False


class InContainer(Predicate):
    def __init__(self, slot, container_slot):
        self.slot = slot
        self.container_slot = container_slot

    def holds(self, world, ep, since_step):
        obj_id = _resolve(ep, self.slot)
        container_id = _resolve(ep, self.container_slot)
        if obj_id is None or container_id is None:
            return False
        return world.parent.get(obj_id) == container_id


class TypeInContainer(Predicate):
    def __init__(self, type_slot, container_slot):
        self.type_slot = type_slot
        self.container_slot = container_slot

    def holds(self, world, ep, since_step):
        type_name = _resolve(ep, self.type_slot)
        container_id = _resolve(ep, self.container_slot)
        if container_id is None:
            return False
        return any(c.type_name == type_name for c in world.children(container_id))


class SeedInContainer(Predicate):
    def __init__(self, species_slot, container_slot):
        self.species_slot = species_slot
        self.container_slot = container_slot

    def holds(self, world, ep, since_step):
        species = _resolve(ep, self.species_slot)
        container_id = _resolve(ep, self.container_slot)
        if container_id is None:
            return False
        for child in world.children(container_id):
            if child.life is not None and child.life.species == species \
                    and child.life.stage_index == 0:
                return True
        return False


class StateIs(Predicate):
    def __init__(self, slot, state: str):
        self.slot = slot
        self.state = state

    def holds(self, world, ep, since_step):
        obj = world.objects.get(_resolve(ep, self.slot))
        return obj is not None and obj.state_of_matter == self.state


class StateChanged(Predicate):
    def __init__(self, slot):
        self.slot = slot

    def holds(self, world, ep, since_step):
        obj_id = _resolve(ep, self.slot)
        obj = world.objects.get(obj_id)
        if obj is None:
            return False
        return obj.state_of_matter != ep.initial_states.get(obj_id)


class StageAtLeast(Predicate):
    def __init__(self, slot, stage: str):
        self.slot = slot
        self.stage = stage

    def holds(self, world, ep, since_step):
        obj = world.objects.get(_resolve(ep, self.slot))
        if obj is None or obj.life is None or obj.life.dead:
            return False
        stages = world.configs.species[obj.life.species]["stages"]
        return obj.life.stage_index >= stages.index(self.stage)


class HeatSourceActive(Predicate):
    """Some agent-switchable heat source (setpoint at or above 100C) is on."""

    def holds(self, world, ep, since_step):
        for obj in world.objects.values():
            d = obj.device
            if d is not None and d.switchable and d.activated \
                    and d.heat_setpoint is not None and d.heat_setpoint >= 100:
                return True
        return False


class Powered(Predicate):
    def __init__(self, slot):
        self.slot = slot

    def holds(self, world, ep, since_step):
        obj = world.objects.get(_resolve(ep, self.slot))
        return obj is not None and obj.device is not None and obj.device.powered


class PoweredByClass(Predicate):
    def __init__(self, slot, renewable_slot):
        self.slot = slot
        self.renewable_slot = renewable_slot

    def holds(self, world, ep, since_step):
        obj = world.objects.get(_resolve(ep, self.slot))
        want_renewable = bool(_resolve(ep, self.renewable_slot))
        if obj is None or obj.device is None or not obj.device.powered:
            return False
        catalog = world.configs.catalog
        for source_type in obj.device.powered_by:
            entry = catalog.get(source_type, {})
            if bool(entry.get("device", {}).get("renewable", False)) == want_renewable:
                return True
        return False


class Connected(Predicate):
    def __init__(self, slot):
        self.slot = slot

    def holds(self, world, ep, since_step):
        obj = world.objects.get(_resolve(ep, self.slot))
        return (obj is not None and obj.electrical is not None
                and len(obj.electrical.connections) > 0)


class SubstanceExists(Predicate):
    def __init__(self, type_slot):
        self.type_slot = type_slot

    def holds(self, world, ep, since_step):
        type_name = _resolve(ep, self.type_slot)
        return any(o.type_name == type_name for o in world.objects.values())


class GrownFruitExists(Predicate):
    """A fruit of the species that actually grew: it must carry seeds."""

    def __init__(self, species_slot):
        self.species_slot = species_slot

    def holds(self, world, ep, since_step):
        species = _resolve(ep, self.species_slot)
        fruit_type = world.configs.species[species]["fruit"]
        for obj in world.objects.values():
            if obj.type_name != fruit_type:
                continue
            for child in world.children(obj.id):
                if child.life is not None and child.life.species == species:
                    return True
        return False


class TemperatureDelta(Predicate):
    def __init__(self, slot, delta: float):
        self.slot = slot
        self.delta = delta

    def holds(self, world, ep, since_step):
        obj_id = _resolve(ep, self.slot)
        obj = world.objects.get(obj_id)
        if obj is None or obj_id not in ep.initial_temps:
            return False
        moved = obj.temperature - ep.initial_temps[obj_id]
        return moved >= self.delta if self.delta >= 0 else moved <= self.delta


class AgentInRoom(Predicate):
    def __init__(self, room_slot):
        self.room_slot = room_slot

    def holds(self, world, ep, since_step):
        return world.room_of(world.agent_id).name == _resolve(ep, self.room_slot)


class Measured(Predicate):
    def __init__(self, slot):
        self.slot = slot

    def holds(self, world, ep, since_step):
        target = _resolve(ep, self.slot)
        return any(oid == target for _, oid, _ in ep.measure_events)


class ReadDocument(Predicate):
    def __init__(self, slot):
        self.slot = slot

    def holds(self, world, ep, since_step):
        target = _resolve(ep, self.slot)
        return any(oid == target for _, oid in ep.read_events)


class Examined(Predicate):
    def __init__(self, slot):
        self.slot = slot

    def holds(self, world, ep, since_step):
        target = _resolve(ep, self.slot)
        return any(oid == target for _, oid in ep.examine_events)


class PlaneLoaded(Predicate):
    def __init__(self, slot):
        self.slot = slot

    def holds(self, world, ep, since_step):
        obj = world.objects.get(_resolve(ep, self.slot))
        return obj is not None and obj.plane is not None and obj.plane.load_id is not None


PREDICATES = {
    "focused-on": lambda spec: FocusedOn(spec["slot"]),
    "focused-on-species": lambda spec: FocusedOnSpecies(spec["species_slot"]),
    "focused-on-type": lambda spec: FocusedOnType(spec["type_slot"]),
    "focused-on-category": lambda spec: FocusedOnCategory(),
    "object-in-container": lambda spec: InContainer(spec["slot"], spec["container"]),
    "type-in-container": lambda spec: TypeInContainer(spec["type_slot"], spec["container"]),
    "seed-in-container": lambda spec: SeedInContainer(spec["species_slot"], spec["container"]),
    "state-of-matter-of": lambda spec: StateIs(spec["slot"], spec["state"]),
    "state-changed": lambda spec: StateChanged(spec["slot"]),
    "stage-of": lambda spec: StageAtLeast(spec["slot"], spec["stage"]),
    "device-active": lambda spec: HeatSourceActive(),
    "powered": lambda spec: Powered(spec["slot"]),
    "powered-by-class": lambda spec: PoweredByClass(spec["slot"], spec["renewable_slot"]),
    "connected": lambda spec: Connected(spec["slot"]),
    "substance-exists": lambda spec: SubstanceExists(spec["type_slot"]),
    "grown-fruit-exists": lambda spec: GrownFruitExists(spec["species_slot"]),
    "temperature-delta": lambda spec: TemperatureDelta(spec["slot"], spec["delta"]),
    "agent-in-room": lambda spec: AgentInRoom(spec["room_slot"]),
    "measured-with-thermometer": lambda spec: Measured(spec["slot"]),
    "read-document": lambda spec: ReadDocument(spec["slot"]),
    "examined": lambda spec: Examined(spec["slot"]),
    "plane-loaded": lambda spec: PlaneLoaded(spec["slot"]),
}


def build_predicate(spec: dict) -> Predicate:
    return PREDICATES[spec["pred"]](spec)


@dataclass
class FailureRule:
    """Answer-box exclusivity: the task object in the wrong box fails."""

    kind: str  # "in-wrong-box" | "seed-in-wrong-box"
    slot: Optional[str] = None
    species_slot: Optional[str] = None
    container_slot: str = "wrong_box"

    def triggered(self, world: World, ep: EpisodeContext) -> bool:
        container_id = _resolve(ep, self.container_slot)
        if container_id is None:
            return False
        if self.kind == "in-wrong-box":
            obj_id = _resolve(ep, self.slot)
            if obj_id == "@focus_target":
                obj_id = ep.bindings.get("@focus_target")
            return obj_id is not None and world.parent.get(obj_id) == container_id
        if self.kind == "seed-in-wrong-box":
            species = _resolve(ep, self.species_slot)
            for child in world.children(container_id):
                if child.life is not None and child.life.species == species \
                        and child.life.stage_index == 0:
                    return True
        return False


RUNNING = "running"
SUCCESS = "success"
FAILURE = "failure"


@dataclass
class ScoreState:
    required_flags: list[bool]
    optional_flags: list[bool]
    required_latch_steps: list[int]
    required_points: int
    done: str = RUNNING
    forced_complete: bool = False

    @classmethod
    def fresh(cls, n_required: int, n_optional: int) -> "ScoreState":
        return cls(
            required_flags=[False] * n_required,
            optional_flags=[False] * n_optional,
            required_latch_steps=[-1] * n_required,
            required_points=max(n_optional, 1),
        )

    @property
    def total_points(self) -> int:
        return self.required_points * len(self.required_flags) + len(self.optional_flags)

    @property
    def raw_points(self) -> int:
        return (self.required_points * sum(self.required_flags)
                + sum(self.optional_flags))

    @property
    def score(self) -> float:
        if self.forced_complete:
            return 1.0
        return self.raw_points / self.total_points


def evaluate_goals(world: World, ep: EpisodeContext, runtime, score: ScoreState) -> ScoreState:
    """Latch newly satisfied goals, then failure rules; success when every
    required goal has latched."""
    if score.done != RUNNING:
        return score
    # required goals, in order
    for i, pred in enumerate(runtime.required):
        if score.required_flags[i]:
            continue
        since = score.required_latch_steps[i - 1] if i > 0 else -1
        if pred.holds(world, ep, since):
            score.required_flags[i] = True
            score.required_latch_steps[i] = ep.step_idx
        else:
            break
    for j, pred in enumerate(runtime.optional):
        if not score.optional_flags[j] and pred.holds(world, ep, -1):
            score.optional_flags[j] = True
    if all(score.required_flags):
        score.done = SUCCESS
        score.forced_complete = True
        return score
    # wrong focus ends the episode
    for step, oid in ep.focus_events:
        if step == ep.step_idx and oid in world.objects \
                and not ep.focus_eligible(world, oid):
            score.done = FAILURE
            return score
    for rule in runtime.failure:
        if rule.triggered(world, ep):
            score.done = FAILURE
            return score
    return score
