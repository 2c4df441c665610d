"""Executors for the 25 actions.

Each executor validates its hard preconditions (raising ActionError
subclasses), mutates the world, and returns an ActionOutcome with the
response text plus any events the episode layer needs (focus targets,
thermometer readings, wait durations). Soft world outcomes ("nothing
mixes") are ordinary responses, not errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import errors
from .engines import chemistry
from .materials import SOLID
from .objects import SimObject
from .world import World


@dataclass
class ActionOutcome:
    text: str = ""
    # "look" / "inventory" / "task" responses are assembled after the tick
    defer: Optional[str] = None
    events: list[tuple] = field(default_factory=list)
    extra_ticks: int = 0


def _require_visible(world: World, obj_id: int):
    if obj_id not in world.visible_objects():
        raise errors.NotVisible("You don't see that here.")


def _name(world: World, obj_id: int) -> str:
    visible = world.visible_objects()
    return world.render_unique(obj_id, visible | {obj_id})


def execute(world: World, action_id: str, args: list) -> ActionOutcome:
    handler = _HANDLERS[action_id]
    return handler(world, args)


# ---------------------------------------------------------------------------
# container and navigation actions
# ---------------------------------------------------------------------------

def _do_open(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if obj.container is None or not obj.container.closeable:
        raise errors.NotAContainer(f"The {_name(world, obj.id)} cannot be opened.")
    if obj.container.is_open:
        raise errors.ActionError(f"The {_name(world, obj.id)} is already open.")
    obj.container.is_open = True
    if obj.linked_door_id is not None:
        world.objects[obj.linked_door_id].container.is_open = True
    return ActionOutcome(f"The {_name(world, obj.id)} is now open.")


def _do_close(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if obj.container is None or not obj.container.closeable:
        raise errors.NotAContainer(f"The {_name(world, obj.id)} cannot be closed.")
    if not obj.container.is_open:
        raise errors.ActionError(f"The {_name(world, obj.id)} is already closed.")
    obj.container.is_open = False
    if obj.linked_door_id is not None:
        world.objects[obj.linked_door_id].container.is_open = False
    return ActionOutcome(f"The {_name(world, obj.id)} is now closed.")


def _do_go(world: World, args) -> ActionOutcome:
    dest = args[0]
    here = world.room_of(world.agent_id)
    if dest == here.name:
        raise errors.ActionError("You are already there.")
    if dest not in here.neighbors:
        raise errors.ActionError(f"You can't get to the {dest} from here.")
    door = world.door_between(here.name, dest)
    if door is not None and not door.container.is_open:
        raise errors.ActionError(f"The door to the {dest} is closed.")
    world.reparent(world.agent_id, world.rooms[dest].obj_id)
    return ActionOutcome(defer="look")


def _do_teleport(world: World, args) -> ActionOutcome:
    dest = args[0]
    if "teleport" not in world.simplifications:
        raise errors.ActionError("Teleporting is not possible here.")
    if dest == world.room_of(world.agent_id).name:
        raise errors.ActionError("You are already there.")
    world.reparent(world.agent_id, world.rooms[dest].obj_id)
    return ActionOutcome(defer="look")


# ---------------------------------------------------------------------------
# device actions
# ---------------------------------------------------------------------------

def _do_activate(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if obj.device is None:
        raise errors.NotADevice(f"The {_name(world, obj.id)} is not a device.")
    if not obj.device.switchable:
        raise errors.NotADevice(f"The {_name(world, obj.id)} has no switch.")
    if obj.device.broken:
        raise errors.ConditionUnmet(f"The {_name(world, obj.id)} is broken.")
    if obj.device.activated:
        raise errors.ActionError(f"The {_name(world, obj.id)} is already activated.")
    if obj.device.activation_condition == "outside" and \
            world.room_of(obj.id).name != "outside":
        raise errors.ConditionUnmet(
            f"The {_name(world, obj.id)} only works outside.")
    obj.device.activated = True
    if obj.device.use_kind == "stopwatch":
        obj.device.activation_tick = world.tick_count
    return ActionOutcome(f"The {_name(world, obj.id)} is now activated.")


def _do_deactivate(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if obj.device is None or not obj.device.switchable:
        raise errors.NotADevice(f"The {_name(world, obj.id)} has no switch.")
    if not obj.device.activated:
        raise errors.ActionError(f"The {_name(world, obj.id)} is already deactivated.")
    obj.device.activated = False
    return ActionOutcome(f"The {_name(world, obj.id)} is now deactivated.")


# ---------------------------------------------------------------------------
# electrical actions
# ---------------------------------------------------------------------------

def _do_connect(world: World, args) -> ActionOutcome:
    from .engines.electricity import ensure_terminals

    (id_a, term_a), (id_b, term_b) = args
    obj_a, obj_b = world.objects[id_a], world.objects[id_b]
    _require_visible(world, id_a)
    _require_visible(world, id_b)
    if id_a == id_b:
        raise errors.ActionError("You can't connect something to itself.")
    facet_a, facet_b = ensure_terminals(obj_a), ensure_terminals(obj_b)
    for obj, facet, term in ((obj_a, facet_a, term_a), (obj_b, facet_b, term_b)):
        if term not in facet.terminals:
            raise errors.NoSuchTerminal(
                f"The {_name(world, obj.id)} has no {term}.")
    if facet_a.connection_at(term_a) is not None:
        raise errors.TerminalOccupied(
            f"The {_name(world, id_a)} {term_a} is already connected.")
    if facet_b.connection_at(term_b) is not None:
        raise errors.TerminalOccupied(
            f"The {_name(world, id_b)} {term_b} is already connected.")
    from .objects import Connection
    facet_a.connections.append(Connection(term_a, id_b, term_b))
    facet_b.connections.append(Connection(term_b, id_a, term_a))
    return ActionOutcome(
        f"The {_name(world, id_a)} {term_a} is now connected to the "
        f"{_name(world, id_b)} {term_b}.")


def _do_disconnect(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if obj.electrical is None or not obj.electrical.connections:
        raise errors.ActionError(f"The {_name(world, obj.id)} is not connected to anything.")
    for conn in list(obj.electrical.connections):
        other = world.objects.get(conn.other_id)
        if other is not None and other.electrical is not None:
            other.electrical.connections = [
                c for c in other.electrical.connections if c.other_id != obj.id]
    obj.electrical.connections = []
    return ActionOutcome(f"The {_name(world, obj.id)} is now disconnected.")


# ---------------------------------------------------------------------------
# use
# ---------------------------------------------------------------------------

def _do_use(world: World, args) -> ActionOutcome:
    device = world.objects[args[0]]
    target = world.objects[args[1]] if len(args) > 1 and args[1] is not None else None
    _require_visible(world, device.id)
    kind = device.device.use_kind if device.device else None
    if kind == "thermometer":
        if target is None:
            raise errors.NoUseDefined("Use the thermometer on what?")
        _require_visible(world, target.id)
        reading = int(round(target.temperature))
        return ActionOutcome(
            f"the thermometer measures a temperature of {reading} degrees celsius",
            events=[("measure", target.id, reading)])
    if kind == "shovel":
        if target is None or not target.diggable:
            raise errors.NoUseDefined("The shovel only digs into the ground.")
        _require_visible(world, target.id)
        room = world.room_of(world.agent_id)
        world.spawn_substance("soil", room.obj_id,
                              temperature=world.rooms[room.name].ambient)
        return ActionOutcome("You dig up some soil.")
    if kind == "stopwatch":
        if not device.device.activated or device.device.activation_tick is None:
            return ActionOutcome("The stopwatch is not running.")
        elapsed = world.tick_count - device.device.activation_tick
        return ActionOutcome(f"The stopwatch reads {elapsed} ticks.")
    raise errors.NoUseDefined(f"You're not sure how to use the {_name(world, device.id)}.")


# ---------------------------------------------------------------------------
# observation actions (responses assembled after the tick)
# ---------------------------------------------------------------------------

def _do_look_around(world: World, args) -> ActionOutcome:
    return ActionOutcome(defer="look")


def _do_look_at(world: World, args) -> ActionOutcome:
    _require_visible(world, args[0])
    return ActionOutcome(defer="look_at", events=[("examine", args[0])])


def _do_look_in(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if obj.container is None:
        raise errors.NotAContainer(f"The {_name(world, obj.id)} is not a container.")
    if not obj.container.is_open:
        raise errors.ContainerClosed(f"The {_name(world, obj.id)} is closed.")
    return ActionOutcome(defer="look_in")


def _do_read(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if obj.document_text is None:
        raise errors.ActionError(f"The {_name(world, obj.id)} has nothing to read.")
    return ActionOutcome(f'The {_name(world, obj.id)} reads: "{obj.document_text}"',
                         events=[("read", obj.id)])


def _do_task(world: World, args) -> ActionOutcome:
    return ActionOutcome(defer="task")


def _do_inventory(world: World, args) -> ActionOutcome:
    return ActionOutcome(defer="inventory")


def _do_wait(world: World, args) -> ActionOutcome:
    duration = args[0] if args and args[0] is not None else 1
    return ActionOutcome(f"You wait. ({duration} ticks pass.)" if duration > 1 else "You wait.",
                         extra_ticks=duration - 1)


# ---------------------------------------------------------------------------
# moving things
# ---------------------------------------------------------------------------

def _check_move_target(world: World, obj: SimObject, dest: SimObject):
    if dest.id == obj.id:
        raise errors.ActionError("You can't move something into itself.")
    if dest.container is None:
        raise errors.NotAContainer(f"The {_name(world, dest.id)} can't hold things.")
    if not dest.container.is_open:
        raise errors.ContainerClosed(f"The {_name(world, dest.id)} is closed.")
    if world.in_subtree(dest.id, obj.id):
        raise errors.ActionError("You can't move something into its own contents.")


def _move_portable(world: World, obj: SimObject, dest: SimObject) -> None:
    if not world.portable_now(obj):
        if obj.is_substance and obj.state_of_matter != SOLID:
            raise errors.NotPortable(
                f"You can't carry {world.referents(obj.id)[0]} bare; use a container.")
        raise errors.NotPortable(f"The {_name(world, obj.id)} is not portable.")
    _check_move_target(world, obj, dest)
    world.reparent(obj.id, dest.id)
    if dest.plane is not None and dest.plane.load_id is None:
        dest.plane.load_id = obj.id
        dest.plane.position = 0.0
        dest.plane.elapsed_ticks = 0


def _do_move(world: World, args) -> ActionOutcome:
    obj, dest = world.objects[args[0]], world.objects[args[1]]
    _require_visible(world, obj.id)
    _require_visible(world, dest.id)
    obj_name, dest_name = _name(world, obj.id), _name(world, dest.id)
    _move_portable(world, obj, dest)
    return ActionOutcome(f"You move the {obj_name} to the {dest_name}.")


def _do_pick_up(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if world.in_subtree(obj.id, world.agent_id):
        raise errors.ActionError(f"You already have the {_name(world, obj.id)}.")
    name = _name(world, obj.id)
    if not world.portable_now(obj):
        raise errors.NotPortable(f"The {name} is not portable.")
    world.reparent(obj.id, world.agent_id)
    return ActionOutcome(f"You move the {name} to the inventory.")


def _do_put_down(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    if not world.in_subtree(obj.id, world.agent_id):
        raise errors.ActionError(f"You don't have the {_name(world, obj.id)}.")
    name = _name(world, obj.id)
    room = world.room_of(world.agent_id)
    world.reparent(obj.id, room.obj_id)
    return ActionOutcome(f"You move the {name} to the {room.name}.")


def _do_pour(world: World, args) -> ActionOutcome:
    src, dest = world.objects[args[0]], world.objects[args[1]]
    _require_visible(world, src.id)
    _require_visible(world, dest.id)
    src_name, dest_name = _name(world, src.id), _name(world, dest.id)
    _check_move_target(world, src, dest)
    if world.is_liquid(src):
        world.reparent(src.id, dest.id)
        return ActionOutcome(f"You pour the {src_name} into the {dest_name}.")
    if src.container is not None:
        liquids = [c for c in world.children(src.id) if world.is_liquid(c)]
        if not liquids:
            raise errors.ActionError(f"There is no liquid in the {src_name}.")
        for liq in liquids:
            world.reparent(liq.id, dest.id)
        return ActionOutcome(f"You pour the contents of the {src_name} into the {dest_name}.")
    raise errors.ActionError(f"You can't pour the {src_name}.")


def _do_dunk(world: World, args) -> ActionOutcome:
    obj, liquid = world.objects[args[0]], world.objects[args[1]]
    _require_visible(world, obj.id)
    _require_visible(world, liquid.id)
    if not world.is_liquid(liquid):
        raise errors.ActionError(f"The {_name(world, liquid.id)} is not a liquid.")
    obj_name, liq_name = _name(world, obj.id), _name(world, liquid.id)
    if obj.container is not None and obj.portable:
        # dunking a container scoops the liquid up
        world.reparent(liquid.id, obj.id)
        return ActionOutcome(f"You dunk the {obj_name} into the {liq_name}, filling it.")
    if not world.portable_now(obj):
        raise errors.NotPortable(f"The {obj_name} is not portable.")
    # dunking anything else drops it in beside the liquid
    world.reparent(obj.id, world.parent[liquid.id])
    if obj.burning:
        obj.burning = False
        obj.burn_ticks_left = 0
        return ActionOutcome(f"You dunk the {obj_name} into the {liq_name}. The fire goes out.")
    return ActionOutcome(f"You dunk the {obj_name} into the {liq_name}.")


# ---------------------------------------------------------------------------
# the rest
# ---------------------------------------------------------------------------

def _do_mix(world: World, args) -> ActionOutcome:
    container = world.objects[args[0]]
    _require_visible(world, container.id)
    if container.container is None:
        raise errors.NotAContainer(f"The {_name(world, container.id)} is not a container.")
    if not container.container.is_open:
        raise errors.ContainerClosed(f"The {_name(world, container.id)} is closed.")
    inputs = [world.referents(c.id)[0] for c in world.children(container.id)]
    name = _name(world, container.id)
    product = chemistry.mix(world, container.id)
    if product is None:
        return ActionOutcome(f"Mixing the contents of the {name} produces nothing.")
    made = world.referents(product.id)[0]
    joined = " and ".join(f"the {i}" for i in inputs)
    return ActionOutcome(f"{joined.capitalize()} mix to produce {made}.")


def _do_eat(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if not obj.edible:
        raise errors.ActionError(f"The {_name(world, obj.id)} is not edible.")
    name = _name(world, obj.id)
    world.remove(obj.id)
    return ActionOutcome(f"You eat the {name}. It is delicious.")


def _do_flush(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    if not obj.flushable:
        raise errors.ActionError(f"The {_name(world, obj.id)} can't be flushed.")
    for child in world.children(obj.id):
        world.remove(child.id)
    return ActionOutcome(f"You flush the {_name(world, obj.id)}.")


def _do_focus(world: World, args) -> ActionOutcome:
    obj = world.objects[args[0]]
    _require_visible(world, obj.id)
    name = _name(world, obj.id)
    return ActionOutcome(f"You focus on the {name}.", events=[("focus", obj.id)])


_HANDLERS = {
    "open": _do_open,
    "close": _do_close,
    "activate": _do_activate,
    "deactivate": _do_deactivate,
    "connect": _do_connect,
    "disconnect": _do_disconnect,
    "use": _do_use,
    "look_around": _do_look_around,
    "look_at": _do_look_at,
    "look_in": _do_look_in,
    "read": _do_read,
    "move": _do_move,
    "pick_up": _do_pick_up,
    "put_down": _do_put_down,
    "pour": _do_pour,
    "dunk": _do_dunk,
    "mix": _do_mix,
    "go": _do_go,
    "teleport": _do_teleport,
    "eat": _do_eat,
    "flush": _do_flush,
    "focus": _do_focus,
    "wait": _do_wait,
    "task": _do_task,
    "inventory": _do_inventory,
}
