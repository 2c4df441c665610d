"""Series circuit evaluation.

A consumer is powered iff it lies on a closed terminal-to-terminal loop
containing an active power source, where every loop member conducts and
one consistent traversal direction enters every cathode and exits every
anode (unpolarized components accept both). Because each terminal holds
at most one connection, the walk out of a source is a single path.
"""

from __future__ import annotations

from ..objects import ANODE, CATHODE, ElectricalFacet, SimObject


def is_conductive(world, obj: SimObject) -> bool:
    """Native electrical components conduct by construction; anything else
    conducts iff its material does."""
    if obj.category == "electrical":
        return True
    if obj.material is None:
        return False
    mat = world.materials.get(obj.material)
    return bool(mat and mat.electrically_conductive)


def ensure_terminals(obj: SimObject) -> ElectricalFacet:
    """Non-electrical objects get virtual unpolarized terminals on demand."""
    if obj.electrical is None:
        obj.electrical = ElectricalFacet(polarized=False)
    return obj.electrical


def source_is_live(world, obj: SimObject) -> bool:
    dev = obj.device
    if dev is None or not dev.power_source or not dev.activated or getattr(dev, "broken", False):
        return False
    if dev.activation_condition == "outside":
        return world.room_of(obj.id).name == "outside"
    return True


def trace_loop(world, source: SimObject) -> list[int] | None:
    """Follow connections from the source's anode; a valid loop re-enters
    the source at its cathode with every member conductive and every
    polarized member entered at its cathode."""
    facet = source.electrical
    if facet is None or not facet.polarized:
        return None
    path = [source.id]
    current = source
    exit_terminal = ANODE
    for _ in range(len(world.objects) + 1):
        conn = current.electrical.connection_at(exit_terminal)
        if conn is None:
            return None
        nxt = world.objects.get(conn.other_id)
        if nxt is None or nxt.electrical is None:
            return None
        if nxt.id == source.id:
            return path if conn.other_terminal == CATHODE else None
        if nxt.id in path:
            return None
        if not is_conductive(world, nxt):
            return None
        if nxt.electrical.polarized:
            if conn.other_terminal != CATHODE:
                return None
            exit_terminal = ANODE
        else:
            t1, t2 = nxt.electrical.terminals
            exit_terminal = t2 if conn.other_terminal == t1 else t1
        path.append(nxt.id)
        current = nxt
    return None


def tick_electricity(world) -> None:
    consumers = [o for o in world.objects.values()
                 if o.device is not None and o.device.power_consumer]
    for c in consumers:
        c.device.powered = False
        c.device.powered_by = []
    sources = sorted(
        (o for o in world.objects.values()
         if o.device is not None and o.device.power_source),
        key=lambda o: o.id,
    )
    for source in sources:
        if not source_is_live(world, source):
            continue
        loop = trace_loop(world, source)
        if loop is None:
            continue
        loop_sources = sorted(
            world.objects[i].type_name for i in loop
            if world.objects[i].device is not None and world.objects[i].device.power_source
        )
        for oid in loop:
            member = world.objects[oid]
            if member.device is not None and member.device.power_consumer:
                member.device.powered = True
                member.device.powered_by = loop_sources
