"""Tick-driven physical process engines.

One global tick runs after every agent action, in a fixed order: devices,
electricity, thermodynamics, life, inclined planes. Power must resolve
before heat sources act; chemistry is purely action-triggered (mix) and
has no passive tick.
"""

from __future__ import annotations

from . import devices, electricity, life, planes, thermo


def run_tick(world) -> None:
    devices.tick_devices(world)
    electricity.tick_electricity(world)
    thermo.tick_thermodynamics(world)
    life.tick_life(world)
    planes.tick_inclined_planes(world)
    _sweep_spills(world)
    world.tick_count += 1


def _sweep_spills(world) -> None:
    """Liquids and gases cannot sit bare on a room floor: a spilled liquid
    drains away and a released gas disperses."""
    from ..materials import SOLID

    for oid in sorted(world.objects):
        obj = world.objects.get(oid)
        if obj is None or not obj.is_substance or obj.state_of_matter == SOLID:
            continue
        parent = world.parent_of(oid)
        if parent is not None and parent.category == "room":
            world.remove(oid)
