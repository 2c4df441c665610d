"""Per-tick device behaviors that are not heat or electricity: spawner
devices (an activated sink produces water in its basin)."""

from __future__ import annotations

MAX_SPAWNED = 2  # cap standing water so basins don't flood unboundedly


def tick_devices(world) -> None:
    for oid in sorted(world.objects):
        obj = world.objects.get(oid)
        if obj is None or obj.device is None:
            continue
        dev = obj.device
        if dev.activated and dev.spawns and obj.container is not None:
            standing = [c for c in world.children(oid) if c.type_name == dev.spawns]
            if len(standing) < MAX_SPAWNED:
                world.spawn_substance(dev.spawns, oid,
                                      temperature=float(world.physics["spawn_temperature"]))
