"""Inclined plane friction: a load slides down at a speed proportional to
sin(angle) and (1 - surface friction coefficient), detaching at the
bottom."""

from __future__ import annotations

import math

from ..materials import SOLID


def tick_inclined_planes(world) -> None:
    for oid in sorted(world.objects):
        plane_obj = world.objects.get(oid)
        if plane_obj is None or plane_obj.plane is None:
            continue
        plane = plane_obj.plane
        if plane.load_id is not None and world.parent.get(plane.load_id) != oid:
            plane.load_id = None
            plane.position = 0.0
        if plane.load_id is None:
            candidates = [c for c in world.children(oid)
                          if world.portable_now(c) and (not c.is_substance or c.state_of_matter == SOLID)]
            if candidates:
                plane.load_id = candidates[0].id
                plane.position = 0.0
                plane.elapsed_ticks = 0
            else:
                continue
        friction = world.materials[plane_obj.material].friction_coeff
        speed = float(world.physics["plane_speed"]) * math.sin(math.radians(plane.angle)) * (1.0 - friction)
        plane.position += speed
        plane.elapsed_ticks += 1
        if plane.position >= 1.0:
            load_id = plane.load_id
            plane.load_id = None
            plane.position = 0.0
            parent = world.parent_of(oid)
            if parent is not None and load_id in world.objects:
                world.reparent(load_id, parent.id)
