"""Conductive and convective heat transfer, phase changes, combustion.

All objects sharing a (non-room) container are in thermal contact and
exchange heat pairwise; containers are additionally in contact with each
of their children, which is how heat leaks through container walls.
Active heat sources and sinks drive their direct contents toward a
setpoint; rooms pull their direct children gently toward ambient.

A temperature update that crosses a melting or boiling threshold stops
exactly at the threshold for that tick (latent heat), so a thermometer
read on the tick a phase change appears reports the phase point exactly.
"""

from __future__ import annotations

from ..materials import Material
from ..objects import SimObject

# convective rate an ignited object radiates at
BURN_RATE = 0.30


def _coeff(world, obj: SimObject) -> float | None:
    if obj.material is None:
        return None
    mat = world.materials.get(obj.material)
    return mat.thermal_conduction_coeff if mat else None


def set_temperature(world, obj: SimObject, new_temp: float) -> None:
    """Write a temperature with the latent-heat clamp, then resync the
    state of matter.

    Within one tick an object may move at most up (or down) to the phase
    threshold nearest its tick-start temperature, no matter how many heat
    paths touch it, so phase changes happen one stage at a time and a
    thermometer read on the transition tick reports the phase point."""
    prev = obj.temperature
    t0 = world.tick_start_temps.get(obj.id, prev)
    mat: Material | None = world.materials.get(obj.material) if obj.material else None
    if mat is not None:
        if new_temp > prev:  # heating: cap at the next threshold above t0
            for threshold in (mat.melting_point, mat.boiling_point):
                if t0 < threshold:
                    new_temp = min(new_temp, threshold)
                    break
        elif new_temp < prev:  # cooling: cap at the next threshold below t0
            for threshold in (mat.boiling_point, mat.melting_point):
                if t0 > threshold:
                    new_temp = max(new_temp, threshold)
                    break
    obj.temperature = new_temp
    world.sync_state_of_matter(obj)


def conduct_pair(world, a: SimObject, b: SimObject) -> None:
    """Symmetric conduction step: both temperatures move toward each other
    by k = min(coeff)/divisor, never overshooting the mutual mean."""
    ca, cb = _coeff(world, a), _coeff(world, b)
    if ca is None or cb is None:
        return
    k = min(ca, cb) / float(world.physics["pair_rate_divisor"])
    k = min(k, 0.5)
    ta, tb = a.temperature, b.temperature
    if ta == tb:
        return
    set_temperature(world, a, ta + k * (tb - ta))
    set_temperature(world, b, tb + k * (ta - tb))


def _drive_toward(world, obj: SimObject, target: float, rate: float) -> None:
    if obj.temperature != target:
        set_temperature(world, obj, obj.temperature + rate * (target - obj.temperature))


def tick_thermodynamics(world) -> None:
    ambient_rate = float(world.physics["ambient_rate"])
    flame = float(world.physics["flame_temperature"])
    world.tick_start_temps = {oid: o.temperature for oid, o in world.objects.items()}

    # 1. active heat sources/sinks drive their direct contents
    for oid in sorted(world.objects):
        obj = world.objects.get(oid)
        if obj is None or obj.device is None:
            continue
        dev = obj.device
        if dev.activated and dev.heat_setpoint is not None and obj.container is not None:
            obj.temperature = float(dev.heat_setpoint)  # the element holds its setpoint
            if obj.is_substance:
                world.sync_state_of_matter(obj)
            for child in world.children(oid):
                if child.is_agent:
                    continue
                _drive_toward(world, child, float(dev.heat_setpoint), dev.heat_rate)

    # 2. a liquid sharing the container smothers a fire before it radiates
    for oid in sorted(world.objects):
        obj = world.objects.get(oid)
        if obj is None or not obj.burning:
            continue
        parent = world.parent_of(oid)
        siblings = world.children(parent.id) if parent is not None else []
        if any(world.is_liquid(s) for s in siblings if s.id != oid):
            obj.burning = False
            obj.burn_ticks_left = 0

    # 3. burning objects radiate at the flame temperature
    for oid in sorted(world.objects):
        obj = world.objects.get(oid)
        if obj is None or not obj.burning:
            continue
        obj.temperature = max(obj.temperature, flame)
        parent = world.parent_of(oid)
        targets = []
        if parent is not None and parent.category != "room":
            targets.append(parent)
        if parent is not None:
            targets.extend(s for s in world.children(parent.id) if s.id != oid)
        targets.extend(world.children(oid))
        for t in targets:
            if not t.is_agent:
                _drive_toward(world, t, flame, BURN_RATE)

    # 4. pairwise conduction inside every non-room container, plus
    #    container<->child contact
    for oid in sorted(world.objects):
        holder = world.objects.get(oid)
        if holder is None or holder.container is None or holder.category == "room":
            continue
        members = [c for c in world.children(oid) if not c.is_agent]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                conduct_pair(world, members[i], members[j])
        if not holder.is_agent:
            for child in members:
                conduct_pair(world, holder, child)

    # 5. rooms pull direct children toward ambient
    for room in sorted(world.rooms.values(), key=lambda r: r.obj_id):
        for child in world.children(room.obj_id):
            if child.is_agent or child.is_door:
                continue
            if child.device is not None and child.device.activated and \
                    child.device.heat_setpoint is not None:
                continue
            _drive_toward(world, child, room.ambient, ambient_rate)

    # 6. ignition and burn-down
    if "no combustion" not in world.simplifications:
        _tick_combustion(world)


def _doused(world, obj: SimObject) -> bool:
    parent = world.parent_of(obj.id)
    siblings = world.children(parent.id) if parent is not None else []
    return any(world.is_liquid(s) for s in siblings if s.id != obj.id)


def _tick_combustion(world) -> None:
    burn_duration = int(world.physics["burn_duration"])
    for oid in sorted(world.objects):
        obj = world.objects.get(oid)
        if obj is None or obj.material is None or obj.is_agent:
            continue
        mat = world.materials.get(obj.material)
        if mat is None:
            continue
        if obj.burning:
            if _doused(world, obj):
                obj.burning = False
                obj.burn_ticks_left = 0
                continue
            obj.burn_ticks_left -= 1
            if obj.burn_ticks_left <= 0:
                _burn_to_ash(world, obj)
        elif mat.combustion_point is not None and obj.temperature >= mat.combustion_point \
                and not _doused(world, obj):
            obj.burning = True
            obj.burn_ticks_left = burn_duration


def _burn_to_ash(world, obj: SimObject) -> None:
    parent = world.parent_of(obj.id)
    parent_id = parent.id if parent is not None else world.rooms[next(iter(world.rooms))].obj_id
    for child in world.children(obj.id):
        world.reparent(child.id, parent_id)
    world.remove(obj.id)
    ash = world.spawn("ash", parent_id)
    ash.temperature = float(world.physics["flame_temperature"])
