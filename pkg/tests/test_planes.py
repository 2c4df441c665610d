import math

from sciencehouse.engines.planes import tick_inclined_planes
from sciencehouse.world import World


def plane_with_block(world, angle, material):
    workshop = world.rooms["workshop"].obj_id
    plane = world.spawn("inclined plane", workshop, name_prefix="red")
    plane.plane.angle = angle
    plane.material = material
    block = world.spawn("block", plane.id)
    plane.plane.load_id = block.id
    return plane, block


def ticks_to_bottom(angle, friction):
    """Independent closed form: ceil(1 / (c * sin(angle) * (1 - friction)))."""
    speed = 0.18 * math.sin(math.radians(angle)) * (1.0 - friction)
    if speed <= 0:
        return None
    return math.ceil(1.0 / speed)


def run_until_detached(world, plane, limit=200):
    for tick in range(1, limit + 1):
        tick_inclined_planes(world)
        if plane.plane.load_id is None:
            return tick
    return None


def test_full_friction_never_moves():
    world = World(seed=1)
    world.spawn_agent("workshop")
    from sciencehouse.materials import Material
    world.add_material(Material("grip", 0.3, 1500, 2500, friction_coeff=1.0))
    plane, block = plane_with_block(world, 45, "grip")
    for _ in range(50):
        tick_inclined_planes(world)
    assert plane.plane.position == 0.0
    assert world.parent[block.id] == plane.id


def test_steeper_angle_finishes_first():
    results = {}
    for angle in (30, 45, 60):
        world = World(seed=1)
        world.spawn_agent("workshop")
        plane, _ = plane_with_block(world, angle, "steel")
        ticks = run_until_detached(world, plane)
        assert ticks == ticks_to_bottom(angle, 0.20)
        results[angle] = ticks
    assert results[60] < results[45] < results[30]


def test_lower_friction_surface_finishes_first():
    results = {}
    for material, friction in (("steel", 0.20), ("wood", 0.45)):
        world = World(seed=1)
        world.spawn_agent("workshop")
        plane, _ = plane_with_block(world, 45, material)
        ticks = run_until_detached(world, plane)
        assert ticks == ticks_to_bottom(45, friction)
        results[material] = ticks
    assert results["steel"] < results["wood"]


def test_finish_order_monotone_in_speed_factor():
    """Finish ticks strictly decrease as sin(angle)*(1-friction) increases."""
    cases = []
    for angle in (30, 45, 60):
        for friction, material in ((0.20, "steel"), (0.30, "plastic"), (0.45, "wood")):
            world = World(seed=1)
            world.spawn_agent("workshop")
            plane, _ = plane_with_block(world, angle, material)
            ticks = run_until_detached(world, plane)
            factor = math.sin(math.radians(angle)) * (1 - friction)
            cases.append((factor, ticks))
    cases.sort()
    for (fa, ta), (fb, tb) in zip(cases, cases[1:]):
        if fb > fa:
            assert tb <= ta


def test_block_detaches_at_bottom_into_room():
    world = World(seed=1)
    world.spawn_agent("workshop")
    plane, block = plane_with_block(world, 60, "steel")
    run_until_detached(world, plane)
    assert world.parent[block.id] == world.rooms["workshop"].obj_id
    assert plane.plane.position == 0.0


def test_position_phrase_in_descriptions():
    world = World(seed=1)
    world.spawn_agent("workshop")
    plane, block = plane_with_block(world, 45, "steel")
    for _ in range(5):
        tick_inclined_planes(world)
    pct = int(round(plane.plane.position * 100))
    detail = world.describe_object(plane.id)
    assert f"{pct}% of the way down the plane" in detail
    look = world.describe_room()
    assert f"the block is {pct}% of the way down" in look


def test_removing_the_block_resets_the_plane():
    world = World(seed=1)
    world.spawn_agent("workshop")
    plane, block = plane_with_block(world, 45, "steel")
    for _ in range(3):
        tick_inclined_planes(world)
    world.reparent(block.id, world.agent_id)
    tick_inclined_planes(world)
    assert plane.plane.load_id is None
    assert plane.plane.position == 0.0
