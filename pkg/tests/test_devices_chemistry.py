import pytest

from sciencehouse import errors
from sciencehouse.actions import execute
from sciencehouse.engines import chemistry, devices
from sciencehouse.engines.electricity import ensure_terminals


def spawn_near_agent(world, type_name):
    return world.spawn(type_name, world.rooms["kitchen"].obj_id)


def test_activate_stove_makes_heat_source(bare_world):
    stove = spawn_near_agent(bare_world, "stove")
    out = execute(bare_world, "activate", [stove.id])
    assert stove.device.activated
    assert "activated" in out.text


def test_solar_panel_indoors_condition_unmet(bare_world):
    panel = spawn_near_agent(bare_world, "solar panel")
    with pytest.raises(errors.ConditionUnmet):
        execute(bare_world, "activate", [panel.id])


def test_activate_non_device(bare_world):
    chair = spawn_near_agent(bare_world, "chair")
    with pytest.raises(errors.NotADevice):
        execute(bare_world, "activate", [chair.id])


def test_connect_records_both_sides(bare_world):
    w = bare_world
    battery = spawn_near_agent(w, "battery")
    wire = spawn_near_agent(w, "wire")
    out = execute(w, "connect", [(battery.id, "anode"), (wire.id, "terminal 1")])
    assert "connected" in out.text
    assert battery.electrical.connection_at("anode").other_id == wire.id
    assert wire.electrical.connection_at("terminal 1").other_id == battery.id


def test_connect_occupied_terminal(bare_world):
    w = bare_world
    battery = spawn_near_agent(w, "battery")
    w1 = spawn_near_agent(w, "wire")
    w2 = spawn_near_agent(w, "wire")
    execute(w, "connect", [(battery.id, "anode"), (w1.id, "terminal 1")])
    with pytest.raises(errors.TerminalOccupied):
        execute(w, "connect", [(battery.id, "anode"), (w2.id, "terminal 1")])


def test_connect_no_such_terminal(bare_world):
    w = bare_world
    battery = spawn_near_agent(w, "battery")
    wire = spawn_near_agent(w, "wire")
    with pytest.raises(errors.NoSuchTerminal):
        execute(w, "connect", [(battery.id, "terminal 1"), (wire.id, "terminal 1")])


def test_disconnect_removes_all_links(bare_world):
    w = bare_world
    battery = spawn_near_agent(w, "battery")
    wire = spawn_near_agent(w, "wire")
    execute(w, "connect", [(battery.id, "anode"), (wire.id, "terminal 1")])
    execute(w, "connect", [(battery.id, "cathode"), (wire.id, "terminal 2")])
    execute(w, "disconnect", [wire.id])
    assert wire.electrical.connections == []
    assert battery.electrical.connections == []


def test_virtual_terminals_on_plain_objects(bare_world):
    w = bare_world
    fork = spawn_near_agent(w, "metal fork")
    battery = spawn_near_agent(w, "battery")
    execute(w, "connect", [(battery.id, "anode"), (fork.id, "terminal 1")])
    assert not ensure_terminals(fork).polarized
    assert len(fork.electrical.connections) == 1


def test_thermometer_reading_format(bare_world):
    w = bare_world
    thermometer = spawn_near_agent(w, "thermometer")
    jar = spawn_near_agent(w, "glass jar")
    water = w.spawn_substance("water", jar.id, temperature=20.4)
    out = execute(w, "use", [thermometer.id, water.id])
    assert out.text == "the thermometer measures a temperature of 20 degrees celsius"
    assert out.events == [("measure", water.id, 20)]


def test_thermometer_on_unseen_target(bare_world):
    w = bare_world
    thermometer = spawn_near_agent(w, "thermometer")
    toy = w.spawn("toy", w.rooms["bedroom"].obj_id)
    with pytest.raises(errors.NotVisible):
        execute(w, "use", [thermometer.id, toy.id])


def test_shovel_digs_soil_outside(bare_world):
    w = bare_world
    shovel = spawn_near_agent(w, "shovel")
    ground = w.spawn("ground", w.rooms["outside"].obj_id)
    w.reparent(shovel.id, w.agent_id)
    w.reparent(w.agent_id, w.rooms["outside"].obj_id)
    execute(w, "use", [shovel.id, ground.id])
    assert any(o.type_name == "soil" for o in w.objects.values())


def test_stopwatch_reports_elapsed_ticks(bare_world):
    w = bare_world
    watch = spawn_near_agent(w, "stopwatch")
    execute(w, "activate", [watch.id])
    w.tick_count += 7
    out = execute(w, "use", [watch.id, None])
    assert out.text == "The stopwatch reads 7 ticks."


def test_sink_spawns_water_when_active(bare_world):
    w = bare_world
    sink = spawn_near_agent(w, "sink")
    devices.tick_devices(w)
    assert not any(o.type_name == "water" for o in w.children(sink.id))
    sink.device.activated = True
    devices.tick_devices(w)
    waters = [o for o in w.children(sink.id) if o.type_name == "water"]
    assert len(waters) == 1
    assert waters[0].state_of_matter == "liquid"


def test_mix_salt_water(bare_world):
    w = bare_world
    jar = spawn_near_agent(w, "glass jar")
    w.spawn_substance("salt", jar.id)
    w.spawn_substance("water", jar.id)
    out = execute(w, "mix", [jar.id])
    assert "salt water" in out.text
    contents = w.children(jar.id)
    assert [o.type_name for o in contents] == ["salt water"]


def test_mix_paints_to_orange(bare_world):
    w = bare_world
    jar = spawn_near_agent(w, "glass jar")
    w.spawn_substance("red paint", jar.id)
    w.spawn_substance("yellow paint", jar.id)
    execute(w, "mix", [jar.id])
    assert [o.type_name for o in w.children(jar.id)] == ["orange paint"]


def test_mix_single_input_no_reaction(bare_world):
    w = bare_world
    jar = spawn_near_agent(w, "glass jar")
    water = w.spawn_substance("water", jar.id)
    out = execute(w, "mix", [jar.id])
    assert "nothing" in out.text
    assert w.children(jar.id) == [water]


def test_recipes_are_order_independent(bare_world):
    w = bare_world
    jar = spawn_near_agent(w, "glass jar")
    w.spawn_substance("water", jar.id)   # reversed insertion order
    w.spawn_substance("salt", jar.id)
    assert chemistry.mix(w, jar.id).type_name == "salt water"


def test_move_and_container_errors(bare_world):
    w = bare_world
    kitchen = w.rooms["kitchen"].obj_id
    couch = w.spawn("couch", kitchen)
    cupboard = w.spawn("cupboard", kitchen)
    cupboard.container.is_open = False
    apple = w.spawn("apple", kitchen)
    with pytest.raises(errors.NotPortable):
        execute(w, "move", [couch.id, cupboard.id])
    with pytest.raises(errors.ContainerClosed):
        execute(w, "move", [apple.id, cupboard.id])
    out = execute(w, "pick_up", [apple.id])
    assert "inventory" in out.text
    assert w.parent[apple.id] == w.agent_id


def test_liquids_cannot_be_carried_bare(bare_world):
    w = bare_world
    jar = spawn_near_agent(w, "glass jar")
    water = w.spawn_substance("water", jar.id)
    with pytest.raises(errors.NotPortable):
        execute(w, "pick_up", [water.id])


def test_pour_moves_liquid(bare_world):
    w = bare_world
    jar = spawn_near_agent(w, "glass jar")
    pot = spawn_near_agent(w, "metal pot")
    water = w.spawn_substance("water", jar.id)
    execute(w, "pour", [water.id, pot.id])
    assert w.parent[water.id] == pot.id


def test_spilled_liquid_drains_away(bare_world):
    from sciencehouse.engines import run_tick
    w = bare_world
    jar = spawn_near_agent(w, "glass jar")
    water = w.spawn_substance("water", jar.id)
    w.reparent(water.id, w.rooms["kitchen"].obj_id)
    run_tick(w)
    assert water.id not in w.objects
