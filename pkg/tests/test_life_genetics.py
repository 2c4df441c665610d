import random
from collections import Counter

import pytest
from scipy.stats import chisquare

from sciencehouse.engines import run_tick
from sciencehouse.engines.genetics import punnett_cross, phenotype
from sciencehouse.errors import TraitMismatch
from sciencehouse.world import TraitDefinition

FLOWER = TraitDefinition(
    name="flower color", dominant_symbol="F", recessive_symbol="f",
    dominant_value="purple", recessive_value="white",
    visible_at="reproducing", part="flower")


def test_homozygous_cross_is_constant():
    rng = random.Random(0)
    for _ in range(50):
        child = punnett_cross({"flower color": ("F", "F")},
                              {"flower color": ("F", "F")}, rng)
        assert child == {"flower color": ("F", "F")}


def test_heterozygous_cross_frequencies():
    rng = random.Random(1)
    counts = Counter()
    for _ in range(10_000):
        child = punnett_cross({"flower color": ("F", "f")},
                              {"flower color": ("F", "f")}, rng)
        counts["".join(sorted(child["flower color"]))] += 1
    assert abs(counts["FF"] / 10_000 - 0.25) < 0.02
    assert abs(counts["Ff"] / 10_000 - 0.50) < 0.02
    assert abs(counts["ff"] / 10_000 - 0.25) < 0.02


def test_backcross_frequencies():
    rng = random.Random(2)
    counts = Counter()
    for _ in range(10_000):
        child = punnett_cross({"flower color": ("F", "f")},
                              {"flower color": ("f", "f")}, rng)
        counts["".join(sorted(child["flower color"]))] += 1
    assert abs(counts["Ff"] / 10_000 - 0.5) < 0.02
    assert abs(counts["ff"] / 10_000 - 0.5) < 0.02


def test_heterozygous_cross_chi_square():
    rng = random.Random(3)
    counts = Counter()
    n = 10_000
    for _ in range(n):
        child = punnett_cross({"flower color": ("F", "f")},
                              {"flower color": ("F", "f")}, rng)
        counts["".join(sorted(child["flower color"]))] += 1
    observed = [counts["FF"], counts["Ff"], counts["ff"]]
    expected = [n / 4, n / 2, n / 4]
    _, p = chisquare(observed, expected)
    assert p > 0.01


def test_phenotype_dominance():
    assert phenotype({"flower color": ("F", "F")}, FLOWER) == "purple"
    assert phenotype({"flower color": ("F", "f")}, FLOWER) == "purple"
    assert phenotype({"flower color": ("f", "F")}, FLOWER) == "purple"
    assert phenotype({"flower color": ("f", "f")}, FLOWER) == "white"


def test_trait_mismatch():
    with pytest.raises(TraitMismatch):
        punnett_cross({"flower color": ("F", "f")},
                      {"seed shape": ("S", "s")}, random.Random(0))
    with pytest.raises(TraitMismatch):
        phenotype({"seed shape": ("S", "s")}, FLOWER)


def test_phenotype_is_pure_function():
    rng = random.Random(4)
    for _ in range(200):
        pair = (rng.choice("Ff"), rng.choice("Ff"))
        first = phenotype({"flower color": pair}, FLOWER)
        assert all(phenotype({"flower color": pair}, FLOWER) == first
                   for _ in range(3))


# ---------------------------------------------------------------------------
# life stages
# ---------------------------------------------------------------------------

def planted_seed(world, species="pea plant"):
    pot = world.spawn("flower pot", world.rooms["greenhouse"].obj_id)
    world.spawn_substance("soil", pot.id)
    seed = world.spawn_life(species, pot.id, stage=0)
    return pot, seed


def test_watered_seed_becomes_seedling(bare_world):
    w = bare_world
    pot, seed = planted_seed(w)
    duration = w.configs.species["pea plant"]["stage_duration"]
    for _ in range(duration + 1):
        w.spawn_substance("water", pot.id)
        run_tick(w)
    assert seed.life.stage_index == 1
    assert "seedling" in w.referents(seed.id)[0]


def test_unwatered_plant_dies(bare_world):
    w = bare_world
    pot, seed = planted_seed(w)
    deadline = w.configs.species["pea plant"]["water_deadline"]
    for _ in range(deadline + 2):
        run_tick(w)
    assert seed.life.dead
    assert w.referents(seed.id)[0] == "dead pea plant"


def test_dead_is_absorbing(bare_world):
    w = bare_world
    pot, seed = planted_seed(w)
    seed.life.dead = True
    for _ in range(30):
        w.spawn_substance("water", pot.id)
        run_tick(w)
    assert seed.life.dead and seed.life.stage_index == 0


def test_unplanted_seed_is_dormant(bare_world):
    w = bare_world
    table = w.spawn("table", w.rooms["greenhouse"].obj_id)
    seed = w.spawn_life("pea plant", table.id, stage=0)
    for _ in range(40):
        run_tick(w)
    assert not seed.life.dead and seed.life.stage_index == 0


def test_self_watering_simplification(bare_world):
    w = bare_world
    w.simplifications.add("self watering")
    pot, seed = planted_seed(w)
    duration = w.configs.species["pea plant"]["stage_duration"]
    for _ in range(3 * duration + 3):
        run_tick(w)
    assert not seed.life.dead
    assert seed.life.stage_index == 3  # reproducing, without any watering


def test_pollination_produces_fruit_with_descendants(bare_world):
    w = bare_world
    w.simplifications.add("self watering")
    greenhouse = w.rooms["greenhouse"].obj_id
    w.spawn_life("bee", greenhouse, stage=2)
    pots = []
    for genotype in ({"flower color": ("F", "F")}, {"flower color": ("f", "f")}):
        pot = w.spawn("flower pot", greenhouse)
        w.spawn_substance("soil", pot.id)
        seed = w.spawn_life("pea plant", pot.id, stage=0, genotype=genotype)
        pots.append(seed)
    w.trait_defs["flower color"] = FLOWER
    for _ in range(40):
        run_tick(w)
        fruits = [o for o in w.objects.values() if o.type_name == "pea pod"]
        if fruits:
            break
    assert fruits, "no fruit grew"
    seeds = [c for c in w.children(fruits[0].id) if c.life is not None]
    assert len(seeds) == w.configs.species["pea plant"]["seeds_per_fruit"]
    # homozygous-dominant x homozygous-recessive: every child heterozygous
    for child in seeds:
        assert sorted(child.genotype["flower color"]) == ["F", "f"]


def test_flowers_carry_phenotype_color(bare_world):
    w = bare_world
    w.simplifications.add("self watering")
    w.trait_defs["flower color"] = FLOWER
    pot = w.spawn("flower pot", w.rooms["greenhouse"].obj_id)
    w.spawn_substance("soil", pot.id)
    plant = w.spawn_life("pea plant", pot.id, stage=0,
                         genotype={"flower color": ("f", "f")})
    for _ in range(3 * w.configs.species["pea plant"]["stage_duration"] + 3):
        run_tick(w)
    flowers = [c for c in w.children(plant.id) if c.type_name == "flower"]
    assert flowers and all(f.name_prefix == "white" for f in flowers)
    assert w.referents(flowers[0].id)[0] == "white flower"
