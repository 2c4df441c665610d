import pytest

from sciencehouse.config import load_configs
from sciencehouse.env import Environment
from sciencehouse.world import World


@pytest.fixture(scope="session")
def configs():
    return load_configs()


@pytest.fixture
def bare_world(configs):
    """Rooms and doors only, agent in the kitchen; no fixtures."""
    world = World(configs, seed=1)
    world.spawn_agent("kitchen")
    return world


def make_env(task_id="1-2", variation=0, seed=7, simplifications="easy"):
    env = Environment()
    env.reset(task_id, variation, seed, simplifications)
    return env


@pytest.fixture
def env():
    return make_env()
