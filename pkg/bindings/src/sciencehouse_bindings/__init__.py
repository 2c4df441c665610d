"""Thin reset/step bindings over the sciencehouse environment.

One handle wraps one engine environment instance; closing the handle
frees it and use-after-close raises. Observations cross the boundary as
flat dicts of UTF-8 strings and numbers. Engine errors surface as
exceptions named after the engine's error name (UnknownTask,
EpisodeOver, ...). A handle must not be shared between threads; distinct
handles are fully independent.
"""

from __future__ import annotations

from typing import Optional

from sciencehouse import Environment, all_task_ids, task_info, variation_count
from sciencehouse.errors import EngineError

__all__ = ["BindingError", "BoundEnvironment", "make_env", "list_tasks",
           "live_instance_count"]

_LIVE_HANDLES = 0


class BindingError(Exception):
    """Base class; concrete subclasses mirror engine error names."""


_ERROR_TYPES: dict[str, type] = {}


def _error_type(name: str) -> type:
    if name not in _ERROR_TYPES:
        _ERROR_TYPES[name] = type(name, (BindingError,), {})
    return _ERROR_TYPES[name]


def _translate(err: Exception) -> BindingError:
    if isinstance(err, EngineError):
        return _error_type(err.name)(err.message)
    return _error_type(type(err).__name__)(str(err))


ClosedHandle = _error_type("ClosedHandle")


def live_instance_count() -> int:
    """Number of engine instances currently held by open handles."""
    return _LIVE_HANDLES


def list_tasks() -> list[dict]:
    out = []
    for task_id in all_task_ids():
        info = task_info(task_id)
        out.append({"id": task_id, "topic": info["topic"], "name": info["name"],
                    "variations": variation_count(task_id)})
    return out


def _flatten(obs) -> dict:
    record = {
        "obs": obs.obs_text,
        "look": obs.look_text,
        "inventory": obs.inventory_text,
        "task": obs.task_description,
        "score": obs.score,
        "reward": obs.reward,
        "done": obs.done,
    }
    if obs.valid_actions is not None:
        record["valid_actions"] = list(obs.valid_actions)
    return record


class BoundEnvironment:
    """Handle to one native environment instance."""

    def __init__(self, task: str, variation: int = 0, seed: int = 0,
                 simplifications="easy", include_valid_actions: bool = False):
        global _LIVE_HANDLES
        self._task = task
        self._variation = variation
        self._seed = seed
        self._simplifications = simplifications
        self._env: Optional[Environment] = Environment(
            include_valid_actions=include_valid_actions)
        self.last_observation: Optional[dict] = None
        _LIVE_HANDLES += 1

    # -- lifecycle -----------------------------------------------------
    def close(self) -> None:
        global _LIVE_HANDLES
        if self._env is not None:
            self._env = None
            _LIVE_HANDLES -= 1

    @property
    def closed(self) -> bool:
        return self._env is None

    def _native(self) -> Environment:
        if self._env is None:
            raise ClosedHandle("this environment handle has been closed")
        return self._env

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def __del__(self):
        try:
            self.close()
        except Exception:
            pass

    # -- episode control -------------------------------------------------
    def reset(self, task: Optional[str] = None, variation: Optional[int] = None,
              seed: Optional[int] = None, simplifications=None) -> dict:
        env = self._native()
        if task is not None:
            self._task = task
        if variation is not None:
            self._variation = variation
        if seed is not None:
            self._seed = seed
        if simplifications is not None:
            self._simplifications = simplifications
        try:
            obs = env.reset(self._task, self._variation, self._seed,
                            self._simplifications)
        except EngineError as err:
            raise _translate(err) from None
        self.last_observation = _flatten(obs)
        return self.last_observation

    def step(self, action_text: str) -> dict:
        env = self._native()
        try:
            obs = env.step(action_text)
        except EngineError as err:
            raise _translate(err) from None
        self.last_observation = _flatten(obs)
        return self.last_observation

    # -- free accessors (no step is consumed) ---------------------------
    def valid_actions(self) -> list[str]:
        return self._native().valid_actions()

    def look(self) -> str:
        return self._native().look()

    def inventory(self) -> str:
        return self._native().inventory()

    def task_description(self) -> str:
        return self._native().task_description()

    def score(self) -> float:
        return self._native().score()

    @property
    def done(self) -> bool:
        return self._native().done

    @property
    def outcome(self) -> str:
        return self._native().outcome

    def steps_taken(self) -> int:
        return self._native().step_count


def make_env(task: str, variation: int = 0, seed: int = 0,
             simplifications="easy",
             include_valid_actions: bool = False) -> BoundEnvironment:
    """Create a handle and reset it to the named episode."""
    env = BoundEnvironment(task, variation, seed, simplifications,
                           include_valid_actions)
    env.reset()
    return env
