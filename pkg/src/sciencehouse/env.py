"""Agent-facing episode interface: reset / step / free accessors.

One Environment instance hosts one episode at a time and is mutated by
one caller (single writer). A step parses the command, executes it,
runs the engine tick, evaluates goals and assembles the observation.
Commands the parser rejects (Unknown) or that fail hard preconditions
produce an explanatory observation without consuming a simulation tick
or a step; 100 consecutive such commands end the episode. Ambiguous
commands produce a numbered menu resolved by replying with the number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import actions, grammar
from .engines import run_tick
from .errors import ActionError, EpisodeOver
from .tasks import EpisodeContext, ScoreState, evaluate_goals, generate_variation
from .tasks.goals import FAILURE, RUNNING

MAX_STEPS = 100
MAX_CONSECUTIVE_INVALID = 100


@dataclass
class Observation:
    obs_text: str
    look_text: str
    inventory_text: str
    task_description: str
    score: float
    reward: float
    done: bool
    valid_actions: Optional[list[str]] = None

    def as_dict(self) -> dict:
        return {
            "obs": self.obs_text,
            "look": self.look_text,
            "inventory": self.inventory_text,
            "task": self.task_description,
            "score": round(self.score, 6),
            "reward": round(self.reward, 6),
            "done": self.done,
        }


@dataclass
class Transcript:
    task_id: str
    variation: int
    seed: int
    simplifications: list[str]
    initial: dict = field(default_factory=dict)
    steps: list[dict] = field(default_factory=list)
    final_score: float = 0.0
    outcome: str = RUNNING

    def as_dict(self) -> dict:
        return {
            "task": self.task_id,
            "variation": self.variation,
            "seed": self.seed,
            "simplifications": self.simplifications,
            "initial": self.initial,
            "steps": self.steps,
            "final_score": round(self.final_score, 6),
            "outcome": self.outcome,
        }


class Environment:
    """POMDP-style episode host over the simulation engine."""

    def __init__(self, include_valid_actions: bool = False):
        self.include_valid_actions = include_valid_actions
        self.world = None
        self.runtime = None
        self.episode: Optional[EpisodeContext] = None
        self.score_state: Optional[ScoreState] = None
        self.step_count = 0
        self.invalid_streak = 0
        self.pending_ambiguity: Optional[grammar.Ambiguous] = None
        self.transcript: Optional[Transcript] = None
        self._timeout = False

    # ------------------------------------------------------------------
    def reset(self, task_id: str, variation_index: int = 0, seed: int = 0,
              simplifications=None) -> Observation:
        self.world, self.runtime = generate_variation(
            task_id, variation_index, seed, simplifications)
        self.episode = EpisodeContext(bindings=self.runtime.bindings,
                                      focus_eligible=self.runtime.focus_eligible)
        for value in self.runtime.bindings.values():
            if isinstance(value, int) and value in self.world.objects:
                obj = self.world.objects[value]
                self.episode.initial_temps[value] = obj.temperature
                self.episode.initial_states[value] = obj.state_of_matter
        self.score_state = ScoreState.fresh(len(self.runtime.required),
                                            len(self.runtime.optional))
        self.step_count = 0
        self.invalid_streak = 0
        self.pending_ambiguity = None
        self._timeout = False
        obs = self._observation(obs_text=self.runtime.description, reward=0.0)
        self.transcript = Transcript(
            task_id=task_id, variation=variation_index, seed=seed,
            simplifications=list(self.runtime.simplifications),
            initial={"obs": obs.obs_text, "look": obs.look_text,
                     "inventory": obs.inventory_text, "task": obs.task_description},
        )
        return obs

    # ------------------------------------------------------------------
    @property
    def done(self) -> bool:
        return self.score_state is not None and (
            self.score_state.done != RUNNING or self._timeout)

    @property
    def outcome(self) -> str:
        if self.score_state is None:
            return RUNNING
        if self.score_state.done != RUNNING:
            return self.score_state.done
        return FAILURE if self._timeout else RUNNING

    def score(self) -> float:
        return self.score_state.score if self.score_state is not None else 0.0

    def look(self) -> str:
        return self.world.describe_room()

    def inventory(self) -> str:
        return self.world.inventory_text()

    def task_description(self) -> str:
        return self.runtime.description

    def valid_actions(self) -> list[str]:
        return grammar.enumerate_valid_actions(self.world)

    # ------------------------------------------------------------------
    def step(self, action_text: str) -> Observation:
        if self.world is None:
            raise EpisodeOver("reset() must be called first")
        if self.done:
            raise EpisodeOver("the episode has ended; call reset()")
        text = grammar.normalize(action_text)
        parsed = self._resolve_input(text)
        if isinstance(parsed, grammar.Unknown):
            obs = self._invalid_step(action_text, f"I don't understand '{text}'.")
            return obs
        if isinstance(parsed, grammar.Ambiguous):
            self.pending_ambiguity = parsed
            obs = self._invalid_step(action_text, parsed.menu_text(), soft=True)
            return obs
        try:
            outcome = actions.execute(self.world, parsed.action_id, list(parsed.args))
        except ActionError as err:
            obs = self._invalid_step(action_text, err.message)
            return obs
        self.invalid_streak = 0
        self.step_count += 1
        self.episode.step_idx = self.step_count
        self.episode.record_action_events(outcome.events)
        for _ in range(1 + outcome.extra_ticks):
            run_tick(self.world)
        prev_score = self.score_state.score
        self.score_state = evaluate_goals(self.world, self.episode,
                                          self.runtime, self.score_state)
        if self.score_state.done == RUNNING and self.step_count >= MAX_STEPS:
            self._timeout = True
        reward = self.score_state.score - prev_score
        obs_text = outcome.text
        if outcome.defer == "look":
            obs_text = self.look()
        elif outcome.defer == "inventory":
            obs_text = self.inventory()
        elif outcome.defer == "task":
            obs_text = self.runtime.description
        elif outcome.defer == "look_at":
            obs_text = self.world.describe_object(parsed.args[0])
        elif outcome.defer == "look_in":
            obs_text = self._look_in_text(parsed.args[0])
        obs = self._observation(obs_text=obs_text, reward=reward)
        self._record_step(action_text, obs)
        return obs

    # ------------------------------------------------------------------
    def _resolve_input(self, text: str):
        if self.pending_ambiguity is not None:
            pending = self.pending_ambiguity
            self.pending_ambiguity = None
            if text.isdigit():
                try:
                    return grammar.clarify(pending, int(text))
                except Exception:
                    return grammar.Unknown(text)
        return grammar.parse(self.world, text)

    def _look_in_text(self, container_id: int) -> str:
        world = self.world
        obj = world.objects.get(container_id)
        if obj is None:
            return "It is gone."
        visible = world.visible_objects()
        index = world.referent_index(visible)
        contents = world.children(container_id)
        name = world.render_unique(container_id, visible, index)
        if not contents:
            return f"The {name} is empty."
        named = ", ".join(world._display_name(o, visible, index) + world._suffix(o)
                          for o in contents)
        prep = obj.container.preposition.capitalize()
        return f"{prep} the {name} you see: {named}"

    def _invalid_step(self, action_text: str, message: str, soft: bool = False) -> Observation:
        """Invalid commands and clarification menus consume an agent turn
        but no simulation tick and no step toward the limit."""
        if not soft:
            self.invalid_streak += 1
            if self.invalid_streak >= MAX_CONSECUTIVE_INVALID:
                self._timeout = True
        obs = self._observation(obs_text=message, reward=0.0)
        self._record_step(action_text, obs)
        return obs

    def _observation(self, obs_text: str, reward: float) -> Observation:
        return Observation(
            obs_text=obs_text,
            look_text=self.look(),
            inventory_text=self.inventory(),
            task_description=self.runtime.description,
            score=self.score_state.score,
            reward=reward,
            done=self.done,
            valid_actions=self.valid_actions() if self.include_valid_actions else None,
        )

    def _record_step(self, action_text: str, obs: Observation):
        if self.transcript is None:
            return
        self.transcript.steps.append({"action": action_text, **obs.as_dict()})
        self.transcript.final_score = self.score_state.score
        self.transcript.outcome = self.outcome
