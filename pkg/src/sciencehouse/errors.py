"""Engine error types.

Executor errors carry a short name (used by bindings to raise matching
exceptions) and a player-facing message. They are raised for hard
precondition violations; soft world responses ("nothing happens") are
plain observation text, not errors.
"""


class EngineError(Exception):
    """Base class for all engine errors."""

    name = "EngineError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ActionError(EngineError):
    """An action failed one of its hard preconditions."""

    name = "ActionError"


class NotVisible(ActionError):
    name = "NotVisible"


class NotPortable(ActionError):
    name = "NotPortable"


class ContainerClosed(ActionError):
    name = "ContainerClosed"


class NotAContainer(ActionError):
    name = "NotAContainer"


class TerminalOccupied(ActionError):
    name = "TerminalOccupied"


class NoSuchTerminal(ActionError):
    name = "NoSuchTerminal"


class NotADevice(ActionError):
    name = "NotADevice"


class ConditionUnmet(ActionError):
    name = "ConditionUnmet"


class NoUseDefined(ActionError):
    name = "NoUseDefined"


class TraitMismatch(EngineError):
    name = "TraitMismatch"


class UnknownTask(EngineError):
    name = "UnknownTask"


class IndexOutOfRange(EngineError):
    name = "IndexOutOfRange"


class UnknownFlag(EngineError):
    name = "UnknownFlag"


class UnknownFormat(EngineError):
    name = "UnknownFormat"


class EpisodeOver(EngineError):
    name = "EpisodeOver"


class PlanStuck(EngineError):
    """An oracle script could not make progress; signals an engine regression."""

    name = "PlanStuck"
