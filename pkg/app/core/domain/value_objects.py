"""Value objects shared across modules."""

from enum import Enum, IntEnum
from typing import NamedTuple


class Action(IntEnum):
    """Movement actions in canonical Q-vector order."""

    LEFT = 0
    RIGHT = 1
    UP = 2
    DOWN = 3

    @property
    def delta(self) -> tuple[int, int]:
        return _ACTION_DELTAS[self]


# x grows to the right, y grows upward
_ACTION_DELTAS = {
    Action.LEFT: (-1, 0),
    Action.RIGHT: (1, 0),
    Action.UP: (0, 1),
    Action.DOWN: (0, -1),
}

N_ACTIONS = len(Action)


class Cell(NamedTuple):
    """Grid cell coordinate, x in [0, W), y in [0, H)."""

    x: int
    y: int

    def shifted(self, action: Action) -> "Cell":
        dx, dy = action.delta
        return Cell(self.x + dx, self.y + dy)


class AgentRole(str, Enum):
    """Behaviour of an agent inside a run."""

    HONEST = "honest"
    BYZANTINE = "byzantine"
    INFERENCE = "inference"


class Variant(str, Enum):
    """Protocol variant (full protocol or a defense ablation)."""

    BRNES = "brnes"
    NO_DEFENSE = "no-defense"
    LDP_ONLY = "ldp-only"


class AttackKind(str, Enum):
    """Threat model present in a scenario."""

    NONE = "none"
    BYZANTINE = "byzantine"
    INFERENCE = "inference"


class Scale(str, Enum):
    """Environment scale presets."""

    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"
    CUSTOM = "custom"


class GateMode(str, Enum):
    """How the EHC/EGC confidences gate advice."""

    DETERMINISTIC = "deterministic"
    BERNOULLI = "bernoulli"


class EgcBudgetRule(str, Enum):
    """Advisor behaviour once its giving budget is spent."""

    REFUSE_WHEN_EXHAUSTED = "refuse-when-exhausted"
    LITERAL = "literal"


class StepCapRule(str, Enum):
    """Reading of the "grid size x 100" episode step cap."""

    CELLS = "cells"
    LONGEST_SIDE = "longest-side"


class InferenceTargets(str, Enum):
    """Which advisors an inference attacker queries."""

    DESIGNATED = "designated"
    ALL = "all"


class InferenceScoring(str, Enum):
    """Which advisor table an inference attacker is scored against."""

    OBSERVED = "observed"
    CURRENT = "current"
