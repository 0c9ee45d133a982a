from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List

from specpinn.logger import logger
from specpinn.types import Array

Objective = Callable[[Array], Array]


class NonFiniteLossError(FloatingPointError):
    """Optimizer hit a non-finite loss."""

    def __init__(self, message: str, step: int = -1, phase: str = "") -> None:
        super().__init__(message)
        self.step = step
        self.phase = phase


@dataclass
class OptimizationResult:
    """
    Outcome of a minimizer run.

    ``losses`` holds one entry per step: the loss at which each Adam update was
    taken, or each accepted L-BFGS iterate.
    """

    params: Array
    losses: List[float] = field(default_factory=list)
    phase: str = ""
    iterations: int = 0
    converged: bool = False
    line_search_failed: bool = False
    wolfe_satisfied: List[bool] = field(default_factory=list)

    @property
    def final_loss(self) -> float:
        return self.losses[-1] if self.losses else float("nan")


def check_finite(loss: Array, step: int, phase: str) -> float:
    value = float(loss)
    if not math.isfinite(value):
        message = f"Non-finite loss {value} at {phase} step {step}"
        logger.error(message)
        raise NonFiniteLossError(message, step=step, phase=phase)
    return value
