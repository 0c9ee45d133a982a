from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import jax

from specpinn.logger import logger
from specpinn.models.nn.model import NetworkParams
from specpinn.multistage.loss import FrozenBundles, LossTerms, stage_loss_terms
from specpinn.multistage.settings import LossWeights
from specpinn.multistage.solution import CompositeSolution, LossEntry
from specpinn.optim import NonFiniteLossError, OptimConfig, adam_minimize, lbfgs_minimize
from specpinn.problems.base import CollocationPoints, ProblemInterface
from specpinn.types import Array


class StageTrainingError(RuntimeError):
    """Training of a stage was aborted."""

    def __init__(self, message: str, stage: int) -> None:
        super().__init__(message)
        self.stage = stage


@dataclass
class StageTrainingResult:
    network: NetworkParams
    loss_history: List[LossEntry] = field(default_factory=list)
    initial_terms: Optional[LossTerms] = None
    final_terms: Optional[LossTerms] = None
    line_search_failed: bool = False
    wolfe_satisfied: bool = True


@dataclass
class StageTrainer:
    """
    Train one stage network ``u_n`` inside ``u = frozen + epsilon * u_n``.

    Earlier stages are frozen: their derivative bundles are evaluated once on the
    collocation points. Adam runs first, then L-BFGS continues from its result.
    """

    problem: ProblemInterface
    points: CollocationPoints
    weights: LossWeights
    optim: OptimConfig
    frozen: Optional[CompositeSolution] = None
    epsilon: float = 1.0
    stage: int = 0

    def __post_init__(self) -> None:
        self._frozen_bundles = FrozenBundles.from_solution(
            self.frozen, self.points, self.problem.num_outputs
        )

    def loss_terms(self, network: NetworkParams) -> LossTerms:
        return stage_loss_terms(
            network, self.epsilon, self._frozen_bundles, self.problem, self.points, self.weights
        )

    def objective(self, network: NetworkParams):
        """Scalar loss of the flat parameter vector of ``network``'s architecture."""

        def flat_objective(vector: Array) -> Array:
            return self.loss_terms(network.with_flat_parameters(vector)).total

        return flat_objective

    def fit(self, network: NetworkParams) -> StageTrainingResult:
        objective = self.objective(network)
        terms = jax.jit(lambda vector: self.loss_terms(network.with_flat_parameters(vector)))
        flat = network.flatten()
        result = StageTrainingResult(network=network, initial_terms=terms(flat))
        logger.info(
            f"Stage {self.stage}: training {network.num_parameters} parameters"
            f" (epsilon={self.epsilon:.6e}, initial loss {float(result.initial_terms.total):.6e})"
        )
        try:
            adam = adam_minimize(objective, flat, self.optim)
            lbfgs = lbfgs_minimize(objective, adam.params, self.optim)
        except NonFiniteLossError as error:
            message = f"Stage {self.stage} aborted: {error}"
            logger.error(message)
            raise StageTrainingError(message, stage=self.stage) from error

        result.loss_history = [(step, "adam", loss) for step, loss in enumerate(adam.losses)]
        offset = len(adam.losses)
        result.loss_history += [
            (offset + step, "lbfgs", loss) for step, loss in enumerate(lbfgs.losses)
        ]
        result.network = network.with_flat_parameters(lbfgs.params)
        result.final_terms = terms(lbfgs.params)
        result.line_search_failed = lbfgs.line_search_failed
        result.wolfe_satisfied = all(lbfgs.wolfe_satisfied)
        logger.info(
            f"Stage {self.stage}: final loss {float(result.final_terms.total):.6e}"
            f" (interior {float(result.final_terms.interior):.6e})"
        )
        return result


def loss_summary(terms: Optional[LossTerms]) -> Tuple[float, float, float, float]:
    if terms is None:
        return (float("nan"),) * 4  # type: ignore
    return tuple(float(value) for value in terms)  # type: ignore
