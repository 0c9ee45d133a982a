from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

import jax.numpy as jnp

from specpinn.autodiff import DerivativeBundle, add_bundles, eval_with_derivatives
from specpinn.models.nn.model import NetworkParams
from specpinn.types import Array, default_dtype

LossEntry = Tuple[int, str, float]


@dataclass(frozen=True)
class StageRecord:
    """
    One trained stage.

    ``epsilon`` is the residual RMS that entered the stage (1 for stage 0) and
    multiplies the stage network in the composite solution.
    """

    network: NetworkParams
    epsilon: float = 1.0
    loss_history: Tuple[LossEntry, ...] = field(default=tuple(), repr=False)
    initialization: Dict[str, Any] = field(default_factory=dict, repr=False)
    seed: int = 0


@dataclass(frozen=True)
class CompositeSolution:
    """Ordered stages evaluating ``u_s(x) = sum_j epsilon_j u_j(x)``."""

    stages: Tuple[StageRecord, ...] = tuple()
    num_outputs: int = 1

    def __len__(self) -> int:
        return len(self.stages)

    def append(self, record: StageRecord) -> CompositeSolution:
        return replace(self, stages=self.stages + (record,))

    @property
    def epsilons(self) -> List[float]:
        return [stage.epsilon for stage in self.stages]

    def evaluate(self, points: Array) -> Array:
        """Composite values ``(N, n_out)`` at points ``(N, d)``."""
        points = jnp.asarray(points, dtype=default_dtype.FLOATX)
        value = jnp.zeros(points.shape[:-1] + (self.num_outputs,), dtype=points.dtype)
        for stage in self.stages:
            value = value + stage.epsilon * stage.network(points)
        return value

    def bundles(self, points: Array) -> DerivativeBundle:
        """Composite values and input derivatives (differentiation is linear in the stages)."""
        points = jnp.asarray(points, dtype=default_dtype.FLOATX)
        bundle = zero_bundle(points, self.num_outputs)
        for stage in self.stages:
            bundle = add_bundles(bundle, eval_with_derivatives(stage.network, points), stage.epsilon)
        return bundle

    def __call__(self, points: Array) -> Array:
        return self.evaluate(points)


def zero_bundle(points: Array, num_outputs: int) -> DerivativeBundle:
    shape = points.shape[:-1] + (num_outputs,)
    return DerivativeBundle(
        value=jnp.zeros(shape, dtype=points.dtype),
        gradient=jnp.zeros(shape + (points.shape[-1],), dtype=points.dtype),
        hessian_diag=jnp.zeros(shape + (points.shape[-1],), dtype=points.dtype),
    )


def frozen_bundles(
    solution: Optional[CompositeSolution], points: Array, num_outputs: int
) -> DerivativeBundle:
    """Precompute the bundle of already trained stages at fixed points."""
    if solution is None or len(solution) == 0 or points.shape[0] == 0:
        return zero_bundle(points, num_outputs)
    return solution.bundles(points)
