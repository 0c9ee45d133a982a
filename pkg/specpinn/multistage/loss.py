"""
PINN loss of a composite solution.

``loss = w_f mean|r_f|^2 + w_b mean|r_b|^2 + w_i mean|r_i|^2`` where ``|.|^2`` sums
the squared residual components at a point and ``mean`` averages over the point
set. The initial-condition term is dropped for time-independent problems.
"""

from __future__ import annotations

from typing import List, NamedTuple, Optional, Tuple, Union

import jax.numpy as jnp
import numpy as np

from specpinn.autodiff import DerivativeBundle, add_bundles, eval_with_derivatives, loss_parameter_gradient
from specpinn.logger import logger
from specpinn.models.nn.model import NetworkParams
from specpinn.multistage.settings import LossWeights
from specpinn.multistage.solution import CompositeSolution, StageRecord, frozen_bundles
from specpinn.problems.base import CollocationPoints, ProblemInterface
from specpinn.spectral.grid import GridField, grid_points, sample_on_grid
from specpinn.types import Array


class ResidualError(FloatingPointError):
    """A PINN residual is not finite."""

    def __init__(self, message: str, point: Tuple[float, ...] = ()) -> None:
        super().__init__(message)
        self.point = point


class LossTerms(NamedTuple):
    """Weighted total and the unweighted per-set mean squared residuals."""

    total: Array
    interior: Array
    boundary: Array
    initial: Array


class FrozenBundles(NamedTuple):
    """Derivative bundles of the frozen stages on each collocation set."""

    interior: DerivativeBundle
    boundary: DerivativeBundle
    initial: DerivativeBundle

    @classmethod
    def from_solution(
        cls,
        solution: Optional[CompositeSolution],
        points: CollocationPoints,
        num_outputs: int,
    ) -> FrozenBundles:
        return cls(
            *(
                frozen_bundles(solution, array, num_outputs)
                for array in (points.interior, points.boundary, points.initial)
            )
        )


def _mean_square(residual: Array) -> Array:
    return jnp.mean(jnp.sum(residual**2, axis=-1))


def residuals(
    problem: ProblemInterface,
    points: CollocationPoints,
    bundles: FrozenBundles,
) -> Tuple[Array, Array, Array]:
    """Interior, boundary and initial residuals ``(N, n_res)`` from full composite bundles."""
    interior = problem.interior_residual(points.interior, bundles.interior)
    boundary = problem.boundary_residual(points.boundary, points.boundary_normals, bundles.boundary)
    if problem.is_time_dependent and points.initial.shape[0] > 0:
        initial = problem.initial_residual(points.initial, bundles.initial)
    else:
        initial = jnp.zeros((0, 1), dtype=interior.dtype)
    return interior, boundary, initial


def loss_terms_from_residuals(
    interior: Array, boundary: Array, initial: Array, weights: LossWeights
) -> LossTerms:
    interior_loss = _mean_square(interior)
    boundary_loss = _mean_square(boundary)
    initial_loss = _mean_square(initial) if initial.shape[0] > 0 else jnp.zeros_like(interior_loss)
    total = (
        weights.interior * interior_loss
        + weights.boundary * boundary_loss
        + weights.initial * initial_loss
    )
    return LossTerms(total=total, interior=interior_loss, boundary=boundary_loss, initial=initial_loss)


def stage_loss_terms(
    network: NetworkParams,
    epsilon: float,
    frozen: FrozenBundles,
    problem: ProblemInterface,
    points: CollocationPoints,
    weights: LossWeights,
) -> LossTerms:
    """Loss of ``frozen + epsilon * network``; traceable, used as the stage objective."""

    def combine(base: DerivativeBundle, array: Array) -> DerivativeBundle:
        if array.shape[0] == 0:
            return base
        return add_bundles(base, eval_with_derivatives(network, array), epsilon)

    bundles = FrozenBundles(
        interior=combine(frozen.interior, points.interior),
        boundary=combine(frozen.boundary, points.boundary),
        initial=combine(frozen.initial, points.initial)
        if problem.is_time_dependent
        else frozen.initial,
    )
    return loss_terms_from_residuals(*residuals(problem, points, bundles), weights)


def _check_residuals(named: List[Tuple[str, Array, Array]]) -> None:
    for name, points, residual in named:
        finite = np.isfinite(np.asarray(residual)).all(axis=-1)
        if not finite.all():
            point = tuple(float(v) for v in np.asarray(points)[int(np.argmin(finite))])
            message = f"Non-finite {name} residual at point {point}"
            logger.error(message)
            raise ResidualError(message, point=point)


def composite_loss_terms(
    solution: CompositeSolution,
    problem: ProblemInterface,
    points: CollocationPoints,
    weights: LossWeights,
) -> LossTerms:
    """Loss terms of a complete composite solution; non-finite residuals are rejected."""
    bundles = FrozenBundles.from_solution(solution, points, problem.num_outputs)
    interior, boundary, initial = residuals(problem, points, bundles)
    _check_residuals(
        [
            ("interior", points.interior, interior),
            ("boundary", points.boundary, boundary),
            ("initial", points.initial, initial),
        ]
    )
    return loss_terms_from_residuals(interior, boundary, initial, weights)


def pinn_loss(
    solution: Union[CompositeSolution, NetworkParams],
    problem: ProblemInterface,
    points: CollocationPoints,
    weights: LossWeights,
) -> Tuple[float, Array]:
    """
    Weighted PINN loss and its gradient.

    The gradient is taken with respect to the trainable parameters only: the
    network itself, or the last stage of a composite (earlier stages are frozen).
    """
    if isinstance(solution, NetworkParams):
        solution = CompositeSolution(
            stages=(StageRecord(network=solution),), num_outputs=solution.out_features
        )
    if len(solution) == 0:
        logger.error("Composite solution has no trainable stage", exception=ValueError)
    loss = composite_loss_terms(solution, problem, points, weights).total

    *frozen_stages, last = solution.stages
    frozen = FrozenBundles.from_solution(
        CompositeSolution(stages=tuple(frozen_stages), num_outputs=solution.num_outputs),
        points,
        solution.num_outputs,
    )

    def stage_loss(network: NetworkParams) -> Array:
        return stage_loss_terms(network, last.epsilon, frozen, problem, points, weights).total

    return float(loss), loss_parameter_gradient(stage_loss, last.network)


def residual_field(
    solution: CompositeSolution,
    problem: ProblemInterface,
    resolution: Tuple[int, int],
) -> List[GridField]:
    """Pointwise PDE residual of the composite on the uniform grid, one field per component."""
    points = grid_points(problem.domain, resolution)
    residual = problem.interior_residual(points, frozen_bundles(solution, points, problem.num_outputs))
    return [
        sample_on_grid(lambda _, column=residual[:, c]: column, problem.domain, resolution)
        for c in range(residual.shape[-1])
    ]
