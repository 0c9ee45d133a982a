from __future__ import annotations

import math

import jax
import jax.numpy as jnp
import optax
import optax.tree_utils as otu
from tqdm import tqdm

from specpinn.logger import logger
from specpinn.optim.base import Objective, OptimizationResult, check_finite
from specpinn.optim.settings import OptimConfig
from specpinn.types import Array


def lbfgs_minimize(objective: Objective, params: Array, cfg: OptimConfig) -> OptimizationResult:
    """
    Limited-memory BFGS with a zoom line search enforcing the strong Wolfe conditions.

    Stops when the gradient norm drops to ``cfg.lbfgs_grad_tol``, after
    ``cfg.lbfgs_max_iters`` iterations, or when the line search fails. A failed
    line search is not an error: the best iterate so far is returned with
    ``line_search_failed`` set. Accepted losses are non-increasing.
    """
    c1, c2 = cfg.line_search
    linesearch = optax.scale_by_zoom_linesearch(
        max_linesearch_steps=cfg.max_linesearch_steps,
        slope_rtol=c1,
        curv_rtol=c2,
        approx_dec_rtol=None,
    )
    optimizer = optax.lbfgs(memory_size=cfg.lbfgs_history, linesearch=linesearch)
    value_and_grad = optax.value_and_grad_from_state(objective)

    @jax.jit
    def train_step(params: Array, state: optax.OptState):
        value, grad = value_and_grad(params, state=state)
        updates, state = optimizer.update(
            grad, state, params, value=value, grad=grad, value_fn=objective
        )
        return optax.apply_updates(params, updates), state

    params = jnp.asarray(params)
    state = optimizer.init(params)
    value, grad = jax.jit(jax.value_and_grad(objective))(params)
    loss = check_finite(value, 0, "lbfgs")
    result = OptimizationResult(params=params, phase="lbfgs")

    if float(otu.tree_l2_norm(grad)) <= cfg.lbfgs_grad_tol:
        logger.info("L-BFGS started at a stationary point")
        result.converged = True
        return result

    for iteration in tqdm(range(cfg.lbfgs_max_iters), desc="lbfgs", disable=not cfg.progress):
        new_params, state = train_step(params, state)
        new_loss = float(otu.tree_get(state, "value"))
        info = otu.tree_get(state, "info")
        wolfe = float(info.decrease_error) <= 0.0 and float(info.curvature_error) <= 0.0
        if not (math.isfinite(new_loss) and new_loss <= loss and wolfe):
            logger.warning(
                f"L-BFGS line search failed at iteration {iteration}"
                f" (loss {new_loss:.6e}); keeping the best iterate"
            )
            result.line_search_failed = True
            break
        params, loss = new_params, new_loss
        result.losses.append(loss)
        result.wolfe_satisfied.append(wolfe)
        result.iterations += 1
        grad_norm = float(otu.tree_l2_norm(otu.tree_get(state, "grad")))
        logger.debug(f"L-BFGS iteration {iteration}: loss {loss:.6e}, |grad| {grad_norm:.3e}")
        if grad_norm <= cfg.lbfgs_grad_tol:
            result.converged = True
            break

    result.params = params
    logger.info(
        f"L-BFGS finished after {result.iterations} iterations, loss {loss:.6e}"
        f" (converged={result.converged}, line_search_failed={result.line_search_failed})"
    )
    return result
