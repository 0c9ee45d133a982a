from __future__ import annotations

import jax
import jax.numpy as jnp
import optax
from tqdm import tqdm

from specpinn.logger import logger
from specpinn.optim.base import Objective, OptimizationResult, check_finite
from specpinn.optim.settings import OptimConfig
from specpinn.types import Array


def adam_minimize(objective: Objective, params: Array, cfg: OptimConfig) -> OptimizationResult:
    """
    Run ``cfg.adam_steps`` bias-corrected Adam updates on a flat parameter vector.

    :param objective: scalar loss of the parameter vector (differentiated with JAX)
    :return: final parameters and the loss at every step
    """
    optimizer = optax.adam(
        learning_rate=cfg.adam_lr,
        b1=cfg.adam_betas[0],
        b2=cfg.adam_betas[1],
        eps=cfg.adam_eps,
    )
    value_and_grad = jax.value_and_grad(objective)

    @jax.jit
    def train_step(params: Array, state: optax.OptState):
        loss, grads = value_and_grad(params)
        updates, state = optimizer.update(grads, state, params)
        return optax.apply_updates(params, updates), state, loss

    params = jnp.asarray(params)
    state = optimizer.init(params)
    result = OptimizationResult(params=params, phase="adam")
    for step in tqdm(range(cfg.adam_steps), desc="adam", disable=not cfg.progress):
        new_params, state, loss = train_step(params, state)
        result.losses.append(check_finite(loss, step, "adam"))
        params = new_params
    result.params = params
    result.iterations = cfg.adam_steps
    if result.losses:
        logger.info(f"Adam finished {cfg.adam_steps} steps, loss {result.losses[-1]:.6e}")
    return result
