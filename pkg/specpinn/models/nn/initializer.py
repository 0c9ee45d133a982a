import math
from typing import Tuple

import jax.numpy as jnp
from flax import linen as nn

from specpinn.types import Array, Dtype, KeyArray


class UniformInitializer:
    """Uniform initializer on ``[low, high)`` for FLAX parameters (e.g. RFF phases on [0, 2pi))."""

    def __init__(self, weights_range: Tuple[float, float]) -> None:
        self.weights_range = weights_range
        self.initializer = nn.initializers.uniform(
            self.weights_range[1] - self.weights_range[0]
        )

    def __call__(self, rng: KeyArray, shape: Tuple[int, ...], dtype: Dtype = jnp.float64) -> Array:
        return self.initializer(rng, shape, dtype) + self.weights_range[0]

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(weights_range={self.weights_range})"


def xavier_bound(fan_in: int, fan_out: int) -> float:
    """Half width of the Xavier (Glorot) uniform distribution."""
    return math.sqrt(6.0 / (fan_in + fan_out))


# variance_scaling(1, "fan_avg", "uniform") samples on [-xavier_bound, +xavier_bound]
xavier_uniform = nn.initializers.xavier_uniform

phase_initializer = UniformInitializer(weights_range=(0.0, 2.0 * math.pi))
