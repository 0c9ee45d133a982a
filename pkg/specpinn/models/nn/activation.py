import jax.numpy as jnp
from flax import linen as nn
from frozendict import frozendict

from specpinn.types import Array


def identity(x: Array) -> Array:
    return x


def sin(x: Array) -> Array:
    return jnp.sin(x)


def cos(x: Array) -> Array:
    return jnp.cos(x)


def gaussian(x: Array) -> Array:
    return jnp.exp(-0.5 * x**2)


# Smooth activations only: residual operators need two input derivatives
_activation_function_map: frozendict = frozendict(
    {
        "identity": identity,
        "tanh": nn.tanh,
        "sin": sin,
        "cos": cos,
        "gaussian": gaussian,
        "softplus": nn.softplus,
    }
)
