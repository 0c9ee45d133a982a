from dataclasses import dataclass
from typing import Any, Tuple

import jax
import jax.numpy as jnp

Array = jax.Array
Dtype = Any
KeyArray = jax.Array

# Per-axis [lo, hi] bounds of a two-dimensional domain
Domain = Tuple[Tuple[float, float], Tuple[float, float]]


@dataclass
class DataType:
    """
    Default floating point type of collocation points, grids and parameters.

    Double precision is required: stage corrections reach residuals near
    round-off of single precision after the first stage.
    """

    FLOATX: Dtype = jnp.float64


default_dtype = DataType()
