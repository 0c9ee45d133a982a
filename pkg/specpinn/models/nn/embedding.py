"""
Cosine first layers that inject spectral information into a network.

Two frequency conventions are used:

* spectral embedding: ``B`` holds *angular* frequencies (``2*pi*index/length`` per
  axis), so ``A * cos(B x + b)`` reproduces discrete Fourier modes directly;
* random Fourier features: ``B`` holds *cyclic* frequencies because the feature
  map ``cos(2*pi*B x + b)`` already carries the ``2*pi`` factor.
"""

from __future__ import annotations

import math
from dataclasses import field
from typing import Literal

import jax
import jax.numpy as jnp
from flax import linen as nn

from specpinn.autodiff import DimensionMismatchError
from specpinn.logger import logger
from specpinn.models.nn.initializer import phase_initializer
from specpinn.types import Array, Dtype, default_dtype

EmbeddingKind = Literal["spectral_embedding", "rff"]


def _check_shapes(B: Array, b: Array, x: Array, A: Array = None) -> None:
    if B.ndim != 2 or b.shape != (B.shape[0],):
        logger.error(
            f"Frequency matrix {B.shape} and phases {b.shape} do not match",
            exception=DimensionMismatchError,
        )
    if A is not None and A.shape != (B.shape[0],):
        logger.error(
            f"Amplitudes {A.shape} do not match frequency matrix rows {B.shape[0]}",
            exception=DimensionMismatchError,
        )
    if x.shape[-1] != B.shape[1]:
        logger.error(
            f"Input dimension {x.shape[-1]} does not match frequency dimension {B.shape[1]}",
            exception=DimensionMismatchError,
        )


def spectral_embedding_forward(A: Array, B: Array, b: Array, x: Array) -> Array:
    """Spectral embedding features ``A_j cos(B_j . x + b_j)`` for a point or a batch."""
    A, B, b, x = (jnp.asarray(v) for v in (A, B, b, x))
    _check_shapes(B, b, x, A)
    return A * jnp.cos(x @ B.T + b)


def rff_forward(B: Array, b: Array, x: Array) -> Array:
    """Random Fourier features ``cos(2 pi B_j . x + b_j)`` for a point or a batch."""
    B, b, x = (jnp.asarray(v) for v in (B, b, x))
    _check_shapes(B, b, x)
    return jnp.cos(2.0 * math.pi * (x @ B.T) + b)


class FourierFeatureLayer(nn.Module):
    """
    Trainable cosine feature layer.

    Parameters are created with generic initial values and are meant to be
    overwritten from residual spectra (see the network factories).
    """

    num_features: int
    kind: EmbeddingKind = "spectral_embedding"
    trainable: bool = True
    params_dtype: Dtype = field(default_factory=lambda: default_dtype.FLOATX)

    @nn.compact
    def __call__(self, x: Array) -> Array:
        frequency = self.param(
            "frequency",
            nn.initializers.normal(1.0),
            (self.num_features, x.shape[-1]),
            self.params_dtype,
        )
        phase = self.param("phase", phase_initializer, (self.num_features,), self.params_dtype)
        if self.kind == "spectral_embedding":
            amplitude = self.param(
                "amplitude", nn.initializers.ones, (self.num_features,), self.params_dtype
            )
            if not self.trainable:
                frequency, phase, amplitude = jax.lax.stop_gradient((frequency, phase, amplitude))
            return spectral_embedding_forward(amplitude, frequency, phase, x)

        if not self.trainable:
            frequency, phase = jax.lax.stop_gradient((frequency, phase))
        return rff_forward(frequency, phase, x)
