"""PSD-weighted frequency sampling for random Fourier feature layers."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence, Tuple, Union

import jax
import jax.numpy as jnp
import numpy as np

from specpinn.logger import logger
from specpinn.spectral.grid import GridField
from specpinn.spectral.transform import Spectrum
from specpinn.types import Array, Domain, default_dtype


class DegenerateResidualError(ValueError):
    """The residual power spectrum carries no energy."""


class FrequencyDistribution(NamedTuple):
    """
    Discrete distribution over cyclic frequency vectors.

    The support is enumerated in row-major order of the DFT grid (FFT index order),
    which is the fixed order used for inverse-CDF sampling.
    """

    support: Array
    probabilities: Array


def _cyclic_support(domain: Domain, resolution: Tuple[int, int]) -> Array:
    spectrum = Spectrum(coefficients=jnp.zeros(resolution), domain=domain)
    FX, FY = spectrum.cyclic_frequencies()
    return jnp.asarray(np.stack([FX.ravel(), FY.ravel()], axis=-1), dtype=default_dtype.FLOATX)


def normalize_psd(P: GridField) -> FrequencyDistribution:
    """Turn a power spectral density into probabilities ``p(k) = P(k) / sum P``."""
    values = jnp.asarray(P.values, dtype=default_dtype.FLOATX).ravel()
    if bool(jnp.any(values < 0.0)):
        logger.error("Power spectral density must be non-negative", exception=ValueError)
    total = jnp.sum(values)
    if not float(total) > 0.0:
        logger.error(
            "Power spectral density is identically zero", exception=DegenerateResidualError
        )
    return FrequencyDistribution(
        support=_cyclic_support(P.domain, P.values.shape),
        probabilities=values / total,
    )


def uniform_distribution(domain: Domain, resolution: Tuple[int, int]) -> FrequencyDistribution:
    """Uniform distribution over every grid frequency (fallback for degenerate residuals)."""
    support = _cyclic_support(domain, resolution)
    n = support.shape[0]
    return FrequencyDistribution(
        support=support,
        probabilities=jnp.full((n,), 1.0 / n, dtype=default_dtype.FLOATX),
    )


def sample_frequencies(p: FrequencyDistribution, m: int, seed: int) -> Array:
    """
    Draw ``m`` i.i.d. frequency vectors from ``p`` with replacement.

    Inverse-CDF sampling over the fixed support order; deterministic per seed.
    """
    if m < 1:
        logger.error(f"Number of frequencies must be positive, got {m}", exception=ValueError)
    cdf = jnp.cumsum(p.probabilities)
    u = jax.random.uniform(jax.random.PRNGKey(seed), (m,), dtype=cdf.dtype) * cdf[-1]
    index = jnp.searchsorted(cdf, u, side="right")
    index = jnp.clip(index, 0, cdf.shape[0] - 1)
    return p.support[index]


def build_rff_layer(freqs: Union[Array, Sequence], seed: int) -> Tuple[Array, Array]:
    """
    Frequency matrix and phases of a random Fourier feature layer.

    :return: ``B`` with the frequencies as rows in draw order, and phases ``b``
        uniform on ``[0, 2 pi)``
    """
    B = jnp.atleast_2d(jnp.asarray(freqs, dtype=default_dtype.FLOATX))
    if B.size == 0:
        logger.error("At least one frequency is required", exception=ValueError)
    b = jax.random.uniform(
        jax.random.PRNGKey(seed),
        (B.shape[0],),
        dtype=default_dtype.FLOATX,
        minval=0.0,
        maxval=2.0 * math.pi,
    )
    return B, b
