from __future__ import annotations

import math
from typing import NamedTuple, Tuple

import jax.numpy as jnp
import numpy as np

from specpinn.spectral.grid import GridField
from specpinn.types import Array, Domain


def frequency_indices(n: int) -> np.ndarray:
    """Integer DFT indices in FFT order; the Nyquist index of an even grid is reported as ``+n/2``."""
    indices = np.rint(np.fft.fftfreq(n, d=1.0 / n)).astype(int)
    if n % 2 == 0:
        indices[n // 2] = n // 2
    return indices


class Spectrum(NamedTuple):
    """
    Two-dimensional DFT coefficients in FFT order.

    Forward normalization ``1 / (N_x N_y)`` is used: a unit-amplitude cosine shows up
    as two conjugate coefficients of magnitude 0.5.
    """

    coefficients: Array
    domain: Domain

    @property
    def resolution(self) -> Tuple[int, int]:
        return tuple(self.coefficients.shape)  # type: ignore

    @property
    def amplitude(self) -> Array:
        return jnp.abs(self.coefficients)

    @property
    def phase(self) -> Array:
        return jnp.angle(self.coefficients)

    def index_grid(self) -> Tuple[np.ndarray, np.ndarray]:
        """Integer mode indices ``(k_x, k_y)`` for every coefficient."""
        kx, ky = (frequency_indices(n) for n in self.resolution)
        return np.meshgrid(kx, ky, indexing="ij")

    def cyclic_frequencies(self) -> Tuple[np.ndarray, np.ndarray]:
        """Frequencies in cycles per unit length (``index / L``)."""
        (lx, ly) = (hi - lo for lo, hi in self.domain)
        KX, KY = self.index_grid()
        return KX / lx, KY / ly

    def angular_frequencies(self) -> Tuple[np.ndarray, np.ndarray]:
        """Frequencies in radians per unit length (``2 pi index / L``)."""
        FX, FY = self.cyclic_frequencies()
        return 2.0 * math.pi * FX, 2.0 * math.pi * FY


def dft2(g: GridField) -> Spectrum:
    """Forward 2-D DFT of a grid field."""
    return Spectrum(coefficients=jnp.fft.fft2(g.values, norm="forward"), domain=g.domain)


def inverse_dft2(s: Spectrum) -> GridField:
    """Inverse of :func:`dft2` (real part)."""
    values = jnp.fft.ifft2(s.coefficients, norm="forward")
    return GridField(values=jnp.real(values), domain=s.domain)


def psd(s: Spectrum) -> GridField:
    """Power spectral density ``|c(k)|^2``, indexed like the spectrum."""
    return GridField(values=jnp.abs(s.coefficients) ** 2, domain=s.domain)


def combine_psd(*fields: GridField) -> GridField:
    """Sum the PSDs of several residual components (energy is additive)."""
    return GridField(values=sum(f.values for f in fields), domain=fields[0].domain)


def dominant_frequency(power: GridField) -> float:
    """Magnitude of the cyclic frequency vector at the PSD maximum."""
    spectrum = Spectrum(coefficients=jnp.zeros_like(power.values), domain=power.domain)
    FX, FY = spectrum.cyclic_frequencies()
    i, j = np.unravel_index(int(jnp.argmax(power.values)), power.values.shape)
    return float(np.hypot(FX[i, j], FY[i, j]))
