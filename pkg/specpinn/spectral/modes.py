from __future__ import annotations

from typing import NamedTuple

import jax.numpy as jnp
import numpy as np

from specpinn.logger import logger
from specpinn.spectral.transform import Spectrum
from specpinn.types import Array


class SpectralModes(NamedTuple):
    """
    Dominant real cosine modes ``scale * amplitude_j * cos(frequency_j . x + phase_j)``.

    * frequencies: angular frequency vectors ``(n_f, 2)``
    * amplitudes: normalized amplitudes ``(n_f,)``, the first one equal to 1
    * phases: phases ``(n_f,)`` in absolute coordinates, wrapped to ``(-pi, pi]``
    * indices: integer DFT indices ``(n_f, 2)``
    * scale: largest (unnormalized) amplitude

    Modes are sorted by descending amplitude.
    """

    frequencies: Array
    amplitudes: Array
    phases: Array
    indices: Array
    scale: float

    @property
    def num_modes(self) -> int:
        return int(self.amplitudes.shape[0])

    def evaluate(self, points: Array) -> Array:
        """Evaluate the truncated cosine series at points ``(N, 2)``."""
        features = self.amplitudes * jnp.cos(points @ self.frequencies.T + self.phases)
        return self.scale * jnp.sum(features, axis=-1)


def non_redundant_mask(spectrum: Spectrum) -> np.ndarray:
    """
    Half-spectrum of a real field: ``k_y > 0`` plus the self-conjugate
    rows ``k_y in {0, N_y/2}`` restricted to ``k_x >= 0``.
    """
    KX, KY = spectrum.index_grid()
    nx, ny = spectrum.resolution
    self_conjugate_row = (KY == 0) | (2 * KY == ny)
    return (~self_conjugate_row & (KY > 0)) | (self_conjugate_row & (KX >= 0))


def _self_conjugate(spectrum: Spectrum) -> np.ndarray:
    KX, KY = spectrum.index_grid()
    nx, ny = spectrum.resolution
    return ((KX == 0) | (2 * KX == nx)) & ((KY == 0) | (2 * KY == ny))


def extract_top_modes(s: Spectrum, n_f: int) -> SpectralModes:
    """
    Select the ``n_f`` largest-amplitude modes of the non-redundant half-spectrum.

    Amplitudes of modes with a conjugate partner are doubled so that the real
    cosine series carries the energy of both coefficients. Self-conjugate modes
    (e.g. the DC term) get a phase of exactly 0 or pi.
    """
    mask = non_redundant_mask(s)
    available = int(mask.sum())
    if not 1 <= n_f <= available:
        logger.error(
            f"Number of modes must be in [1, {available}], got {n_f}",
            exception=ValueError,
        )
    coefficients = np.asarray(s.coefficients)
    self_conjugate = _self_conjugate(s)
    weight = np.where(self_conjugate, 1.0, 2.0)
    amplitude = weight * np.abs(coefficients)
    phase = np.where(
        self_conjugate,
        np.where(coefficients.real >= 0.0, 0.0, np.pi),
        np.angle(coefficients),
    )

    KX, KY = s.index_grid()
    WX, WY = s.angular_frequencies()
    candidates = np.flatnonzero(mask.ravel())
    # stable sort keeps FFT enumeration order among ties
    order = np.argsort(-amplitude.ravel()[candidates], kind="stable")
    selected = candidates[order[:n_f]]

    frequencies = np.stack([WX.ravel()[selected], WY.ravel()[selected]], axis=-1)
    (lo_x, _), (lo_y, _) = s.domain
    absolute_phase = phase.ravel()[selected] - frequencies @ np.array([lo_x, lo_y])
    absolute_phase = np.angle(np.exp(1j * absolute_phase))
    absolute_phase = np.where(absolute_phase <= -np.pi, np.pi, absolute_phase)

    amplitudes = amplitude.ravel()[selected]
    scale = float(amplitudes[0])
    normalized = amplitudes / scale if scale > 0.0 else np.zeros_like(amplitudes)
    modes = SpectralModes(
        frequencies=jnp.asarray(frequencies),
        amplitudes=jnp.asarray(normalized),
        phases=jnp.asarray(absolute_phase),
        indices=jnp.asarray(np.stack([KX.ravel()[selected], KY.ravel()[selected]], axis=-1)),
        scale=scale,
    )
    logger.debug(f"Selected {n_f} modes with indices {modes.indices.tolist()}")
    return modes
