from __future__ import annotations

from typing import Callable, NamedTuple, Tuple

import jax.numpy as jnp
import numpy as np

from specpinn.logger import logger
from specpinn.types import Array, Domain, default_dtype


class SamplingError(ValueError):
    """A sampled field value is not finite."""


class GridField(NamedTuple):
    """
    Real field on a uniform tensor grid.

    ``values[i, j]`` is the field at ``(x_i, y_j)`` with ``x_i = lo_x + i * (hi_x - lo_x) / N_x``;
    the upper bound is excluded (periodic convention).
    """

    values: Array
    domain: Domain

    @property
    def resolution(self) -> Tuple[int, int]:
        return tuple(self.values.shape)  # type: ignore

    @property
    def lengths(self) -> Tuple[float, float]:
        return tuple(hi - lo for lo, hi in self.domain)  # type: ignore


def _check_resolution(resolution: Tuple[int, int]) -> None:
    if len(resolution) != 2 or min(resolution) < 2:
        logger.error(
            f"Grid resolution must be at least 2 per axis, got {resolution}",
            exception=ValueError,
        )


def grid_axes(domain: Domain, resolution: Tuple[int, int]) -> Tuple[Array, Array]:
    """Per-axis coordinates including ``lo`` and excluding ``hi``."""
    _check_resolution(resolution)
    return tuple(  # type: ignore
        lo + (hi - lo) * jnp.arange(n, dtype=default_dtype.FLOATX) / n
        for (lo, hi), n in zip(domain, resolution)
    )


def grid_points(domain: Domain, resolution: Tuple[int, int]) -> Array:
    """Grid points as an ``(N_x * N_y, 2)`` array in row-major (``x`` slowest) order."""
    xs, ys = grid_axes(domain, resolution)
    X, Y = jnp.meshgrid(xs, ys, indexing="ij")
    return jnp.stack([X.ravel(), Y.ravel()], axis=-1)


def sample_on_grid(
    f: Callable[[Array], Array],
    domain: Domain,
    resolution: Tuple[int, int],
) -> GridField:
    """
    Sample a vectorized field function on the uniform grid.

    :param f: maps points ``(N, 2)`` to values ``(N,)``
    """
    points = grid_points(domain, resolution)
    values = jnp.asarray(f(points)).reshape(resolution)
    finite = np.isfinite(np.asarray(values))
    if not finite.all():
        i, j = (int(v) for v in np.argwhere(~finite)[0])
        x, y = (float(v) for v in points[i * resolution[1] + j])
        logger.error(
            f"Non-finite field value at grid index ({i}, {j}), point ({x:.6g}, {y:.6g})",
            exception=SamplingError,
        )
    return GridField(values=values, domain=domain)
