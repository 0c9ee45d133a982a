"""
Viscous Burgers equation ``u_t + u u_x = nu u_xx`` on ``x in [-1, 1], t in [0, 1]``
with ``u(-1, t) = u(1, t) = 0`` and ``u(x, 0) = -sin(pi x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import jax
import jax.numpy as jnp
import numpy as np
from scipy import special

from specpinn.autodiff import DerivativeBundle
from specpinn.logger import logger
from specpinn.problems.base import (
    CollocationPoints,
    OracleError,
    sample_edges,
    sample_uniform,
)
from specpinn.pytree import BaseJaxPytreeDataClass, register_jax_pytree_node
from specpinn.types import Array, Domain, default_dtype

BURGERS_DOMAIN: Domain = ((-1.0, 1.0), (0.0, 1.0))
_ON_SET_TOLERANCE: float = 1e-12


def burgers_residual(u: Array, u_t: Array, u_x: Array, u_xx: Array, nu: float) -> Array:
    """Pointwise residual ``u_t + u u_x - nu u_xx``."""
    return u_t + u * u_x - nu * u_xx


def burgers_condition_target(x: Array, t: Array) -> Array:
    """
    Prescribed values on the condition sets: ``0`` on ``x = +-1`` and
    ``-sin(pi x)`` on ``t = 0`` (the wall value wins at the two corners).
    """
    x, t = np.asarray(x, dtype=np.float64), np.asarray(t, dtype=np.float64)
    on_boundary = np.abs(np.abs(x) - 1.0) <= _ON_SET_TOLERANCE
    on_initial = np.abs(t) <= _ON_SET_TOLERANCE
    if not np.all(on_boundary | on_initial):
        index = int(np.argmin(on_boundary | on_initial))
        logger.error(
            f"Point (x={np.ravel(x)[index]:.6g}, t={np.ravel(t)[index]:.6g})"
            " is neither on the walls x=+-1 nor on the initial line t=0",
            exception=ValueError,
        )
    return np.where(on_boundary, 0.0, -np.sin(np.pi * x))


def burgers_conditions(x: Array, t: Array, u: Array) -> Array:
    """Condition residual ``u - target`` for points on the walls or the initial line."""
    return np.asarray(u, dtype=np.float64) - burgers_condition_target(x, t)


MIN_HERMITE_NODES: int = 32
# hermgauss loses its weights to round-off beyond 256 nodes
MAX_HERMITE_NODES: int = 256
# smallest |phi| / sum|terms| for which the Fourier series keeps ~1e-12 accuracy
SERIES_MIN_CONDITION: float = 1e-4


def _cole_hopf_series(x: np.ndarray, t: np.ndarray, nu: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    ``u = -2 nu phi_x / phi`` with the heat solution
    ``phi = I_0(a) + 2 sum_n (-1)^n I_n(a) cos(n pi x) exp(-nu n^2 pi^2 t)``, ``a = 1 / (2 pi nu)``.

    Exponentially scaled Bessel functions keep small viscosities finite; the common
    ``exp(a)`` factor cancels in the quotient. Returns values and ``|phi| / sum|terms|``.
    """
    a = 1.0 / (2.0 * np.pi * nu)
    n = np.arange(1, int(np.ceil(a + 12.0 * np.sqrt(a) + 30.0)) + 1)
    coefficients = (-1.0) ** n * special.ive(n, a)
    decay = np.exp(-nu * np.pi**2 * n[None, :] ** 2 * t[:, None])
    angle = np.pi * n[None, :] * x[:, None]
    cos_terms = coefficients * decay * np.cos(angle)
    phi = special.ive(0, a) + 2.0 * np.sum(cos_terms, axis=1)
    scale = special.ive(0, a) + 2.0 * np.sum(np.abs(cos_terms), axis=1)
    numerator = 4.0 * np.pi * nu * np.sum(n * coefficients * decay * np.sin(angle), axis=1)
    return numerator / phi, np.abs(phi) / scale


def _cole_hopf_hermite(x: np.ndarray, t: np.ndarray, nu: float, num_nodes: int) -> np.ndarray:
    # u = -E[sin(pi y) f(y)] / E[f(y)], y = x - sqrt(4 nu t) z, z ~ exp(-z^2)
    nodes, weights = np.polynomial.hermite.hermgauss(num_nodes)
    y = x[:, None] - np.sqrt(4.0 * nu * t)[:, None] * nodes[None, :]
    with np.errstate(divide="ignore"):
        log_f = np.log(weights)[None, :] - np.cos(np.pi * y) / (2.0 * np.pi * nu)
    f = np.exp(log_f - log_f.max(axis=1, keepdims=True))
    return -np.sum(np.sin(np.pi * y) * f, axis=1) / np.sum(f, axis=1)


def _hermite_reference(x: np.ndarray, t: np.ndarray, nu: float, tol: float) -> np.ndarray:
    """Gauss-Hermite quadrature, doubling the nodes per point until the change is below ``tol``."""
    value = _cole_hopf_hermite(x, t, nu, MIN_HERMITE_NODES)
    pending = np.ones(x.shape, dtype=bool)
    num_nodes, change = MIN_HERMITE_NODES, np.inf
    while num_nodes < MAX_HERMITE_NODES and np.any(pending):
        num_nodes *= 2
        index = np.flatnonzero(pending)
        refined = _cole_hopf_hermite(x[index], t[index], nu, num_nodes)
        difference = np.abs(refined - value[index])
        value[index] = refined
        pending[index[difference < tol]] = False
        change = float(np.max(difference))
    if np.any(pending):
        index = int(np.flatnonzero(pending)[0])
        logger.error(
            f"Cole-Hopf quadrature did not converge at (x={x[index]:.6g}, t={t[index]:.6g})"
            f" (last change {change:.3g} with {MAX_HERMITE_NODES} nodes)",
            exception=OracleError,
        )
    logger.debug(f"Cole-Hopf quadrature converged with at most {num_nodes} nodes")
    return value


def burgers_reference(x: Array, t: Array, nu: float, tol: float = 1e-10) -> np.ndarray:
    """
    Cole-Hopf solution for the ``-sin(pi x)`` initial condition.

    The heat-equation Fourier series is summed wherever it does not cancel
    catastrophically (always for ``nu`` of order one). Remaining points (steep
    fronts at small ``nu``) use Gauss-Hermite quadrature with the node count
    doubled until the value changes by less than ``tol``. ``t = 0`` returns the
    initial condition.
    """
    if not nu > 0.0:
        logger.error(f"Viscosity must be positive, got {nu}", exception=ValueError)
    x, t = np.broadcast_arrays(
        np.asarray(x, dtype=np.float64), np.asarray(t, dtype=np.float64)
    )
    shape = x.shape
    x, t = x.ravel(), t.ravel()
    if np.any(t < 0.0):
        logger.error("Time must be non-negative", exception=ValueError)

    result = -np.sin(np.pi * x)
    later = np.flatnonzero(t > 0.0)
    if later.size == 0:
        return result.reshape(shape)

    values, condition = _cole_hopf_series(x[later], t[later], nu)
    poor = condition < SERIES_MIN_CONDITION
    if np.any(poor):
        logger.debug(f"Using quadrature for {int(poor.sum())} ill-conditioned series points")
        values[poor] = _hermite_reference(x[later][poor], t[later][poor], nu, tol)
    if not np.all(np.isfinite(values)):
        logger.error("Cole-Hopf reference is not finite", exception=OracleError)
    result[later] = values
    return result.reshape(shape)


@dataclass(frozen=True)
class BurgersProblem(BaseJaxPytreeDataClass):
    """Burgers benchmark with a configurable viscosity (``nu = 1`` by default)."""

    viscosity: float = 1.0
    name: str = "burgers"

    def __post_init__(self) -> None:
        if not self.viscosity > 0.0:
            logger.error(
                f"Viscosity must be positive, got {self.viscosity}", exception=ValueError
            )

    @property
    def domain(self) -> Domain:
        return BURGERS_DOMAIN

    @property
    def num_outputs(self) -> int:
        return 1

    @property
    def component_names(self) -> Tuple[str, ...]:
        return ("u",)

    @property
    def coordinate_names(self) -> Tuple[str, str]:
        return ("x", "t")

    @property
    def is_time_dependent(self) -> bool:
        return True

    @property
    def has_reference(self) -> bool:
        return True

    def interior_residual(self, points: Array, bundle: DerivativeBundle) -> Array:
        residual = burgers_residual(
            u=bundle.value[..., 0],
            u_t=bundle.gradient[..., 0, 1],
            u_x=bundle.gradient[..., 0, 0],
            u_xx=bundle.hessian_diag[..., 0, 0],
            nu=self.viscosity,
        )
        return residual[..., None]

    def boundary_residual(
        self, points: Array, normals: Array, bundle: DerivativeBundle
    ) -> Array:
        return bundle.value

    def initial_residual(self, points: Array, bundle: DerivativeBundle) -> Array:
        return bundle.value + jnp.sin(math.pi * points[..., 0:1])

    def sample_collocation(
        self, num_interior: int, num_boundary: int, num_initial: int, seed: int
    ) -> CollocationPoints:
        """Uniform interior points, walls split equally, initial points at ``t = 0``."""
        interior_key, boundary_key, initial_key = jax.random.split(jax.random.PRNGKey(seed), 3)
        boundary, normals = sample_edges(
            boundary_key, self.domain, num_boundary, edges=((0, 0), (0, 1))
        )
        (lo, hi), _ = self.domain
        x0 = jax.random.uniform(
            initial_key, (num_initial,), dtype=default_dtype.FLOATX, minval=lo, maxval=hi
        )
        initial = jnp.stack([x0, jnp.zeros_like(x0)], axis=-1)
        return CollocationPoints(
            interior=sample_uniform(interior_key, self.domain, num_interior),
            boundary=boundary,
            boundary_normals=normals,
            initial=initial,
        )

    def reference(self, points: Array) -> Array:
        points = np.asarray(points, dtype=np.float64)
        values = burgers_reference(points[:, 0], points[:, 1], self.viscosity)
        return jnp.asarray(values[:, None], dtype=default_dtype.FLOATX)


register_jax_pytree_node(BurgersProblem)
