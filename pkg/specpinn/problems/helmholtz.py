"""
Plane-wave scattering by a dielectric disk (TMz polarization).

The complex field ``E_z = E_rz + i E_iz`` satisfies the homogeneous Helmholtz
equation ``lap E + k^2 eps_r(x, y) mu_r E = 0`` on ``[-1, 1]^2``, excited by the
standing wave ``E_inc = -cos(k x)``, with a first-order absorbing boundary
condition on the outer square. Time convention ``e^{+i n theta}``, ``H^(1)``:
outgoing waves satisfy ``d_n E - i k E = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import jax
import jax.numpy as jnp
import numpy as np

from specpinn.autodiff import DerivativeBundle
from specpinn.logger import logger
from specpinn.problems.base import (
    CollocationPoints,
    empty_points,
    sample_edges,
    sample_uniform,
)
from specpinn.pytree import BaseJaxPytreeDataClass, register_jax_pytree_node
from specpinn.specfun import bessel_deriv, bessel_j, bessel_second_deriv, hankel1
from specpinn.types import Array, Domain, default_dtype

SPEED_OF_LIGHT: float = 3.0e8
EPSILON_0: float = 8.8541878128e-12
MU_0: float = 1.0 / (EPSILON_0 * SPEED_OF_LIGHT**2)

HELMHOLTZ_DOMAIN: Domain = ((-1.0, 1.0), (-1.0, 1.0))
_ON_SET_TOLERANCE: float = 1e-12


class FieldPair(NamedTuple):
    """Real and imaginary parts of the complex field ``E_z``."""

    E_rz: Array
    E_iz: Array

    @classmethod
    def from_complex(cls, field) -> FieldPair:
        return cls(E_rz=np.real(field), E_iz=np.imag(field))


@dataclass(frozen=True)
class HelmholtzProblem(BaseJaxPytreeDataClass):
    """Dielectric disk of radius ``radius`` centred in ``[-1, 1]^2``."""

    frequency: float = 3.0e8
    eps_r: float = 1.0
    mu_r: float = 1.0
    radius: float = 0.25
    n_trunc: int = 30
    name: str = "helmholtz"

    def __post_init__(self) -> None:
        if not self.frequency > 0.0:
            logger.error(f"Frequency must be positive, got {self.frequency}", exception=ValueError)
        if self.eps_r < 1.0:
            logger.error(f"Relative permittivity must be >= 1, got {self.eps_r}", exception=ValueError)
        if self.mu_r != 1.0:
            logger.error("Only non-magnetic scatterers (mu_r = 1) are supported", exception=ValueError)
        if not 0.0 < self.radius < 1.0:
            logger.error(f"Disk radius must be in (0, 1), got {self.radius}", exception=ValueError)
        if self.n_trunc < 1:
            logger.error(f"Series truncation must be positive, got {self.n_trunc}", exception=ValueError)

    @property
    def angular_frequency(self) -> float:
        return 2.0 * math.pi * self.frequency

    @property
    def wavenumber(self) -> float:
        """Exterior wavenumber ``k = omega / c``."""
        return self.angular_frequency / SPEED_OF_LIGHT

    @property
    def interior_wavenumber(self) -> float:
        return self.wavenumber * math.sqrt(self.eps_r * self.mu_r)

    @property
    def domain(self) -> Domain:
        return HELMHOLTZ_DOMAIN

    @property
    def num_outputs(self) -> int:
        return 2

    @property
    def component_names(self) -> Tuple[str, ...]:
        return ("E_rz", "E_iz")

    @property
    def coordinate_names(self) -> Tuple[str, str]:
        return ("x", "y")

    @property
    def is_time_dependent(self) -> bool:
        return False

    @property
    def has_reference(self) -> bool:
        return True

    def interior_residual(self, points: Array, bundle: DerivativeBundle) -> Array:
        laplacian = jnp.sum(bundle.hessian_diag, axis=-1)
        return helmholtz_residual(bundle.value, laplacian, points[..., 0], points[..., 1], self)

    def boundary_residual(
        self, points: Array, normals: Array, bundle: DerivativeBundle
    ) -> Array:
        normal_derivative = jnp.sum(bundle.gradient * normals[..., None, :], axis=-1)
        return _abc_residual(bundle.value, normal_derivative, points[..., 0], normals[..., 0], self)

    def initial_residual(self, points: Array, bundle: DerivativeBundle) -> Array:
        return jnp.zeros(points.shape[:-1] + (0,), dtype=bundle.value.dtype)

    def sample_collocation(
        self, num_interior: int, num_boundary: int, num_initial: int, seed: int
    ) -> CollocationPoints:
        """Uniform interior points and the four walls sharing the boundary points equally."""
        interior_key, boundary_key = jax.random.split(jax.random.PRNGKey(seed))
        boundary, normals = sample_edges(
            boundary_key, self.domain, num_boundary, edges=((0, 0), (0, 1), (1, 0), (1, 1))
        )
        return CollocationPoints(
            interior=sample_uniform(interior_key, self.domain, num_interior),
            boundary=boundary,
            boundary_normals=normals,
            initial=empty_points(),
        )

    def reference(self, points: Array) -> Array:
        points = np.asarray(points, dtype=np.float64)
        fields = helmholtz_reference(points[:, 0], points[:, 1], self)
        return jnp.asarray(np.stack(fields, axis=-1), dtype=default_dtype.FLOATX)


register_jax_pytree_node(HelmholtzProblem)


def relative_permittivity(x: Array, y: Array, problem: HelmholtzProblem) -> Array:
    """``eps_r`` on the closed disk and 1 outside."""
    inside = x**2 + y**2 <= problem.radius**2
    return jnp.where(inside, problem.eps_r, 1.0)


def permittivity(x: Array, y: Array, problem: HelmholtzProblem) -> Array:
    """Absolute permittivity ``eps_0 eps_r`` inside the (closed) disk, ``eps_0`` outside."""
    return EPSILON_0 * relative_permittivity(x, y, problem)


def helmholtz_residual(
    fields: Array, laplacians: Array, x: Array, y: Array, problem: HelmholtzProblem
) -> Array:
    """
    ``lap E + omega^2 mu eps(x, y) E`` for both field components.

    :param fields: ``(..., 2)`` real and imaginary parts
    :param laplacians: ``(..., 2)`` their Laplacians
    """
    # omega^2 mu_0 eps_0 = k^2
    k2 = problem.wavenumber**2 * problem.mu_r * relative_permittivity(x, y, problem)
    return laplacians + k2[..., None] * fields


def _abc_residual(
    fields: Array,
    normal_derivatives: Array,
    x: Array,
    normal_x: Array,
    problem: HelmholtzProblem,
) -> Array:
    k = problem.wavenumber
    incident = -jnp.cos(k * x)
    incident_normal_derivative = normal_x * k * jnp.sin(k * x)
    real = normal_derivatives[..., 0] + k * fields[..., 1] - incident_normal_derivative
    imag = normal_derivatives[..., 1] - k * fields[..., 0] + k * incident
    return jnp.stack([real, imag], axis=-1)


def outward_normal(x: Array, y: Array) -> np.ndarray:
    """Outward unit normal on the square boundary (corners take the ``x`` wall)."""
    x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    on_x = np.abs(np.abs(x) - 1.0) <= _ON_SET_TOLERANCE
    on_y = np.abs(np.abs(y) - 1.0) <= _ON_SET_TOLERANCE
    if not np.all(on_x | on_y):
        index = int(np.argmin(on_x | on_y))
        logger.error(
            f"Point ({np.ravel(x)[index]:.6g}, {np.ravel(y)[index]:.6g}) is not on the boundary",
            exception=ValueError,
        )
    nx = np.where(on_x, np.sign(x), 0.0)
    ny = np.where(on_x, 0.0, np.sign(y))
    return np.stack([nx, ny], axis=-1)


def abc_residual(
    fields: Array,
    normal_derivatives: Array,
    x: Array,
    y: Array,
    problem: HelmholtzProblem,
) -> Array:
    """
    First-order absorbing boundary condition residual on the outer square.

    Real and imaginary parts of ``(d_n E - i k E) - (d_n E_inc - i k E_inc)``:
    ``(d_n E_rz + k E_iz) - (d_n E_inc_rz + k E_inc_iz)`` and
    ``(d_n E_iz - k E_rz) - (d_n E_inc_iz - k E_inc_rz)``.
    """
    normal = outward_normal(x, y)
    return _abc_residual(
        jnp.asarray(fields), jnp.asarray(normal_derivatives), jnp.asarray(x), normal[..., 0], problem
    )


def _orders(problem: HelmholtzProblem) -> np.ndarray:
    return np.arange(-problem.n_trunc, problem.n_trunc + 1)


def mie_coefficients(problem: HelmholtzProblem) -> Tuple[np.ndarray, np.ndarray]:
    """
    Scattering coefficients ``alpha_n`` (exterior) and ``beta_n`` (interior)
    for ``|n| <= n_trunc`` from continuity of ``E`` and ``d_r E / mu`` at ``r = R``.
    """
    n = _orders(problem)
    kR = problem.wavenumber * problem.radius
    kiR = problem.interior_wavenumber * problem.radius
    eta = math.sqrt(problem.eps_r * problem.mu_r) / problem.mu_r

    J, dJ = bessel_j(n, kR), bessel_deriv("J", n, kR)
    Ji, dJi = bessel_j(n, kiR), bessel_deriv("J", n, kiR)
    H, dH = hankel1(n, kR), bessel_deriv("H1", n, kR)

    denominator = Ji * dH - eta * dJi * H
    alpha = (eta * dJi * J - Ji * dJ) / denominator
    # J H' - J' H = 2i / (pi kR)
    beta = (2j / (math.pi * kR)) / denominator
    return alpha, beta


def _mie_terms(r: np.ndarray, theta: np.ndarray, problem: HelmholtzProblem, derivative: int):
    n = _orders(problem)
    alpha, beta = mie_coefficients(problem)
    k, ki = problem.wavenumber, problem.interior_wavenumber
    r = np.asarray(r, dtype=np.float64)[..., None]
    theta = np.asarray(theta, dtype=np.float64)[..., None]
    inside = r <= problem.radius
    # r = 0 only ever appears inside the disk
    r_out = np.where(inside, 2.0 * problem.radius, r)

    if derivative == 0:
        exterior = bessel_j(n, k * r_out) + alpha * hankel1(n, k * r_out)
        interior = beta * bessel_j(n, ki * r)
    elif derivative == 1:
        exterior = k * (bessel_deriv("J", n, k * r_out) + alpha * bessel_deriv("H1", n, k * r_out))
        interior = ki * beta * bessel_deriv("J", n, ki * r)
    else:
        exterior = k**2 * (
            bessel_second_deriv("J", n, k * r_out) + alpha * bessel_second_deriv("H1", n, k * r_out)
        )
        interior = ki**2 * beta * bessel_second_deriv("J", n, ki * r)
    radial = np.where(inside, interior, exterior)
    return n, radial, (1j**n) * np.exp(1j * n * theta)


def mie_field(r, theta, problem: HelmholtzProblem) -> np.ndarray:
    """Complex total field for the incident plane wave ``exp(i k x)``."""
    _, radial, angular = _mie_terms(r, theta, problem, derivative=0)
    return np.sum(radial * angular, axis=-1)


def mie_solution(r, theta, problem: HelmholtzProblem) -> FieldPair:
    """
    Truncated cylindrical-harmonic series of the field scattered from the
    incident plane wave ``exp(i k x)``; real and imaginary parts.
    """
    return FieldPair.from_complex(mie_field(r, theta, problem))


def mie_laplacian(r, theta, problem: HelmholtzProblem) -> FieldPair:
    """
    Laplacian of :func:`mie_solution` from analytic Bessel derivatives:
    ``R'' + R'/r - n^2 R / r^2`` term by term (``r > 0``).
    """
    n, radial, angular = _mie_terms(r, theta, problem, derivative=0)
    _, first, _ = _mie_terms(r, theta, problem, derivative=1)
    _, second, _ = _mie_terms(r, theta, problem, derivative=2)
    r = np.asarray(r, dtype=np.float64)[..., None]
    laplacian = np.sum((second + first / r - (n / r) ** 2 * radial) * angular, axis=-1)
    return FieldPair.from_complex(laplacian)


def helmholtz_reference(x, y, problem: HelmholtzProblem) -> FieldPair:
    """
    Reference total field for the excitation ``-cos(k x) = -(e^{ikx} + e^{-ikx}) / 2``.

    The ``e^{-ikx}`` wave is the ``e^{ikx}`` problem rotated by ``pi``.
    """
    x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    r, theta = np.hypot(x, y), np.arctan2(y, x)
    field = -0.5 * (mie_field(r, theta, problem) + mie_field(r, theta + np.pi, problem))
    return FieldPair.from_complex(field)
