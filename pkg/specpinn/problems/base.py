from __future__ import annotations

from typing import NamedTuple, Protocol, Sequence, Tuple

import jax
import jax.numpy as jnp

from specpinn.autodiff import DerivativeBundle
from specpinn.types import Array, Domain, default_dtype


class OracleError(RuntimeError):
    """Reference solution is unavailable or did not converge."""


class CollocationPoints(NamedTuple):
    """
    Point sets of a PINN loss.

    Boundary points come with their outward unit normals. Time-independent
    problems carry an empty ``(0, 2)`` initial set.
    """

    interior: Array
    boundary: Array
    boundary_normals: Array
    initial: Array

    @property
    def counts(self) -> Tuple[int, int, int]:
        return tuple(int(points.shape[0]) for points in (self.interior, self.boundary, self.initial))  # type: ignore


class ProblemInterface(Protocol):
    """A PDE on a rectangle with its condition residuals and an optional reference solution."""

    name: str

    @property
    def domain(self) -> Domain: ...

    @property
    def num_outputs(self) -> int: ...

    @property
    def component_names(self) -> Tuple[str, ...]: ...

    @property
    def is_time_dependent(self) -> bool: ...

    @property
    def has_reference(self) -> bool: ...

    def interior_residual(self, points: Array, bundle: DerivativeBundle) -> Array: ...

    def boundary_residual(
        self, points: Array, normals: Array, bundle: DerivativeBundle
    ) -> Array: ...

    def initial_residual(self, points: Array, bundle: DerivativeBundle) -> Array: ...

    def sample_collocation(
        self, num_interior: int, num_boundary: int, num_initial: int, seed: int
    ) -> CollocationPoints: ...

    def reference(self, points: Array) -> Array: ...


def sample_uniform(key: jax.Array, domain: Domain, num: int) -> Array:
    """Uniform random points inside a rectangle."""
    lo = jnp.array([bounds[0] for bounds in domain], dtype=default_dtype.FLOATX)
    hi = jnp.array([bounds[1] for bounds in domain], dtype=default_dtype.FLOATX)
    return jax.random.uniform(
        key, (num, 2), dtype=default_dtype.FLOATX, minval=lo, maxval=hi
    )


def sample_edges(
    key: jax.Array,
    domain: Domain,
    num: int,
    edges: Sequence[Tuple[int, int]],
) -> Tuple[Array, Array]:
    """
    Uniform random points on rectangle edges, split as equally as possible.

    :param edges: ``(axis, side)`` pairs; ``axis`` is held fixed at its lower
        (``side=0``) or upper (``side=1``) bound
    :return: points and outward unit normals
    """
    points, normals = list(), list()
    share, extra = divmod(num, len(edges))
    keys = jax.random.split(key, len(edges))
    for index, ((axis, side), edge_key) in enumerate(zip(edges, keys)):
        count = share + (1 if index < extra else 0)
        other = 1 - axis
        lo, hi = domain[other]
        free = jax.random.uniform(
            edge_key, (count,), dtype=default_dtype.FLOATX, minval=lo, maxval=hi
        )
        fixed = jnp.full((count,), domain[axis][side], dtype=default_dtype.FLOATX)
        edge = jnp.zeros((count, 2), dtype=default_dtype.FLOATX)
        edge = edge.at[:, axis].set(fixed).at[:, other].set(free)
        normal = jnp.zeros((count, 2), dtype=default_dtype.FLOATX)
        normal = normal.at[:, axis].set(1.0 if side == 1 else -1.0)
        points.append(edge)
        normals.append(normal)
    return jnp.concatenate(points), jnp.concatenate(normals)


def empty_points() -> Array:
    return jnp.zeros((0, 2), dtype=default_dtype.FLOATX)
