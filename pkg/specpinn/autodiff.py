"""
Input and parameter derivatives of dense networks.

Input derivatives are exact nested forward-mode products: along every input axis
``e_i`` the first derivative is ``jvp(u, e_i)`` and the second one is the
directional derivative of that product along the same axis. Mixed second
derivatives are never formed.

Parameter gradients are taken in reverse mode with respect to the canonical flat
parameter vector (see :mod:`specpinn.models.nn.parameters`), so every path through
the input derivatives above is differentiated as well.
"""

from __future__ import annotations

from functools import partial
from typing import Any, Callable, NamedTuple, Protocol, TypeVar, Union, runtime_checkable

import jax
import jax.numpy as jnp

from specpinn.logger import logger
from specpinn.types import Array


class DimensionMismatchError(ValueError):
    """Input point dimension does not match the network input dimension."""


class UnsupportedLossError(TypeError):
    """Loss is not a real scalar, differentiable function of the parameters."""


class DerivativeBundle(NamedTuple):
    """
    Network value together with its first and second derivatives along each input axis.

    Shapes carry a leading output component axis (``n_out``) and, for batches,
    a leading point axis:

    * value: ``(..., n_out)``
    * gradient: ``(..., n_out, d)``
    * hessian_diag: ``(..., n_out, d)``
    """

    value: Array
    gradient: Array
    hessian_diag: Array


def add_bundles(first: DerivativeBundle, second: DerivativeBundle, factor: Any = 1.0) -> DerivativeBundle:
    """Return ``first + factor * second`` (differentiation is linear)."""
    return DerivativeBundle(*(a + factor * b for a, b in zip(first, second)))


def zeros_like_bundle(bundle: DerivativeBundle) -> DerivativeBundle:
    return DerivativeBundle(*(jnp.zeros_like(array) for array in bundle))


def _as_vector_output(func: Callable[[Array], Array]) -> Callable[[Array], Array]:
    def wrapped(x: Array) -> Array:
        return jnp.atleast_1d(func(x))

    return wrapped


def _point_derivatives(func: Callable[[Array], Array], x: Array) -> DerivativeBundle:
    directions = jnp.eye(x.shape[-1], dtype=x.dtype)

    def along(direction: Array):
        def first(y: Array) -> Array:
            return jax.jvp(func, (y,), (direction,))[1]

        return jax.jvp(first, (x,), (direction,))

    first, second = jax.vmap(along)(directions)  # (d, n_out)
    return DerivativeBundle(
        value=func(x),
        gradient=jnp.moveaxis(first, 0, -1),
        hessian_diag=jnp.moveaxis(second, 0, -1),
    )


def _check_input_dimension(net: Any, x: Array) -> None:
    expected = getattr(net, "in_features", None)
    if x.ndim not in (1, 2):
        logger.error(
            f"Expected a point (d,) or a batch of points (N, d), got shape {x.shape}",
            exception=DimensionMismatchError,
        )
    if expected is not None and x.shape[-1] != expected:
        logger.error(
            f"Input dimension {x.shape[-1]} does not match network input dimension {expected}",
            exception=DimensionMismatchError,
        )


def eval_with_derivatives(net: Callable[[Array], Array], x: Array) -> DerivativeBundle:
    """
    Evaluate ``u(x)``, ``grad u(x)`` and ``diag(hess u(x))`` exactly.

    :param net: callable mapping a single point ``(d,)`` to ``(n_out,)`` (or a scalar);
        a `NetworkParams` instance also gets its input dimension checked
    :param x: a single point ``(d,)`` or a batch ``(N, d)``
    :return: derivative bundle (batched when ``x`` is a batch)
    """
    x = jnp.asarray(x)
    _check_input_dimension(net, x)
    func = _as_vector_output(net)
    if x.ndim == 1:
        return _point_derivatives(func, x)
    # per-point results are independent
    return jax.vmap(partial(_point_derivatives, func))(x)


@runtime_checkable
class FlatParameterized(Protocol):
    """Anything exposing its trainable parameters as one canonical flat vector."""

    def flatten(self) -> Array: ...

    def with_flat_parameters(self, vector: Array) -> Any: ...


P = TypeVar("P")


def loss_parameter_gradient(
    loss: Callable[[P], Array],
    net: Union[FlatParameterized, Array],
) -> Array:
    """
    Exact gradient of a scalar loss with respect to every trainable parameter.

    :param loss: scalar function of the network (or of the flat vector when ``net``
        is itself an array); it may contain input derivatives of the network
    :param net: a network exposing :class:`FlatParameterized`, or a flat parameter vector
    :return: gradient aligned with the canonical flattening order
    """
    if isinstance(net, FlatParameterized):
        vector = net.flatten()

        def flat_loss(parameters: Array) -> Array:
            return loss(net.with_flat_parameters(parameters))  # type: ignore

    else:
        vector = jnp.asarray(net)
        flat_loss = loss  # type: ignore

    try:
        gradient = jax.grad(flat_loss)(vector)
    except TypeError as error:
        logger.error(f"Unsupported loss: {error}", exception=UnsupportedLossError)
    return gradient
