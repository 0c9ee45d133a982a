from __future__ import annotations

from abc import ABCMeta, abstractmethod
from typing import Mapping, Type

import jax.numpy as jnp

from specpinn.logger import logger
from specpinn.types import Array


def rms(values: Array) -> float:
    """Root mean square over every entry."""
    values = jnp.asarray(values)
    if values.size == 0:
        logger.error("RMS of an empty field is undefined", exception=ValueError)
    return float(jnp.sqrt(jnp.mean(values**2)))


class ErrorMetric(metaclass=ABCMeta):
    """A base error metric class; errors are computed per output component (last axis)."""

    @classmethod
    def create(cls, metric_type: str) -> ErrorMetric:
        """
        Create the given type of error metric.

        :param metric_type: L2
        :return: An instance of desired error metric
        """
        _map_error_metric: Mapping[str, Type[ErrorMetric]] = {
            "L2": RelativeL2,
        }
        try:
            error_metric = _map_error_metric[metric_type]()
        except KeyError:
            logger.error(f"Unknown error metric '{metric_type}'", exception=KeyError)
        return error_metric  # type: ignore

    @abstractmethod
    def __call__(self, prediction: Array, target: Array) -> Array: ...

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}()"


class RelativeL2(ErrorMetric):
    """
    ``||prediction - target||_2 / ||target||_2``.

    A component whose target RMS does not exceed ``zero_tol`` (zero up to
    round-off) falls back to the absolute norm.
    """

    def __init__(self, zero_tol: float = 1e-10) -> None:
        self.zero_tol = zero_tol

    def __call__(self, prediction: Array, target: Array) -> Array:
        error = jnp.linalg.norm(prediction - target, axis=0)
        norm = jnp.linalg.norm(target, axis=0)
        zero = jnp.sqrt(jnp.mean(target**2, axis=0)) <= self.zero_tol
        return jnp.where(zero, error, error / jnp.where(zero, 1.0, norm))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(zero_tol={self.zero_tol})"
