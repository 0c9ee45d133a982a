"""
Canonical flattening of network parameters.

Layers are visited in network order. Within a layer the weights come before the
biases: ``kernel`` then ``bias`` for dense layers, and ``frequency`` (B), ``phase``
(b), ``amplitude`` (A) for Fourier-feature layers. Each array is laid out in
row-major order; dense kernels have shape ``(fan_in, fan_out)``.
"""

from typing import Callable, Dict, Iterator, List, Mapping, Tuple

import jax.numpy as jnp

from specpinn.logger import logger
from specpinn.types import Array

ModelParams = Dict[str, Dict[str, Array]]

_PARAMETER_ORDER: Tuple[str, ...] = ("kernel", "frequency", "bias", "phase", "amplitude")


def _layer_index(name: str) -> int:
    return int(name.rsplit("_", 1)[-1])


def canonical_leaves(params: Mapping[str, Mapping[str, Array]]) -> Iterator[Tuple[Tuple[str, str], Array]]:
    """Yield ``((layer, name), array)`` pairs in the canonical flattening order."""
    for layer in sorted(params, key=_layer_index):
        group = params[layer]
        unknown = set(group) - set(_PARAMETER_ORDER)
        if unknown:
            logger.error(
                f"Unknown parameters {sorted(unknown)} in layer '{layer}'",
                exception=KeyError,
            )
        for name in _PARAMETER_ORDER:
            if name in group:
                yield (layer, name), group[name]


def ravel_params(params: Mapping[str, Mapping[str, Array]]) -> Tuple[Array, Callable[[Array], ModelParams]]:
    """
    Flatten model parameters into a single vector.

    :return: flat vector and the function that rebuilds the nested parameters from it
    """
    leaves: List[Tuple[Tuple[str, str], Array]] = list(canonical_leaves(params))
    specs = [(path, array.shape, array.size) for path, array in leaves]
    vector = (
        jnp.concatenate([jnp.ravel(array) for _, array in leaves])
        if leaves
        else jnp.zeros((0,))
    )
    total = sum(size for _, _, size in specs)

    def unravel(flat: Array) -> ModelParams:
        if flat.shape != (total,):
            logger.error(
                f"Expected a flat parameter vector of length {total}, got shape {flat.shape}",
                exception=ValueError,
            )
        nested: ModelParams = {}
        offset = 0
        for (layer, name), shape, size in specs:
            nested.setdefault(layer, {})[name] = flat[offset : offset + size].reshape(shape)
            offset += size
        return nested

    return vector, unravel


def count_params(params: Mapping[str, Mapping[str, Array]]) -> int:
    return sum(int(array.size) for _, array in canonical_leaves(params))
