from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, List, Literal, Sequence, Tuple

import jax
import jax.numpy as jnp
from flax import linen as nn
from flax.core import unfreeze

from specpinn.logger import logger
from specpinn.models.nn.activation import _activation_function_map
from specpinn.models.nn.embedding import FourierFeatureLayer
from specpinn.models.nn.initializer import xavier_uniform
from specpinn.models.nn.parameters import ModelParams, count_params, ravel_params
from specpinn.types import Array, Dtype, default_dtype

FirstLayerKind = Literal["plain", "spectral_embedding", "rff"]


class NeuralNetworkModel(nn.Module):
    """
    Fully connected network with an optional cosine first layer.

    The hidden stack is ``hidden_layers`` dense layers followed by a dense output
    layer. For ``spectral_embedding`` and ``rff`` kinds a
    :class:`FourierFeatureLayer` with ``num_features`` outputs is prepended.
    """

    hidden_layers: Tuple[Tuple[int, str], ...]
    output_layer: Tuple[int, str] = (1, "identity")
    first_layer: FirstLayerKind = "plain"
    num_features: int = 0
    freeze_first_layer: bool = False
    params_dtype: Dtype = field(default_factory=lambda: default_dtype.FLOATX)
    kernel_initializer: Callable = xavier_uniform()

    def setup(self) -> None:
        """Initialize neural network model."""
        self.layers = self.create_network()

    def create_layer(self, features: int) -> nn.Dense:
        """Create a dense layer with Xavier weights and zero biases."""
        return nn.Dense(
            features,
            param_dtype=self.params_dtype,
            kernel_init=self.kernel_initializer,
            bias_init=nn.initializers.zeros,
        )

    def create_network(self) -> List:
        """Create a neural network as stack of dense layers and activation functions."""
        layers: List = list()
        if self.first_layer != "plain":
            layers.append(
                FourierFeatureLayer(
                    num_features=self.num_features,
                    kind=self.first_layer,
                    trainable=not self.freeze_first_layer,
                    params_dtype=self.params_dtype,
                )
            )
        for out_size, af_type in self.hidden_layers:
            layers.append(self.create_layer(out_size))
            layers.append(_activation_function_map[af_type])
        layers.append(self.create_layer(self.output_layer[0]))
        layers.append(_activation_function_map[self.output_layer[1]])
        return layers

    def __call__(self, inputs: Array) -> Array:
        x = inputs
        for layer in self.layers:
            x = layer(x)
        return x

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(first_layer={self.first_layer}"
            f", num_features={self.num_features}"
            f", hidden_layers={self.hidden_layers})"
        )


@dataclass(frozen=True, eq=False)
class NetworkParams:
    """
    A network architecture bound to its trainable parameters.

    Instances are immutable; optimizers produce new instances through
    :meth:`with_flat_parameters`.
    """

    model: NeuralNetworkModel
    params: ModelParams = field(repr=False)
    in_features: int
    seed: int = 0

    def __call__(self, x: Array) -> Array:
        return self.model.apply({"params": self.params}, x)

    @property
    def first_layer_kind(self) -> FirstLayerKind:
        return self.model.first_layer

    @property
    def out_features(self) -> int:
        return self.model.output_layer[0]

    @property
    def dims(self) -> List[int]:
        """Layer widths from the input to the output (feature layer included)."""
        dims = [self.in_features]
        if self.first_layer_kind != "plain":
            dims.append(self.model.num_features)
        dims.extend(size for size, _ in self.model.hidden_layers)
        dims.append(self.out_features)
        return dims

    @property
    def num_parameters(self) -> int:
        return count_params(self.params)

    @property
    def first_layer_name(self) -> str:
        return min(self.params, key=lambda name: int(name.rsplit("_", 1)[-1]))

    def flatten(self) -> Array:
        """Parameters as one vector in the canonical flattening order."""
        return ravel_params(self.params)[0]

    def with_flat_parameters(self, vector: Array) -> NetworkParams:
        _, unravel = ravel_params(self.params)
        return replace(self, params=unravel(jnp.asarray(vector)))

    def with_first_layer(self, **arrays: Array) -> NetworkParams:
        """Return a copy with first-layer parameters (e.g. ``frequency``) replaced."""
        name = self.first_layer_name
        layer = dict(self.params[name])
        for key, value in arrays.items():
            if key not in layer:
                logger.error(f"First layer has no parameter '{key}'", exception=KeyError)
            value = jnp.asarray(value, dtype=layer[key].dtype)
            if value.shape != layer[key].shape:
                logger.error(
                    f"Parameter '{key}' expects shape {layer[key].shape}, got {value.shape}",
                    exception=ValueError,
                )
            layer[key] = value
        params = dict(self.params)
        params[name] = layer
        return replace(self, params=params)


def create_network(
    in_features: int,
    out_features: int,
    hidden_layers: Sequence[int],
    seed: int,
    activation: str = "tanh",
    first_layer: FirstLayerKind = "plain",
    num_features: int = 0,
    freeze_first_layer: bool = False,
) -> NetworkParams:
    """Build a network and initialize it (Xavier dense layers, zero biases) from an integer seed."""
    if first_layer != "plain" and num_features < 1:
        logger.error(
            f"A '{first_layer}' first layer needs at least one feature",
            exception=ValueError,
        )
    if activation not in _activation_function_map:
        logger.error(f"Unknown activation function '{activation}'", exception=KeyError)
    model = NeuralNetworkModel(
        hidden_layers=tuple((int(width), activation) for width in hidden_layers),
        output_layer=(int(out_features), "identity"),
        first_layer=first_layer,
        num_features=int(num_features) if first_layer != "plain" else 0,
        freeze_first_layer=freeze_first_layer,
    )
    variables = model.init(
        jax.random.PRNGKey(seed),
        jnp.zeros((in_features,), dtype=default_dtype.FLOATX),
    )
    params = jax.tree.map(jnp.asarray, unfreeze(variables["params"]))
    return NetworkParams(model=model, params=params, in_features=in_features, seed=seed)


def xavier_init(dims: Sequence[int], seed: int, activation: str = "tanh") -> NetworkParams:
    """
    Plain network with Xavier-uniform weights and zero biases.

    :param dims: layer widths from input to output, e.g. ``[2, 20, 20, 20, 1]``
    :param seed: integer seed; identical seeds give bit-identical parameters
    """
    dims = list(dims)
    if len(dims) < 2 or any(int(width) < 1 for width in dims):
        logger.error(f"Invalid layer dimensions {dims}", exception=ValueError)
    return create_network(
        in_features=dims[0],
        out_features=dims[-1],
        hidden_layers=dims[1:-1],
        seed=seed,
        activation=activation,
    )


def apply_scale_factor(net: NetworkParams, kappa: float) -> NetworkParams:
    """Multiply the first dense layer weights by ``kappa`` (frequency adaptation)."""
    if not kappa > 0.0:
        logger.error(f"Scale factor must be positive, got {kappa}", exception=ValueError)
    if net.first_layer_kind != "plain":
        logger.error(
            f"Scale factor applies to a plain first layer, got '{net.first_layer_kind}'",
            exception=ValueError,
        )
    kernel = net.params[net.first_layer_name]["kernel"]
    return net.with_first_layer(kernel=kappa * kernel)
