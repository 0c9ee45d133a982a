from specpinn.models.nn import NetworkParams, NeuralNetworkModel

__all__ = [
    "NetworkParams",
    "NeuralNetworkModel",
]
