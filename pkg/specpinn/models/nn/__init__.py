from specpinn.models.nn.checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from specpinn.models.nn.embedding import rff_forward, spectral_embedding_forward
from specpinn.models.nn.initializer import UniformInitializer
from specpinn.models.nn.model import (
    NetworkParams,
    NeuralNetworkModel,
    apply_scale_factor,
    create_network,
    xavier_init,
)
from specpinn.models.nn.settings import InitConfig

__all__ = [
    "CheckpointError",
    "InitConfig",
    "NetworkParams",
    "NeuralNetworkModel",
    "UniformInitializer",
    "apply_scale_factor",
    "create_network",
    "load_checkpoint",
    "rff_forward",
    "save_checkpoint",
    "spectral_embedding_forward",
    "xavier_init",
]
