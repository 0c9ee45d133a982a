"""
Stage network construction.

Stage 0 of every method is a plain Xavier network. Correction stages are built
by the method's initializer from the residual fields of the current composite:

* ``si_mspinn``: spectral embedding layer seeded with the dominant DFT modes
* ``rff_mspinn``: random Fourier features sampled from the normalized PSD
* ``msnn``: plain network with the first layer scaled by ``kappa = 2 pi f_d``
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Mapping, Protocol, Tuple, Type

import jax
import numpy as np

from specpinn.logger import logger
from specpinn.models.nn.model import NetworkParams, apply_scale_factor, create_network
from specpinn.models.nn.settings import InitConfig
from specpinn.multistage.metrics import rms
from specpinn.spectral.grid import GridField
from specpinn.spectral.modes import extract_top_modes
from specpinn.spectral.sampling import (
    DegenerateResidualError,
    build_rff_layer,
    normalize_psd,
    sample_frequencies,
    uniform_distribution,
)
from specpinn.spectral.transform import combine_psd, dft2, dominant_frequency, psd

# purposes of derived seeds
NETWORK_SEED, COLLOCATION_SEED, FREQUENCY_SEED, PHASE_SEED = range(4)


def derive_seed(master_seed: int, stage: int, purpose: int) -> int:
    """Independent integer seed per (stage, purpose); depends on nothing else."""
    key = jax.random.fold_in(jax.random.fold_in(jax.random.PRNGKey(master_seed), stage), purpose)
    return int(jax.random.randint(key, (), 0, np.iinfo(np.int32).max))


class StageInitializerInterface(Protocol):
    """Build the network of a correction stage from the residual fields."""

    def __call__(
        self,
        residual: List[GridField],
        cfg: InitConfig,
        in_features: int,
        out_features: int,
        master_seed: int,
        stage: int,
    ) -> Tuple[NetworkParams, Dict[str, Any]]: ...


def _network_seed(cfg: InitConfig, master_seed: int, stage: int) -> int:
    return derive_seed(cfg.seed if cfg.seed is not None else master_seed, stage, NETWORK_SEED)


def plain_network(
    cfg: InitConfig, in_features: int, out_features: int, master_seed: int, stage: int
) -> NetworkParams:
    """Xavier network of ``cfg.depth`` dense layers."""
    return create_network(
        in_features=in_features,
        out_features=out_features,
        hidden_layers=cfg.hidden_layers,
        seed=_network_seed(cfg, master_seed, stage),
        activation=cfg.activation,
    )


class SpectralEmbeddingInitializer:
    """First layer ``A cos(B x + b)`` from the top ``n_f`` modes of the dominant component."""

    def __call__(self, residual, cfg, in_features, out_features, master_seed, stage):
        component = int(np.argmax([rms(field.values) for field in residual]))
        modes = extract_top_modes(dft2(residual[component]), cfg.num_features)
        net = create_network(
            in_features=in_features,
            out_features=out_features,
            hidden_layers=cfg.hidden_layers,
            seed=_network_seed(cfg, master_seed, stage),
            activation=cfg.activation,
            first_layer="spectral_embedding",
            num_features=cfg.num_features,
            freeze_first_layer=cfg.freeze_first_layer,
        )
        net = net.with_first_layer(
            frequency=modes.frequencies, phase=modes.phases, amplitude=modes.amplitudes
        )
        logger.info(
            f"Stage {stage}: spectral embedding from component {component},"
            f" leading mode index {modes.indices[0].tolist()}"
        )
        info = {
            "component": component,
            "mode_indices": np.asarray(modes.indices).tolist(),
            "frequencies": np.asarray(modes.frequencies).tolist(),
            "amplitudes": np.asarray(modes.amplitudes).tolist(),
            "phases": np.asarray(modes.phases).tolist(),
            "scale": modes.scale,
        }
        return net, info


class RandomFourierInitializer:
    """First layer ``cos(2 pi B x + b)`` with ``m`` frequencies drawn from the residual PSD."""

    def __call__(self, residual, cfg, in_features, out_features, master_seed, stage):
        power = combine_psd(*(psd(dft2(field)) for field in residual))
        try:
            distribution = normalize_psd(power)
        except DegenerateResidualError:
            logger.warning(f"Stage {stage}: residual PSD is zero, sampling frequencies uniformly")
            distribution = uniform_distribution(power.domain, power.values.shape)
        frequencies = sample_frequencies(
            distribution, cfg.num_features, derive_seed(master_seed, stage, FREQUENCY_SEED)
        )
        B, b = build_rff_layer(frequencies, derive_seed(master_seed, stage, PHASE_SEED))
        net = create_network(
            in_features=in_features,
            out_features=out_features,
            hidden_layers=cfg.hidden_layers,
            seed=_network_seed(cfg, master_seed, stage),
            activation=cfg.activation,
            first_layer="rff",
            num_features=cfg.num_features,
            freeze_first_layer=cfg.freeze_first_layer,
        )
        net = net.with_first_layer(frequency=B, phase=b)
        logger.info(f"Stage {stage}: sampled {cfg.num_features} RFF frequencies")
        return net, {"frequencies": np.asarray(B).tolist()}


def scale_factor(power: GridField, cfg: InitConfig) -> Tuple[float, float]:
    """``kappa = 2 pi f_d`` clamped to the configured bounds (or the fixed value)."""
    f_d = dominant_frequency(power)
    if cfg.scale_factor is not None:
        return float(cfg.scale_factor), f_d
    low, high = cfg.scale_factor_bounds
    return float(np.clip(2.0 * math.pi * f_d, low, high)), f_d


class ScaledPlainInitializer:
    """Plain Xavier network whose first dense layer is multiplied by ``kappa``."""

    def __call__(self, residual, cfg, in_features, out_features, master_seed, stage):
        power = combine_psd(*(psd(dft2(field)) for field in residual))
        kappa, f_d = scale_factor(power, cfg)
        net = apply_scale_factor(
            plain_network(cfg, in_features, out_features, master_seed, stage), kappa
        )
        logger.info(f"Stage {stage}: dominant frequency {f_d:.4g}, scale factor {kappa:.4g}")
        return net, {"kappa": kappa, "dominant_frequency": f_d}


def create_initializer(method: str) -> StageInitializerInterface:
    """Correction-stage initializer of a multistage method."""
    _map_initializer: Mapping[str, Type] = {
        "si_mspinn": SpectralEmbeddingInitializer,
        "rff_mspinn": RandomFourierInitializer,
        "msnn": ScaledPlainInitializer,
    }
    try:
        initializer = _map_initializer[method]()
    except KeyError:
        logger.error(f"Method '{method}' has no correction stages", exception=KeyError)
    return initializer  # type: ignore
