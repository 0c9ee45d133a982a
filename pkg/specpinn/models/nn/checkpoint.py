"""
Self-describing network checkpoints.

A checkpoint is one JSON header line followed by the parameters as little-endian
float64 values in the canonical flattening order::

    {"dims": [...], "first_layer_kind": "rff", "format": "specpinn-checkpoint", ...}\n
    <num_parameters * 8 bytes>
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import jax.numpy as jnp
import numpy as np

from specpinn.logger import logger
from specpinn.models.nn.model import NetworkParams, create_network

CHECKPOINT_FORMAT = "specpinn-checkpoint"
CHECKPOINT_VERSION = 1


class CheckpointError(ValueError):
    """Malformed checkpoint or checkpoint incompatible with the requested problem."""


def save_checkpoint(
    filename: Path,
    net: NetworkParams,
    stage: int = 0,
    epsilon: float = 1.0,
    problem: Optional[str] = None,
) -> None:
    """Write a network (and its stage metadata) to a checkpoint file."""
    hidden = net.model.hidden_layers
    header: Dict[str, Any] = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "dims": net.dims,
        "first_layer_kind": net.first_layer_kind,
        "num_features": net.model.num_features,
        "freeze_first_layer": net.model.freeze_first_layer,
        "activation": hidden[0][1] if hidden else "tanh",
        "seed": int(net.seed),
        "stage": int(stage),
        "epsilon": float(epsilon),
        "problem": problem,
        "num_parameters": net.num_parameters,
        "dtype": "<f8",
    }
    payload = np.asarray(net.flatten(), dtype="<f8").tobytes()
    file = Path(filename)
    logger.debug(f"Saving checkpoint into '{file}'")
    with open(file, "wb") as handle:
        handle.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
        handle.write(payload)


def load_checkpoint(filename: Path) -> Tuple[NetworkParams, Dict[str, Any]]:
    """Read a checkpoint and rebuild the network; returns ``(network, header)``."""
    file = Path(filename)
    logger.debug(f"Loading checkpoint from '{file}'")
    with open(file, "rb") as handle:
        raw_header = handle.readline()
        payload = handle.read()
    try:
        header = json.loads(raw_header.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError):
        logger.error(f"Unreadable checkpoint header in '{file}'", exception=CheckpointError)
    if header.get("format") != CHECKPOINT_FORMAT:
        logger.error(f"'{file}' is not a {CHECKPOINT_FORMAT} file", exception=CheckpointError)

    try:
        dims = header["dims"]
        kind = header["first_layer_kind"]
        hidden = dims[2:-1] if kind != "plain" else dims[1:-1]
        net = create_network(
            in_features=dims[0],
            out_features=dims[-1],
            hidden_layers=hidden,
            seed=header["seed"],
            activation=header["activation"],
            first_layer=kind,
            num_features=header["num_features"],
            freeze_first_layer=header["freeze_first_layer"],
        )
    except KeyError as error:
        logger.error(f"Checkpoint '{file}' misses header field {error}", exception=CheckpointError)
    vector = np.frombuffer(payload, dtype="<f8")
    if vector.size != header.get("num_parameters") or vector.size != net.num_parameters:
        logger.error(
            f"Checkpoint '{file}' holds {vector.size} parameters, expected {net.num_parameters}",
            exception=CheckpointError,
        )
    return net.with_flat_parameters(jnp.asarray(vector.astype(np.float64))), header
