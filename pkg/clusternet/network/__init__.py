"""Autoencoder with its own backpropagation and Adam optimizer."""

from clusternet.network.autoencoder import (
    backward,
    build_layers,
    decode,
    encode,
    init_network,
    parameter_count,
)
from clusternet.network.checkpoint import load_checkpoint, save_checkpoint
from clusternet.network.optimizer import adam_step
from clusternet.network.parameters import (
    AdamState,
    ForwardTrace,
    NetworkParameters,
    ParameterGradients,
)
from clusternet.network.spec import LayerKind, LayerSpec, NetworkSpec, OutputActivation

__all__ = [
    "AdamState",
    "ForwardTrace",
    "LayerKind",
    "LayerSpec",
    "NetworkParameters",
    "NetworkSpec",
    "OutputActivation",
    "ParameterGradients",
    "adam_step",
    "backward",
    "build_layers",
    "decode",
    "encode",
    "init_network",
    "load_checkpoint",
    "parameter_count",
    "save_checkpoint",
]
