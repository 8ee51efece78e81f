"""Mirrored autoencoder: construction, forward passes and backpropagation."""

from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from clusternet.core.exceptions import ConfigError, DimensionError
from clusternet.core.seeding import substream
from clusternet.network.layers import (
    Activation,
    Conv2d,
    ConvTranspose2d,
    Dense,
    Layer,
)
from clusternet.network.parameters import (
    ForwardTrace,
    NetworkParameters,
    ParameterGradients,
)
from clusternet.network.spec import LayerKind, NetworkSpec, OutputActivation

Stage = Tuple[int, Optional[Tuple[int, int, int]]]

_OUTPUT_ACTIVATIONS = {
    OutputActivation.SIGMOID: Activation.SIGMOID,
    OutputActivation.LINEAR: Activation.LINEAR,
}


def _encoder_layers(spec: NetworkSpec) -> Tuple[list[Layer], list[Stage]]:
    chw = None
    if spec.image_shape is not None:
        height, width, channels = spec.image_shape
        chw = (channels, height, width)
    stages: list[Stage] = [(spec.input_dim, chw)]
    layers: list[Layer] = []
    for index, layer_spec in enumerate(spec.encoder_layers):
        size, chw = stages[-1]
        name = f"encoder.{index}"
        layer: Layer
        if layer_spec.kind == LayerKind.CONV:
            conv = Conv2d(
                name,
                in_shape=chw,  # type: ignore[arg-type]
                filters=layer_spec.filters,  # type: ignore[arg-type]
                kernel=layer_spec.kernel,
                stride=layer_spec.stride,
                padding=layer_spec.padding,
                activation=Activation.LEAKY_RELU,
                dropout=True,
                hwc_input=index == 0,
            )
            layer = conv
            stages.append((conv.out_size, conv.out_shape))
        else:
            layer = Dense(
                name,
                size,
                layer_spec.units,  # type: ignore[arg-type]
                Activation.LEAKY_RELU,
                dropout=True,
            )
            stages.append((layer.out_size, None))
        layers.append(layer)
    latent_activation = Activation.TANH if spec.latent_tanh else Activation.LINEAR
    layers.append(
        Dense(
            f"encoder.{len(spec.encoder_layers)}",
            stages[-1][0],
            spec.latent_dim,
            latent_activation,
        ),
    )
    return layers, stages


def _decoder_layers(spec: NetworkSpec, stages: list[Stage]) -> list[Layer]:
    depth = len(spec.encoder_layers)
    output_activation = _OUTPUT_ACTIVATIONS[spec.output_activation]
    if depth == 0:
        return [Dense("decoder.0", spec.latent_dim, spec.input_dim, output_activation)]

    top_size, top_chw = stages[depth]
    # dense layers feeding a feature map use tanh, like the encoder's latent layer
    top_activation = Activation.TANH if top_chw is not None else Activation.LEAKY_RELU
    layers: list[Layer] = [
        Dense("decoder.0", spec.latent_dim, top_size, top_activation, dropout=True),
    ]
    for position, stage in enumerate(range(depth, 0, -1), start=1):
        is_output = stage == 1
        activation = output_activation if is_output else Activation.LEAKY_RELU
        encoder_spec = spec.encoder_layers[stage - 1]
        (src_size, src_chw), (dst_size, dst_chw) = stages[stage], stages[stage - 1]
        name = f"decoder.{position}"
        if encoder_spec.kind == LayerKind.CONV:
            layers.append(
                ConvTranspose2d(
                    name,
                    in_shape=src_chw,  # type: ignore[arg-type]
                    out_shape=dst_chw,  # type: ignore[arg-type]
                    kernel=encoder_spec.kernel,
                    stride=encoder_spec.stride,
                    padding=encoder_spec.padding,
                    activation=activation,
                    dropout=not is_output,
                    hwc_output=is_output,
                ),
            )
        else:
            layers.append(
                Dense(name, src_size, dst_size, activation, dropout=not is_output),
            )
    return layers


@lru_cache(maxsize=32)
def build_layers(spec: NetworkSpec) -> Tuple[Tuple[Layer, ...], Tuple[Layer, ...]]:
    """Encoder and decoder layer objects for ``spec`` (cached per spec)."""
    encoder, stages = _encoder_layers(spec)
    return tuple(encoder), tuple(_decoder_layers(spec, stages))


def parameter_count(spec: NetworkSpec) -> Dict[str, int]:
    """Number of scalar parameters on each side."""
    encoder, decoder = build_layers(spec)
    return {
        side: sum(
            int(np.prod(layer.weight_shape)) + int(np.prod(layer.bias_shape))
            for layer in layers
        )
        for side, layers in (("encoder", encoder), ("decoder", decoder))
    }


def init_network(spec: NetworkSpec, seed: int) -> NetworkParameters:
    """
    Fresh parameters for ``spec``.

    Weights are fan-in scaled Gaussians drawn from the ``init`` sub-stream
    of ``seed``; biases are zero.
    """
    rng = substream(seed, "init")
    encoder, decoder = build_layers(spec)
    tensors: Dict[str, np.ndarray] = {}
    for layer in (*encoder, *decoder):
        tensors[layer.weight_key] = layer.init_weight(rng, spec.leaky_slope)
        tensors[layer.bias_key] = np.zeros(layer.bias_shape)
    return NetworkParameters(spec=spec, tensors=tensors)


def _run(
    params: NetworkParameters,
    layers: Tuple[Layer, ...],
    x: np.ndarray,
    side: str,
    training: bool,
    rng: Optional[np.random.Generator],
) -> Tuple[np.ndarray, ForwardTrace]:
    spec = params.spec
    rate = spec.dropout_rate if training else 0.0
    if rate > 0 and rng is None:
        raise ConfigError(f"{side} dropout in training mode needs a random generator")
    caches = []
    for layer in layers:
        x, cache = layer.forward(params.tensors, x, spec.leaky_slope, rate, rng)
        caches.append(cache)
    return x, ForwardTrace(side=side, caches=caches)


def _check_columns(batch: np.ndarray, expected: int, what: str) -> np.ndarray:
    batch = np.asarray(batch, dtype=np.float64)
    if batch.ndim != 2 or batch.shape[1] != expected:  # noqa: PLR2004
        raise DimensionError(
            f"{what} must have {expected} columns, got shape {batch.shape}",
        )
    return batch


def encode(
    params: NetworkParameters,
    batch: np.ndarray,
    training: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, ForwardTrace]:
    """
    Latents z = f(theta_e; x) for every row of ``batch``.

    Dropout is applied to hidden layers only when ``training`` is set,
    using masks drawn from ``rng``.

    :raises ConfigError: training with a non-zero dropout rate and no ``rng``.
    """
    batch = _check_columns(batch, params.spec.input_dim, "input batch")
    encoder, _ = build_layers(params.spec)
    return _run(params, encoder, batch, "encoder", training, rng)


def decode(
    params: NetworkParameters,
    latents: np.ndarray,
    training: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, ForwardTrace]:
    """Reconstructions g(theta_d; z), one row per latent row."""
    latents = _check_columns(latents, params.spec.latent_dim, "latent batch")
    _, decoder = build_layers(params.spec)
    return _run(params, decoder, latents, "decoder", training, rng)


def _backpropagate(
    params: NetworkParameters,
    layers: Tuple[Layer, ...],
    trace: ForwardTrace,
    grad: np.ndarray,
    grads: ParameterGradients,
) -> np.ndarray:
    if len(trace) != len(layers):
        raise DimensionError(
            f"{trace.side} trace has {len(trace)} layers, network has {len(layers)}",
        )
    for layer, cache in zip(reversed(layers), reversed(trace.caches)):
        grad, layer_grads = layer.backward(
            params.tensors,
            cache,
            grad,
            params.spec.leaky_slope,
        )
        grads.update(layer_grads)
    return grad


def backward(
    params: NetworkParameters,
    traces: Tuple[ForwardTrace, Optional[ForwardTrace]],
    output_gradients: Optional[np.ndarray],
    latent_gradients: Optional[np.ndarray],
) -> ParameterGradients:
    """
    Gradients of a composite loss w.r.t. every parameter tensor.

    ``output_gradients`` is dL/d(reconstruction) and flows through the
    decoder; ``latent_gradients`` is injected at the latent layer (cluster
    and pairwise terms) and added to what arrives from the decoder.

    :param traces: (encoder trace, decoder trace); the decoder trace may be
        None when ``output_gradients`` is None.
    """
    encoder_trace, decoder_trace = traces
    encoder, decoder = build_layers(params.spec)
    grads: ParameterGradients = {
        key: np.zeros_like(value) for key, value in params.tensors.items()
    }
    latent_shape = encoder_trace.caches[-1].outputs.shape
    grad_latent = np.zeros(latent_shape)
    if latent_gradients is not None:
        if latent_gradients.shape != latent_shape:
            raise DimensionError(
                f"latent gradients {latent_gradients.shape} != latents {latent_shape}",
            )
        grad_latent = grad_latent + latent_gradients
    if output_gradients is not None:
        if decoder_trace is None:
            raise DimensionError("output gradients given without a decoder trace")
        output_shape = decoder_trace.caches[-1].outputs.shape
        if output_gradients.shape != output_shape:
            raise DimensionError(
                f"output gradients {output_gradients.shape} != outputs {output_shape}",
            )
        grad_latent = grad_latent + _backpropagate(
            params,
            decoder,
            decoder_trace,
            output_gradients,
            grads,
        )
    _backpropagate(params, encoder, encoder_trace, grad_latent, grads)
    return grads
