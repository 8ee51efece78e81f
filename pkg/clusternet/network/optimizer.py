"""Adam with bias correction."""

from typing import Tuple

import numpy as np

from clusternet.core.constants import Defaults
from clusternet.core.exceptions import NumericError
from clusternet.network.parameters import (
    AdamState,
    NetworkParameters,
    ParameterGradients,
)


def _layer_index(key: str) -> str:
    side, index, _ = key.split(".")
    return f"{side} layer {index}"


def adam_step(
    params: NetworkParameters,
    gradients: ParameterGradients,
    lr: float = Defaults.LEARNING_RATE,
    betas: Tuple[float, float] = Defaults.ADAM_BETAS,
    eps: float = Defaults.ADAM_EPSILON,
) -> NetworkParameters:
    """
    One Adam update; returns new parameters and leaves ``params`` untouched.

    :raises NumericError: a gradient or an updated tensor is not finite;
        the message names the layer.
    """
    beta1, beta2 = betas
    for key, grad in gradients.items():
        if not np.all(np.isfinite(grad)):
            raise NumericError(f"non-finite gradient in {_layer_index(key)} ({key})")

    step = params.adam.step + 1
    # bias corrections computed once per step
    step_size = lr / (1.0 - beta1**step)
    correction2 = 1.0 - beta2**step

    tensors, first, second = {}, {}, {}
    for key, value in params.tensors.items():
        grad = gradients.get(key)
        if grad is None:
            grad = np.zeros_like(value)
        m = params.adam.first_moment.get(key, np.zeros_like(value))
        v = params.adam.second_moment.get(key, np.zeros_like(value))
        m = beta1 * m + (1.0 - beta1) * grad
        v = beta2 * v + (1.0 - beta2) * (grad * grad)
        updated = value - step_size * m / (np.sqrt(v / correction2) + eps)
        if not np.all(np.isfinite(updated)):
            raise NumericError(f"non-finite parameters in {_layer_index(key)} ({key})")
        tensors[key], first[key], second[key] = updated, m, v

    return NetworkParameters(
        spec=params.spec,
        tensors=tensors,
        adam=AdamState(first_moment=first, second_moment=second, step=step),
    )
