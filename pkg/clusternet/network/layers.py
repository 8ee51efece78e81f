"""Fixed-topology layers with hand-written forward and backward passes."""

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.special import expit

from clusternet.core.exceptions import ConfigError

Tensors = Dict[str, np.ndarray]
ChwShape = Tuple[int, int, int]


class Activation(str, enum.Enum):
    """Element-wise activations."""

    LEAKY_RELU = "leaky_relu"
    TANH = "tanh"
    SIGMOID = "sigmoid"
    LINEAR = "linear"


def activate(kind: Activation, z: np.ndarray, slope: float) -> np.ndarray:
    """Apply ``kind`` to pre-activations ``z``."""
    if kind == Activation.LEAKY_RELU:
        return np.where(z > 0, z, slope * z)
    if kind == Activation.TANH:
        return np.tanh(z)
    if kind == Activation.SIGMOID:
        return expit(z)
    return z


def activation_backward(
    kind: Activation,
    z: np.ndarray,
    a: np.ndarray,
    grad_a: np.ndarray,
    slope: float,
) -> np.ndarray:
    """Gradient w.r.t. ``z`` given the gradient w.r.t. ``a = act(z)``."""
    if kind == Activation.LEAKY_RELU:
        return grad_a * np.where(z > 0, 1.0, slope)
    if kind == Activation.TANH:
        return grad_a * (1.0 - a * a)
    if kind == Activation.SIGMOID:
        return grad_a * a * (1.0 - a)
    return grad_a


@dataclass
class LayerCache:
    """What one layer's backward pass needs from its forward pass."""

    inputs: np.ndarray
    pre_activation: np.ndarray
    outputs: np.ndarray
    dropout_mask: Optional[np.ndarray] = None


class Layer(ABC):
    """
    Affine map followed by an activation and optional dropout.

    Activations between layers are always (N, features) matrices;
    spatial layers reshape internally.
    """

    def __init__(self, name: str, activation: Activation, dropout: bool) -> None:
        self.name = name
        self.activation = activation
        self.dropout = dropout

    @property
    def weight_key(self) -> str:
        """Parameter key of the weight tensor."""
        return f"{self.name}.weight"

    @property
    def bias_key(self) -> str:
        """Parameter key of the bias vector."""
        return f"{self.name}.bias"

    @property
    @abstractmethod
    def in_size(self) -> int:
        """Flattened input width."""

    @property
    @abstractmethod
    def out_size(self) -> int:
        """Flattened output width."""

    @property
    @abstractmethod
    def weight_shape(self) -> Tuple[int, ...]:
        """Shape of the weight tensor."""

    @property
    @abstractmethod
    def bias_shape(self) -> Tuple[int, ...]:
        """Shape of the bias vector."""

    @property
    @abstractmethod
    def fan_in(self) -> int:
        """Inputs feeding one output unit."""

    @abstractmethod
    def affine(self, tensors: Tensors, x: np.ndarray) -> np.ndarray:
        """Pre-activations for inputs ``x``."""

    @abstractmethod
    def affine_backward(
        self,
        tensors: Tensors,
        x: np.ndarray,
        grad_z: np.ndarray,
    ) -> Tuple[np.ndarray, Tensors]:
        """Gradients w.r.t. the inputs and the layer's parameters."""

    def init_weight(self, rng: np.random.Generator, slope: float) -> np.ndarray:
        """Fan-in scaled Gaussian (He gain for leaky ReLU, LeCun otherwise)."""
        gain = 1.0
        if self.activation == Activation.LEAKY_RELU:
            gain = np.sqrt(2.0 / (1.0 + slope**2))
        return rng.normal(0.0, gain / np.sqrt(self.fan_in), size=self.weight_shape)

    def forward(
        self,
        tensors: Tensors,
        x: np.ndarray,
        slope: float,
        dropout_rate: float,
        rng: Optional[np.random.Generator],
    ) -> Tuple[np.ndarray, LayerCache]:
        """Run the layer; dropout only when ``dropout_rate`` > 0 and ``rng`` given."""
        z = self.affine(tensors, x)
        a = activate(self.activation, z, slope)
        mask = None
        if self.dropout and dropout_rate > 0 and rng is not None:
            mask = (rng.random(a.shape) >= dropout_rate) / (1.0 - dropout_rate)
            out = a * mask
        else:
            out = a
        return out, LayerCache(
            inputs=x,
            pre_activation=z,
            outputs=a,
            dropout_mask=mask,
        )

    def backward(
        self,
        tensors: Tensors,
        cache: LayerCache,
        grad_out: np.ndarray,
        slope: float,
    ) -> Tuple[np.ndarray, Tensors]:
        """Back-propagate ``grad_out`` through dropout, activation and affine map."""
        grad_a = grad_out
        if cache.dropout_mask is not None:
            grad_a = grad_out * cache.dropout_mask
        grad_z = activation_backward(
            self.activation,
            cache.pre_activation,
            cache.outputs,
            grad_a,
            slope,
        )
        return self.affine_backward(tensors, cache.inputs, grad_z)


class Dense(Layer):
    """Fully connected layer, weight shape (out, in)."""

    def __init__(
        self,
        name: str,
        in_features: int,
        out_features: int,
        activation: Activation,
        dropout: bool = False,
    ) -> None:
        super().__init__(name, activation, dropout)
        self.in_features = in_features
        self.out_features = out_features

    @property
    def in_size(self) -> int:
        return self.in_features

    @property
    def out_size(self) -> int:
        return self.out_features

    @property
    def weight_shape(self) -> Tuple[int, ...]:
        return (self.out_features, self.in_features)

    @property
    def bias_shape(self) -> Tuple[int, ...]:
        return (self.out_features,)

    @property
    def fan_in(self) -> int:
        return self.in_features

    def affine(self, tensors: Tensors, x: np.ndarray) -> np.ndarray:
        return x @ tensors[self.weight_key].T + tensors[self.bias_key]

    def affine_backward(
        self,
        tensors: Tensors,
        x: np.ndarray,
        grad_z: np.ndarray,
    ) -> Tuple[np.ndarray, Tensors]:
        grads = {
            self.weight_key: grad_z.T @ x,
            self.bias_key: grad_z.sum(axis=0),
        }
        return grad_z @ tensors[self.weight_key], grads


def _to_nchw(x: np.ndarray, shape: ChwShape, hwc: bool) -> np.ndarray:
    channels, height, width = shape
    if hwc:
        return x.reshape(-1, height, width, channels).transpose(0, 3, 1, 2)
    return x.reshape(-1, channels, height, width)


def _pad(x: np.ndarray, padding: int) -> np.ndarray:
    return np.pad(x, ((0, 0), (0, 0), (padding, padding), (padding, padding)))


def _from_nchw(y: np.ndarray, hwc: bool) -> np.ndarray:
    if hwc:
        y = y.transpose(0, 2, 3, 1)
    return np.ascontiguousarray(y).reshape(y.shape[0], -1)


class Conv2d(Layer):
    """
    Strided 2-D convolution, weight shape (filters, channels, k, k).

    ``hwc_input`` marks the first layer, whose input rows are flattened
    (H, W, C) images rather than (C, H, W) feature maps.
    """

    def __init__(
        self,
        name: str,
        in_shape: ChwShape,
        filters: int,
        kernel: int,
        stride: int,
        padding: int,
        activation: Activation,
        dropout: bool = False,
        hwc_input: bool = False,
    ) -> None:
        super().__init__(name, activation, dropout)
        self.in_shape = in_shape
        self.filters = filters
        self.kernel = kernel
        self.stride = stride
        self.padding = padding
        self.hwc_input = hwc_input
        _, height, width = in_shape
        self.out_shape: ChwShape = (
            filters,
            (height + 2 * padding - kernel) // stride + 1,
            (width + 2 * padding - kernel) // stride + 1,
        )

    @property
    def in_size(self) -> int:
        return int(np.prod(self.in_shape))

    @property
    def out_size(self) -> int:
        return int(np.prod(self.out_shape))

    @property
    def weight_shape(self) -> Tuple[int, ...]:
        return (self.filters, self.in_shape[0], self.kernel, self.kernel)

    @property
    def bias_shape(self) -> Tuple[int, ...]:
        return (self.filters,)

    @property
    def fan_in(self) -> int:
        return self.in_shape[0] * self.kernel * self.kernel

    def _taps(self) -> list[Tuple[int, int, slice, slice]]:
        _, out_h, out_w = self.out_shape
        s = self.stride
        return [
            (i, j, slice(i, i + s * out_h, s), slice(j, j + s * out_w, s))
            for i in range(self.kernel)
            for j in range(self.kernel)
        ]

    def affine(self, tensors: Tensors, x: np.ndarray) -> np.ndarray:
        weight = tensors[self.weight_key]
        p = self.padding
        padded = _pad(_to_nchw(x, self.in_shape, self.hwc_input), p)
        out = np.zeros((x.shape[0], *self.out_shape))
        for i, j, rows, cols in self._taps():
            out += np.einsum(
                "nchw,fc->nfhw",
                padded[:, :, rows, cols],
                weight[:, :, i, j],
                optimize=True,
            )
        out += tensors[self.bias_key][None, :, None, None]
        return _from_nchw(out, hwc=False)

    def affine_backward(
        self,
        tensors: Tensors,
        x: np.ndarray,
        grad_z: np.ndarray,
    ) -> Tuple[np.ndarray, Tensors]:
        weight = tensors[self.weight_key]
        p = self.padding
        _, height, width = self.in_shape
        padded = _pad(_to_nchw(x, self.in_shape, self.hwc_input), p)
        grad_out = _to_nchw(grad_z, self.out_shape, hwc=False)
        grad_padded = np.zeros_like(padded)
        grad_weight = np.zeros_like(weight)
        for i, j, rows, cols in self._taps():
            grad_weight[:, :, i, j] = np.einsum(
                "nchw,nfhw->fc",
                padded[:, :, rows, cols],
                grad_out,
                optimize=True,
            )
            grad_padded[:, :, rows, cols] += np.einsum(
                "nfhw,fc->nchw",
                grad_out,
                weight[:, :, i, j],
                optimize=True,
            )
        grad_x = grad_padded[:, :, p : p + height, p : p + width]
        grads = {
            self.weight_key: grad_weight,
            self.bias_key: grad_out.sum(axis=(0, 2, 3)),
        }
        return _from_nchw(grad_x, self.hwc_input), grads


class ConvTranspose2d(Layer):
    """
    Transposed convolution, weight shape (in_channels, out_channels, k, k).

    ``output_padding`` adds rows/columns on the far side so that the output
    restores the matching encoder shape. ``hwc_output`` marks the final
    decoder layer, whose rows are flattened (H, W, C) images.
    """

    def __init__(
        self,
        name: str,
        in_shape: ChwShape,
        out_shape: ChwShape,
        kernel: int,
        stride: int,
        padding: int,
        activation: Activation,
        dropout: bool = False,
        hwc_output: bool = False,
    ) -> None:
        super().__init__(name, activation, dropout)
        self.in_shape = in_shape
        self.out_shape = out_shape
        self.kernel = kernel
        self.stride = stride
        self.padding = padding
        self.hwc_output = hwc_output
        _, height, width = in_shape
        base_h = (height - 1) * stride - 2 * padding + kernel
        base_w = (width - 1) * stride - 2 * padding + kernel
        self.output_padding = (out_shape[1] - base_h, out_shape[2] - base_w)
        if min(self.output_padding) < 0 or max(self.output_padding) >= stride:
            raise ConfigError(
                f"{name}: cannot map {in_shape} to {out_shape} with stride {stride}",
            )

    @property
    def in_size(self) -> int:
        return int(np.prod(self.in_shape))

    @property
    def out_size(self) -> int:
        return int(np.prod(self.out_shape))

    @property
    def weight_shape(self) -> Tuple[int, ...]:
        return (self.in_shape[0], self.out_shape[0], self.kernel, self.kernel)

    @property
    def bias_shape(self) -> Tuple[int, ...]:
        return (self.out_shape[0],)

    @property
    def fan_in(self) -> int:
        return self.in_shape[0] * self.kernel * self.kernel

    def _full_size(self) -> Tuple[int, int]:
        _, height, width = self.in_shape
        pad_h, pad_w = self.output_padding
        return (
            (height - 1) * self.stride + self.kernel + pad_h,
            (width - 1) * self.stride + self.kernel + pad_w,
        )

    def _taps(self) -> list[Tuple[int, int, slice, slice]]:
        _, height, width = self.in_shape
        s = self.stride
        return [
            (i, j, slice(i, i + s * height, s), slice(j, j + s * width, s))
            for i in range(self.kernel)
            for j in range(self.kernel)
        ]

    def _crop(self) -> Tuple[slice, slice]:
        p = self.padding
        return slice(p, p + self.out_shape[1]), slice(p, p + self.out_shape[2])

    def affine(self, tensors: Tensors, x: np.ndarray) -> np.ndarray:
        weight = tensors[self.weight_key]
        inputs = _to_nchw(x, self.in_shape, hwc=False)
        full = np.zeros((x.shape[0], self.out_shape[0], *self._full_size()))
        for i, j, rows, cols in self._taps():
            full[:, :, rows, cols] += np.einsum(
                "nchw,co->nohw",
                inputs,
                weight[:, :, i, j],
                optimize=True,
            )
        crop_rows, crop_cols = self._crop()
        out = full[:, :, crop_rows, crop_cols]
        out = out + tensors[self.bias_key][None, :, None, None]
        return _from_nchw(out, self.hwc_output)

    def affine_backward(
        self,
        tensors: Tensors,
        x: np.ndarray,
        grad_z: np.ndarray,
    ) -> Tuple[np.ndarray, Tensors]:
        weight = tensors[self.weight_key]
        inputs = _to_nchw(x, self.in_shape, hwc=False)
        grad_out = _to_nchw(grad_z, self.out_shape, self.hwc_output)
        grad_full = np.zeros((x.shape[0], self.out_shape[0], *self._full_size()))
        crop_rows, crop_cols = self._crop()
        grad_full[:, :, crop_rows, crop_cols] = grad_out
        grad_inputs = np.zeros_like(inputs)
        grad_weight = np.zeros_like(weight)
        for i, j, rows, cols in self._taps():
            window = grad_full[:, :, rows, cols]
            grad_inputs += np.einsum(
                "nohw,co->nchw",
                window,
                weight[:, :, i, j],
                optimize=True,
            )
            grad_weight[:, :, i, j] = np.einsum(
                "nchw,nohw->co",
                inputs,
                window,
                optimize=True,
            )
        grads = {
            self.weight_key: grad_weight,
            self.bias_key: grad_out.sum(axis=(0, 2, 3)),
        }
        return _from_nchw(grad_inputs, hwc=False), grads
