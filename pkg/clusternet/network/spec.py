"""Autoencoder architecture description."""

import enum
from typing import Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from clusternet.core.constants import Defaults


class LayerKind(str, enum.Enum):
    """Encoder layer types."""

    DENSE = "dense"
    CONV = "conv"


class OutputActivation(str, enum.Enum):
    """Decoder output activations."""

    SIGMOID = "sigmoid"
    LINEAR = "linear"


class LayerSpec(BaseModel):
    """One hidden encoder layer: dense with ``units`` or conv with ``filters``."""

    model_config = ConfigDict(frozen=True)

    kind: LayerKind = LayerKind.DENSE
    units: Optional[int] = Field(default=None, ge=1)
    filters: Optional[int] = Field(default=None, ge=1)
    kernel: int = Field(default=Defaults.CONV_KERNEL, ge=1)
    stride: int = Field(default=Defaults.CONV_STRIDE, ge=1)
    padding: int = Field(default=Defaults.CONV_PADDING, ge=0)

    @model_validator(mode="after")
    def check_width(self) -> "LayerSpec":
        """Dense layers need ``units``, conv layers need ``filters``."""
        if self.kind == LayerKind.DENSE and self.units is None:
            raise ValueError("dense layer needs units")
        if self.kind == LayerKind.CONV and self.filters is None:
            raise ValueError("conv layer needs filters")
        return self


class NetworkSpec(BaseModel):
    """
    Encoder description; the decoder is its mirror.

    Hidden layers use leaky ReLU (``leaky_slope``) followed by dropout
    while training. The latent layer is dense with ``latent_dim`` units
    and tanh when ``latent_tanh`` is set. Conv layers must come before
    dense ones and need ``image_shape`` (height, width, channels).
    """

    model_config = ConfigDict(frozen=True)

    input_dim: int = Field(ge=1)
    image_shape: Optional[Tuple[int, int, int]] = None
    encoder_layers: Tuple[LayerSpec, ...] = ()
    latent_dim: int = Field(default=Defaults.LATENT_DIM, ge=1)
    leaky_slope: float = Field(default=Defaults.LEAKY_SLOPE, ge=0.0)
    latent_tanh: bool = True
    dropout_rate: float = Field(default=Defaults.DROPOUT_RATE, ge=0.0, lt=1.0)
    output_activation: OutputActivation = OutputActivation.SIGMOID

    @model_validator(mode="after")
    def check_layout(self) -> "NetworkSpec":
        """Conv layers need an image shape and must precede dense layers."""
        kinds = [layer.kind for layer in self.encoder_layers]
        if LayerKind.CONV in kinds:
            if self.image_shape is None:
                raise ValueError("conv layers need image_shape")
            last_conv = max(i for i, k in enumerate(kinds) if k == LayerKind.CONV)
            if LayerKind.DENSE in kinds[:last_conv]:
                raise ValueError("conv layers must precede dense layers")
        if self.image_shape is not None:
            height, width, channels = self.image_shape
            if height * width * channels != self.input_dim:
                raise ValueError("image_shape does not match input_dim")
        return self

    @property
    def uses_conv(self) -> bool:
        """Whether the encoder starts with convolutions."""
        return any(layer.kind == LayerKind.CONV for layer in self.encoder_layers)

    @classmethod
    def mlp(
        cls,
        input_dim: int,
        hidden: Sequence[int] = Defaults.HIDDEN_WIDTHS,
        latent_dim: int = Defaults.LATENT_DIM,
        **kwargs: object,
    ) -> "NetworkSpec":
        """Dense autoencoder input -> hidden... -> latent_dim."""
        return cls(
            input_dim=input_dim,
            encoder_layers=tuple(LayerSpec(units=width) for width in hidden),
            latent_dim=latent_dim,
            **kwargs,  # type: ignore[arg-type]
        )

    @classmethod
    def conv(
        cls,
        image_shape: Tuple[int, int, int],
        filters: Sequence[int] = Defaults.CONV_FILTERS,
        latent_dim: int = Defaults.LATENT_DIM,
        **kwargs: object,
    ) -> "NetworkSpec":
        """Strided conv stack (kernel 3, stride 2, pad 1) then a dense latent."""
        height, width, channels = image_shape
        return cls(
            input_dim=height * width * channels,
            image_shape=image_shape,
            encoder_layers=tuple(
                LayerSpec(kind=LayerKind.CONV, filters=count) for count in filters
            ),
            latent_dim=latent_dim,
            **kwargs,  # type: ignore[arg-type]
        )
