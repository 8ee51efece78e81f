"""Run configuration: JSON file plus command-line overrides."""

import enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import ujson
from pydantic import BaseModel, Field, ValidationError, model_validator

from clusternet.core.constants import Defaults
from clusternet.core.exceptions import ConfigError
from clusternet.data.schemas import Dataset
from clusternet.network.spec import NetworkSpec, OutputActivation
from clusternet.settings import settings
from clusternet.trainer.config import TrainConfig

CONFIG_FILE = "config.json"


class SourceKind(str, enum.Enum):
    """Dataset sources."""

    IDX = "idx"
    CSV = "csv"
    BLOBS = "blobs"


class Architecture(str, enum.Enum):
    """Autoencoder families."""

    MLP = "mlp"
    CONV = "conv"


class BlobsConfig(BaseModel):
    """Synthetic Gaussian clusters."""

    num_classes: int = Field(default=4, ge=2)
    per_cluster: int = Field(default=200, ge=1)
    dim: int = Field(default=2, ge=1)
    spread: float = Field(default=0.3, gt=0.0)


class DataSourceConfig(BaseModel):
    """
    Where samples come from.

    IDX sources list image files and matching label files (several pairs
    are concatenated, e.g. MNIST train + test). ``normalize`` defaults to
    on for CSV and blobs, whose features are not already in [0, 1].
    """

    kind: SourceKind = SourceKind.BLOBS
    images: List[Path] = []
    labels: List[Path] = []
    csv_path: Optional[Path] = None
    label_column: Optional[str] = None
    blobs: BlobsConfig = BlobsConfig()
    subset_size: Optional[int] = Field(default=None, ge=1)
    pad_to: Optional[int] = Field(default=None, ge=1)
    normalize: Optional[bool] = None

    @model_validator(mode="after")
    def check_paths(self) -> "DataSourceConfig":
        """The chosen source names its files."""
        if self.kind == SourceKind.IDX:
            if not self.images:
                raise ValueError("idx source needs image files")
            if self.labels and len(self.labels) != len(self.images):
                raise ValueError("give one label file per image file")
        if self.kind == SourceKind.CSV and self.csv_path is None:
            raise ValueError("csv source needs csv_path")
        return self

    @property
    def should_normalize(self) -> bool:
        """Resolved min-max scaling switch."""
        if self.normalize is not None:
            return self.normalize
        return self.kind != SourceKind.IDX


class SplitConfig(BaseModel):
    """Fractions of the stratified split."""

    labeled_frac: float = Field(default=0.01, gt=0.0, le=1.0)
    holdout_frac: float = Field(default=0.0, ge=0.0, lt=1.0)


class NetworkConfig(BaseModel):
    """Autoencoder selection; the input size comes from the dataset."""

    architecture: Architecture = Architecture.MLP
    hidden: Tuple[int, ...] = Defaults.HIDDEN_WIDTHS
    filters: Tuple[int, ...] = Defaults.CONV_FILTERS
    latent_dim: int = Field(default=Defaults.LATENT_DIM, ge=1)
    leaky_slope: float = Field(default=Defaults.LEAKY_SLOPE, ge=0.0)
    latent_tanh: bool = True
    dropout_rate: float = Field(default=Defaults.DROPOUT_RATE, ge=0.0, lt=1.0)
    output_activation: OutputActivation = OutputActivation.SIGMOID

    def build_spec(self, dataset: Dataset) -> NetworkSpec:
        """NetworkSpec sized for ``dataset``."""
        options: Dict[str, Any] = {
            "leaky_slope": self.leaky_slope,
            "latent_tanh": self.latent_tanh,
            "dropout_rate": self.dropout_rate,
            "output_activation": self.output_activation,
        }
        try:
            if self.architecture == Architecture.CONV:
                if dataset.image_shape is None:
                    raise ConfigError("conv architecture needs image data")
                return NetworkSpec.conv(
                    dataset.image_shape,
                    self.filters,
                    self.latent_dim,
                    **options,
                )
            return NetworkSpec.mlp(
                dataset.n_features,
                self.hidden,
                self.latent_dim,
                image_shape=dataset.image_shape,
                **options,
            )
        except ValidationError as e:
            raise ConfigError(f"invalid network: {e}") from e


class RunConfig(BaseModel):
    """Everything a command needs; ``seed`` drives every random sub-stream."""

    seed: int = Field(default=0, ge=0)
    output_dir: Path = settings.output_dir
    data: DataSourceConfig = DataSourceConfig()
    split: SplitConfig = SplitConfig()
    network: NetworkConfig = NetworkConfig()
    train: TrainConfig = TrainConfig()

    @model_validator(mode="after")
    def sync_seed(self) -> "RunConfig":
        """The training seed follows the run seed."""
        if self.train.seed != self.seed:
            self.train = self.train.model_copy(update={"seed": self.seed})
        return self

    def with_seed(self, seed: int) -> "RunConfig":
        """Copy with another run seed."""
        return RunConfig.model_validate(
            {**self.model_dump(mode="json"), "seed": seed},
        )


def _set_dotted(target: Dict[str, Any], dotted: str, value: Any) -> None:
    *parents, leaf = dotted.split(".")
    for key in parents:
        target = target.setdefault(key, {})
    target[leaf] = value


def load_run_config(
    path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Read a JSON config file and apply dotted-key overrides on top.

    Overrides set to None are ignored, so unset flags keep file values.

    :param path: JSON file, e.g. a ``config.json`` written by an earlier run.
    :param overrides: mapping like ``{"train.finetune_epochs": 10}``.
    :raises ConfigError: unreadable file or invalid values.
    """
    raw: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"{path}: config file not found")
        try:
            raw = ujson.loads(path.read_text())
        except ValueError as e:
            raise ConfigError(f"{path}: not valid JSON ({e})") from e
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
    for dotted, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(raw, dotted, value)
    # the run seed wins over a stale train.seed from a resolved file
    raw.get("train", {}).pop("seed", None)
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(str(e)) from e


def write_resolved_config(config: RunConfig, output_dir: Path) -> Path:
    """Write the effective config (defaults filled in) as ``config.json``."""
    output_dir.mkdir(parents=True, exist_ok=True)
    path = output_dir / CONFIG_FILE
    path.write_text(ujson.dumps(config.model_dump(mode="json"), indent=2))
    return path
