"""Dataset containers."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from clusternet.core.exceptions import DataFormatError, LabelRangeError

ImageShape = Tuple[int, int, int]


@dataclass
class Dataset:
    """
    Sample matrix with optional class labels.

    ``samples`` is N x n (float64); ``labels`` holds N class ids in
    0..num_classes-1. ``image_shape`` is (height, width, channels) when the
    rows are flattened images, in row-major (H, W, C) order.
    """

    samples: np.ndarray
    labels: Optional[np.ndarray] = None
    image_shape: Optional[ImageShape] = None
    num_classes: Optional[int] = None

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 2:  # noqa: PLR2004
            raise DataFormatError(
                f"samples must be a matrix, got shape {self.samples.shape}",
            )
        if not np.all(np.isfinite(self.samples)):
            raise DataFormatError("samples contain non-finite values")
        if self.image_shape is not None and (
            int(np.prod(self.image_shape)) != self.samples.shape[1]
        ):
            raise DataFormatError(
                f"image shape {self.image_shape} does not match "
                f"{self.samples.shape[1]} features",
            )
        if self.labels is None:
            return
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.labels.shape != (self.samples.shape[0],):
            raise DataFormatError(
                f"{self.labels.shape[0]} labels for {self.samples.shape[0]} samples",
            )
        if self.labels.size and self.labels.min() < 0:
            raise LabelRangeError("class ids must be non-negative")
        observed = int(self.labels.max()) + 1 if self.labels.size else 0
        if self.num_classes is None:
            self.num_classes = observed
        elif observed > self.num_classes:
            raise LabelRangeError(
                f"class id {observed - 1} is not below K={self.num_classes}",
            )

    @property
    def n_samples(self) -> int:
        """Number of rows N."""
        return int(self.samples.shape[0])

    @property
    def n_features(self) -> int:
        """Number of feature columns n."""
        return int(self.samples.shape[1])

    @property
    def has_labels(self) -> bool:
        """Whether class ids are attached."""
        return self.labels is not None

    def subset(self, indices: np.ndarray) -> "Dataset":
        """Rows ``indices`` as a new dataset sharing K and the image shape."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            samples=self.samples[indices],
            labels=None if self.labels is None else self.labels[indices],
            image_shape=self.image_shape,
            num_classes=self.num_classes,
        )


@dataclass
class SplitDataset:
    """Labeled, unlabeled and held-out partitions of one source dataset."""

    labeled: Dataset
    unlabeled: Dataset
    holdout: Dataset
    labeled_indices: np.ndarray = field(
        default_factory=lambda: np.zeros(0, dtype=np.int64),
    )
    unlabeled_indices: np.ndarray = field(
        default_factory=lambda: np.zeros(0, dtype=np.int64),
    )
    holdout_indices: np.ndarray = field(
        default_factory=lambda: np.zeros(0, dtype=np.int64),
    )

    @property
    def num_classes(self) -> int:
        """Number of classes K."""
        return int(self.labeled.num_classes or 0)
