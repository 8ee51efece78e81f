"""Normalisation, stratified partitioning and other dataset transforms."""

import math
from typing import Sequence

import numpy as np
from loguru import logger
from sklearn.preprocessing import minmax_scale

from clusternet.core.exceptions import (
    ConfigError,
    DataFormatError,
    DataInconsistencyError,
    StratificationError,
)
from clusternet.core.seeding import substream
from clusternet.data.schemas import Dataset, SplitDataset

# guards ceil() against products like 0.1 * 30 = 3.0000000000000004
CEIL_TOLERANCE = 1e-9


def normalize(dataset: Dataset) -> Dataset:
    """Per-feature min-max scaling into [0, 1]; constant features map to 0."""
    scaled = np.clip(minmax_scale(dataset.samples, feature_range=(0.0, 1.0)), 0, 1)
    return Dataset(
        samples=scaled,
        labels=dataset.labels,
        image_shape=dataset.image_shape,
        num_classes=dataset.num_classes,
    )


def pad_images(dataset: Dataset, height: int, width: int) -> Dataset:
    """Zero-pad image-shaped rows symmetrically to ``height`` x ``width``."""
    if dataset.image_shape is None:
        raise DataFormatError("padding needs image-shaped data")
    rows, cols, channels = dataset.image_shape
    if height < rows or width < cols:
        raise ConfigError(f"cannot pad {rows}x{cols} images to {height}x{width}")
    top, left = (height - rows) // 2, (width - cols) // 2
    images = dataset.samples.reshape(-1, rows, cols, channels)
    padded = np.pad(
        images,
        ((0, 0), (top, height - rows - top), (left, width - cols - left), (0, 0)),
    )
    return Dataset(
        samples=padded.reshape(dataset.n_samples, -1),
        labels=dataset.labels,
        image_shape=(height, width, channels),
        num_classes=dataset.num_classes,
    )


def concat(datasets: Sequence[Dataset]) -> Dataset:
    """Stack datasets row-wise (e.g. MNIST train + test)."""
    if not datasets:
        raise DataInconsistencyError("nothing to concatenate")
    first = datasets[0]
    for other in datasets[1:]:
        if other.n_features != first.n_features or (
            other.image_shape != first.image_shape
        ):
            raise DataInconsistencyError("datasets differ in feature layout")
        if other.has_labels != first.has_labels:
            raise DataInconsistencyError(
                "either all or none of the sources have labels",
            )
    labels, num_classes = None, None
    if first.has_labels:
        labels = np.concatenate([d.labels for d in datasets])  # type: ignore[misc]
        num_classes = max(d.num_classes or 0 for d in datasets)
    return Dataset(
        samples=np.vstack([d.samples for d in datasets]),
        labels=labels,
        image_shape=first.image_shape,
        num_classes=num_classes,
    )


def _class_indices(dataset: Dataset) -> list[np.ndarray]:
    if dataset.labels is None:
        raise StratificationError("stratified sampling needs labels")
    per_class = []
    for k in range(int(dataset.num_classes or 0)):
        members = np.flatnonzero(dataset.labels == k)
        if members.size == 0:
            raise StratificationError(f"class {k} has no samples")
        per_class.append(members)
    return per_class


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def split(
    dataset: Dataset,
    labeled_frac: float,
    holdout_frac: float,
    seed: int,
) -> SplitDataset:
    """
    Stratified labeled / unlabeled / holdout partition.

    Holdout is drawn first: round(holdout_frac * class_size) per class,
    always leaving one training sample. Each class then contributes
    ceil(labeled_frac * remaining) labeled samples, at least one.
    Deterministic per seed; each index set is sorted.

    :raises ConfigError: fractions outside (0, 1] and [0, 1).
    :raises StratificationError: missing labels or an empty class.
    """
    if not 0 < labeled_frac <= 1 or not 0 <= holdout_frac < 1:
        raise ConfigError(
            "labeled_frac must be in (0, 1] and holdout_frac in [0, 1)",
        )
    rng = substream(seed, "split")
    labeled, unlabeled, holdout = [], [], []
    for members in _class_indices(dataset):
        shuffled = rng.permutation(members)
        n_holdout = min(_round_half_up(holdout_frac * members.size), members.size - 1)
        remaining = members.size - n_holdout
        n_labeled = max(1, math.ceil(labeled_frac * remaining - CEIL_TOLERANCE))
        n_labeled = min(n_labeled, remaining)
        holdout.append(shuffled[:n_holdout])
        labeled.append(shuffled[n_holdout : n_holdout + n_labeled])
        unlabeled.append(shuffled[n_holdout + n_labeled :])

    labeled_idx = np.sort(np.concatenate(labeled))
    unlabeled_idx = np.sort(np.concatenate(unlabeled))
    holdout_idx = np.sort(np.concatenate(holdout))
    logger.info(
        f"Split {dataset.n_samples} samples: {labeled_idx.size} labeled, "
        f"{unlabeled_idx.size} unlabeled, {holdout_idx.size} holdout",
    )
    return SplitDataset(
        labeled=dataset.subset(labeled_idx),
        unlabeled=dataset.subset(unlabeled_idx),
        holdout=dataset.subset(holdout_idx),
        labeled_indices=labeled_idx,
        unlabeled_indices=unlabeled_idx,
        holdout_indices=holdout_idx,
    )


def stratified_subset(dataset: Dataset, size: int, seed: int) -> Dataset:
    """
    Class-proportional subset of ``size`` rows (largest-remainder quotas).

    Returns the dataset unchanged when ``size`` >= N.
    """
    if size >= dataset.n_samples:
        return dataset
    if size < 1:
        raise ConfigError("subset size must be positive")
    per_class = _class_indices(dataset)
    exact = np.array([m.size for m in per_class]) * size / dataset.n_samples
    quotas = np.floor(exact).astype(np.int64)
    shortfall = size - int(quotas.sum())
    # stable sort keeps the lowest class first on equal remainders
    for k in np.argsort(-(exact - quotas), kind="stable")[:shortfall]:
        quotas[k] += 1
    rng = substream(seed, "subset")
    chosen = [
        rng.choice(members, size=int(quota), replace=False)
        for members, quota in zip(per_class, quotas)
    ]
    return dataset.subset(np.sort(np.concatenate(chosen)))
