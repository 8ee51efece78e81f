"""Turn a DataSourceConfig into a dataset and its split."""

from loguru import logger

from clusternet.cli.config import DataSourceConfig, RunConfig, SourceKind
from clusternet.core.exceptions import ConfigError
from clusternet.data.idx import load_idx
from clusternet.data.schemas import Dataset, SplitDataset
from clusternet.data.split import (
    concat,
    normalize,
    pad_images,
    split,
    stratified_subset,
)
from clusternet.data.synthetic import make_blobs
from clusternet.data.tabular import load_csv


def load_dataset(source: DataSourceConfig, seed: int) -> Dataset:
    """Load, pad, subsample and normalise the configured source."""
    if source.kind == SourceKind.IDX:
        labels = source.labels or [None] * len(source.images)
        dataset = concat(
            [load_idx(images, lbl) for images, lbl in zip(source.images, labels)],
        )
    elif source.kind == SourceKind.CSV:
        if source.csv_path is None:
            raise ConfigError("csv source needs csv_path")
        dataset = load_csv(source.csv_path, source.label_column)
    else:
        blobs = source.blobs
        dataset = make_blobs(
            blobs.num_classes,
            blobs.per_cluster,
            blobs.dim,
            blobs.spread,
            seed,
        )
    if source.pad_to is not None:
        dataset = pad_images(dataset, source.pad_to, source.pad_to)
    if source.subset_size is not None:
        dataset = stratified_subset(dataset, source.subset_size, seed)
    if source.should_normalize:
        dataset = normalize(dataset)
    logger.info(
        f"Dataset ready: {dataset.n_samples} samples, {dataset.n_features} features, "
        f"{dataset.num_classes} classes",
    )
    return dataset


def load_split(config: RunConfig) -> SplitDataset:
    """Dataset of ``config`` partitioned with its split fractions and seed."""
    dataset = load_dataset(config.data, config.seed)
    return split(
        dataset,
        config.split.labeled_frac,
        config.split.holdout_frac,
        config.seed,
    )
