import os
from pathlib import Path
from typing import Generator, List

import numpy as np
import pytest
from loguru import logger

from clusternet.data import Dataset, SplitDataset, make_blobs, normalize, split
from clusternet.network import NetworkParameters, NetworkSpec, init_network
from clusternet.trainer import TrainConfig


@pytest.fixture
def rng() -> np.random.Generator:
    """
    Random generator for test inputs.

    :return: seeded generator.
    """
    return np.random.default_rng(1234)


@pytest.fixture
def blobs() -> Dataset:
    """
    Small, well separated, normalised 2-D blobs.

    :return: dataset with 4 classes of 40 samples.
    """
    return normalize(make_blobs(K=4, per_cluster=40, dim=2, spread=0.3, seed=3))


@pytest.fixture
def blobs_split(blobs: Dataset) -> SplitDataset:
    """
    Stratified split of the blobs fixture.

    :param blobs: dataset to split.
    :return: 10% labeled, 10% holdout.
    """
    return split(blobs, labeled_frac=0.1, holdout_frac=0.1, seed=0)


@pytest.fixture
def small_spec() -> NetworkSpec:
    """
    Tiny dense autoencoder for 2-D inputs.

    :return: spec 2 -> 16 -> 8 -> 4.
    """
    return NetworkSpec.mlp(input_dim=2, hidden=(16, 8), latent_dim=4)


@pytest.fixture
def small_params(small_spec: NetworkSpec) -> NetworkParameters:
    """
    Fresh parameters of the tiny spec.

    :param small_spec: network description.
    :return: parameters for seed 0.
    """
    return init_network(small_spec, seed=0)


@pytest.fixture
def fast_config() -> TrainConfig:
    """
    Short schedule for unit-level training runs.

    :return: config with a few epochs on both phases.
    """
    return TrainConfig(
        pretrain_epochs=3,
        finetune_epochs=4,
        T1=1,
        T2=3,
        batch_size=32,
        labeled_per_batch=8,
        learning_rate=1e-3,
    )


@pytest.fixture
def log_messages() -> Generator[List[str], None, None]:
    """
    Capture loguru messages at WARNING and above.

    :yield: list filled with formatted messages.
    """
    messages: List[str] = []
    handler_id = logger.add(messages.append, level="WARNING", format="{message}")
    yield messages
    logger.remove(handler_id)


@pytest.fixture
def mnist_dir() -> Path:
    """
    Directory holding the MNIST IDX files.

    :return: path from CLUSTERNET_MNIST_DIR; skips the test when unset.
    """
    location = os.environ.get("CLUSTERNET_MNIST_DIR")
    if not location:
        pytest.skip("CLUSTERNET_MNIST_DIR is not set")
    return Path(location)
