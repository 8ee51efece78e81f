"""Synthetic Gaussian blobs with a known ground truth."""

import numpy as np
from sklearn.datasets import make_blobs as sklearn_make_blobs

from clusternet.core.exceptions import ConfigError
from clusternet.core.seeding import substream
from clusternet.data.schemas import Dataset

MIN_SEPARATION = 10.0
MAX_DRAWS_PER_CENTER = 10_000


def _place_centers(
    K: int,
    dim: int,
    spread: float,
    rng: np.random.Generator,
) -> np.ndarray:
    separation = MIN_SEPARATION * spread
    half_width = separation * K
    centers: list[np.ndarray] = []
    while len(centers) < K:
        for _ in range(MAX_DRAWS_PER_CENTER):
            candidate = rng.uniform(-half_width, half_width, size=dim)
            if all(np.linalg.norm(candidate - c) >= separation for c in centers):
                centers.append(candidate)
                break
        else:
            half_width *= 2
    return np.stack(centers)


def make_blobs(
    K: int,
    per_cluster: int,
    dim: int,
    spread: float,
    seed: int,
) -> Dataset:
    """
    K isotropic Gaussian clusters, samples grouped by cluster.

    Centers are at mutual distance >= 10 * spread. Labels are the
    generating cluster ids. Deterministic per seed.

    :raises ConfigError: K < 2, per_cluster < 1, dim < 1 or spread <= 0.
    """
    if K < 2 or per_cluster < 1 or dim < 1 or spread <= 0:  # noqa: PLR2004
        raise ConfigError(
            "make_blobs needs K >= 2, per_cluster >= 1, dim >= 1 and spread > 0",
        )
    rng = substream(seed, "blobs")
    centers = _place_centers(K, dim, spread, rng)
    samples, labels = sklearn_make_blobs(
        n_samples=[per_cluster] * K,
        n_features=dim,
        centers=centers,
        cluster_std=spread,
        shuffle=False,
        random_state=int(rng.integers(2**31 - 1)),
    )
    return Dataset(samples=samples, labels=labels, num_classes=K)
