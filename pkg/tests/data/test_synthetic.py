import numpy as np
import pytest
from scipy.spatial.distance import pdist

from clusternet.core.exceptions import ConfigError
from clusternet.data import make_blobs
from clusternet.data.synthetic import MIN_SEPARATION
from clusternet.metrics import LabelPair, nmi


def test_construction() -> None:
    dataset = make_blobs(K=2, per_cluster=3, dim=2, spread=0.1, seed=7)
    assert dataset.samples.shape == (6, 2)
    np.testing.assert_array_equal(dataset.labels, [0, 0, 0, 1, 1, 1])
    assert dataset.num_classes == 2


def test_deterministic() -> None:
    first = make_blobs(K=3, per_cluster=5, dim=4, spread=0.5, seed=11)
    again = make_blobs(K=3, per_cluster=5, dim=4, spread=0.5, seed=11)
    np.testing.assert_array_equal(first.samples, again.samples)


def test_centers_are_separated() -> None:
    spread = 0.3
    dataset = make_blobs(K=6, per_cluster=500, dim=2, spread=spread, seed=2)
    means = np.stack(
        [dataset.samples[dataset.labels == k].mean(axis=0) for k in range(6)],
    )
    # sample means sit within a few standard errors of the generating centers
    assert pdist(means).min() >= MIN_SEPARATION * spread - 0.2


def test_lloyd_from_true_centers_recovers_labels() -> None:
    dataset = make_blobs(K=4, per_cluster=200, dim=2, spread=0.3, seed=1)
    centers = np.stack(
        [dataset.samples[dataset.labels == k].mean(axis=0) for k in range(4)],
    )
    for _ in range(20):
        distances = ((dataset.samples[:, None, :] - centers[None]) ** 2).sum(-1)
        ids = distances.argmin(axis=1)
        centers = np.stack([dataset.samples[ids == k].mean(axis=0) for k in range(4)])
    assert nmi(LabelPair(dataset.labels, ids)) >= 0.99


@pytest.mark.parametrize(
    ("K", "per_cluster", "dim", "spread"),
    [(1, 3, 2, 0.1), (2, 0, 2, 0.1), (2, 3, 0, 0.1), (2, 3, 2, 0.0)],
)
def test_preconditions(K: int, per_cluster: int, dim: int, spread: float) -> None:
    with pytest.raises(ConfigError):
        make_blobs(K=K, per_cluster=per_cluster, dim=dim, spread=spread, seed=0)
