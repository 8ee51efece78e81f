import numpy as np
import pytest

from clusternet.clustering import constrained_kmeans, kmeans
from clusternet.core.exceptions import CenterInitializationError
from clusternet.data import Dataset, make_blobs, split
from clusternet.metrics import LabelPair, nmi


def _lloyd(points: np.ndarray, centers: np.ndarray, max_iter: int = 300) -> np.ndarray:
    """Plain Lloyd's iteration; empty clusters keep their center."""
    centers = centers.copy()
    ids = np.full(len(points), -1)
    for _ in range(max_iter):
        distances = ((points[:, None, :] - centers[None]) ** 2).sum(axis=-1)
        new_ids = distances.argmin(axis=1)
        if np.array_equal(new_ids, ids):
            break
        ids = new_ids
        for k in range(len(centers)):
            if np.any(ids == k):
                centers[k] = points[ids == k].mean(axis=0)
    return ids


def test_worked_example() -> None:
    result = constrained_kmeans(
        unlabeled=np.array([[1.0, 1.0], [9.0, 9.0]]),
        labeled=np.array([[0.0, 0.0], [10.0, 10.0]]),
        labels=np.array([0, 1]),
        K=2,
    )
    np.testing.assert_array_equal(result.assignments, [0, 1])
    np.testing.assert_allclose(result.centers.T, [[0.5, 0.5], [9.5, 9.5]])
    assert result.iterations == 1
    assert result.converged


def test_no_unlabeled_points() -> None:
    result = constrained_kmeans(
        unlabeled=np.zeros((0, 2)),
        labeled=np.array([[0.0, 0.0], [2.0, 2.0], [10.0, 10.0]]),
        labels=np.array([0, 0, 1]),
        K=2,
    )
    np.testing.assert_allclose(result.centers.T, [[1.0, 1.0], [10.0, 10.0]])
    assert result.iterations == 0
    assert result.converged


def test_empty_class() -> None:
    with pytest.raises(CenterInitializationError):
        constrained_kmeans(np.zeros((3, 2)), np.zeros((1, 2)), np.array([0]), K=2)


@pytest.mark.parametrize("labeled", [np.zeros((0, 2)), np.array([])])
def test_zero_labeled_points_with_initial_centers(labeled: np.ndarray) -> None:
    result = constrained_kmeans(
        unlabeled=np.array([[0.0, 0.0], [0.0, 1.0], [9.0, 9.0]]),
        labeled=labeled,
        labels=np.array([], dtype=int),
        K=2,
        initial_centers=np.array([[0.0, 9.0], [0.0, 9.0]]),
    )
    np.testing.assert_array_equal(result.assignments, [0, 0, 1])
    np.testing.assert_allclose(result.centers.T, [[0.0, 0.5], [9.0, 9.0]])
    assert result.labeled_assignments.size == 0


def test_matches_lloyd_without_labels() -> None:
    rng = np.random.default_rng(42)
    for _ in range(50):
        n = int(rng.integers(10, 200))
        d = int(rng.integers(1, 6))
        K = int(rng.integers(2, 6))
        points = rng.normal(size=(n, d))
        init = points[rng.choice(n, size=K, replace=False)]

        result = constrained_kmeans(
            unlabeled=points,
            labeled=np.zeros((0, d)),
            labels=np.zeros(0, dtype=int),
            K=K,
            initial_centers=init.T,
        )

        np.testing.assert_array_equal(result.assignments, _lloyd(points, init))


def test_objective_never_increases() -> None:
    noisy = make_blobs(K=3, per_cluster=60, dim=2, spread=2.0, seed=4)
    parts = split(noisy, labeled_frac=0.05, holdout_frac=0.0, seed=1)
    result = constrained_kmeans(
        parts.unlabeled.samples,
        parts.labeled.samples,
        parts.labeled.labels,
        K=3,
    )
    assert np.all(np.diff(result.objective) <= 1e-9)
    np.testing.assert_array_equal(result.labeled_assignments, parts.labeled.labels)


def test_blobs_constrained_beats_threshold() -> None:
    dataset = make_blobs(K=4, per_cluster=200, dim=2, spread=0.3, seed=1)
    parts = split(dataset, labeled_frac=0.05, holdout_frac=0.0, seed=0)
    result = constrained_kmeans(
        parts.unlabeled.samples,
        parts.labeled.samples,
        parts.labeled.labels,
        K=4,
    )
    score = nmi(LabelPair(parts.unlabeled.labels, result.assignments))
    assert score >= 0.99


def test_plain_kmeans_baseline(blobs: Dataset) -> None:
    result = kmeans(blobs.samples, K=4, seed=0)
    assert result.centers.shape == (2, 4)
    assert nmi(LabelPair(blobs.labels, result.assignments)) >= 0.99
    again = kmeans(blobs.samples, K=4, seed=0)
    np.testing.assert_array_equal(result.assignments, again.assignments)
