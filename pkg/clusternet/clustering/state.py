"""Cluster-center state and hard assignments."""

from dataclasses import dataclass

import numpy as np

from clusternet.core.exceptions import LabelRangeError


@dataclass
class ClusterState:
    """
    Centers C (d x K, one column per cluster) plus per-cluster update counts.

    ``labeled_counts`` and ``unlabeled_counts`` drive the 1/N step size of
    the center updates and are reset at the boundary chosen in the
    training config.
    """

    centers: np.ndarray
    labeled_counts: np.ndarray
    unlabeled_counts: np.ndarray

    @classmethod
    def from_centers(cls, centers: np.ndarray) -> "ClusterState":
        """State with the given d x K centers and zero counts."""
        centers = np.array(centers, dtype=np.float64)
        K = centers.shape[1]
        return cls(
            centers=centers,
            labeled_counts=np.zeros(K, dtype=np.int64),
            unlabeled_counts=np.zeros(K, dtype=np.int64),
        )

    @property
    def num_clusters(self) -> int:
        """K."""
        return int(self.centers.shape[1])

    @property
    def latent_dim(self) -> int:
        """d."""
        return int(self.centers.shape[0])

    def copy(self) -> "ClusterState":
        """Independent copy."""
        return ClusterState(
            centers=self.centers.copy(),
            labeled_counts=self.labeled_counts.copy(),
            unlabeled_counts=self.unlabeled_counts.copy(),
        )


@dataclass(frozen=True)
class Assignment:
    """One-hot cluster membership; ``is_labeled`` marks a forced (true-label) one."""

    one_hot: np.ndarray
    is_labeled: bool = False

    def __post_init__(self) -> None:
        one_hot = self.one_hot
        if (
            one_hot.ndim != 1
            or int(np.count_nonzero(one_hot)) != 1
            or one_hot.max() != 1
        ):
            raise LabelRangeError("assignment must be one-hot with a single 1")

    @property
    def index(self) -> int:
        """The assigned cluster id."""
        return int(np.argmax(self.one_hot))

    @classmethod
    def of(cls, index: int, K: int, is_labeled: bool = False) -> "Assignment":
        """One-hot at ``index`` among K clusters."""
        if not 0 <= index < K:
            raise LabelRangeError(f"cluster id {index} is not in 0..{K - 1}")
        one_hot = np.zeros(K, dtype=np.int64)
        one_hot[index] = 1
        return cls(one_hot=one_hot, is_labeled=is_labeled)
