"""Cluster-center lifecycle: initialisation, assignment, updates, probabilities."""

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import softmax

from clusternet.clustering.state import Assignment, ClusterState
from clusternet.core.exceptions import (
    CenterInitializationError,
    DimensionError,
    LabelRangeError,
)

# keeps distance-softmax probabilities strictly positive
PROBABILITY_FLOOR = np.finfo(np.float64).tiny


def _as_rows(latents: np.ndarray, state: ClusterState) -> np.ndarray:
    rows = np.atleast_2d(np.asarray(latents, dtype=np.float64))
    if rows.shape[1] != state.latent_dim:
        raise DimensionError(
            f"latents have {rows.shape[1]} dims, centers have {state.latent_dim}",
        )
    return rows


def squared_distances(latents: np.ndarray, state: ClusterState) -> np.ndarray:
    """N x K matrix of ||z_i - mu_k||^2."""
    return cdist(_as_rows(latents, state), state.centers.T, "sqeuclidean")


def init_centers(
    labeled_latents: np.ndarray,
    labels: np.ndarray,
    K: int,
) -> ClusterState:
    """
    Centers as the mean latent of each labeled class; counts start at zero.

    :raises CenterInitializationError: a class in 0..K-1 has no labeled row.
    :raises LabelRangeError: a label is not below K.
    """
    labeled_latents = np.atleast_2d(np.asarray(labeled_latents, dtype=np.float64))
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size and (labels.min() < 0 or labels.max() >= K):
        raise LabelRangeError(f"labels must be in 0..{K - 1}")
    centers = np.zeros((labeled_latents.shape[1], K))
    for k in range(K):
        members = labeled_latents[labels == k]
        if members.shape[0] == 0:
            raise CenterInitializationError(f"class {k} has no labeled sample")
        centers[:, k] = members.mean(axis=0)
    return ClusterState.from_centers(centers)


def nearest_centers(latents: np.ndarray, state: ClusterState) -> np.ndarray:
    """Index of the nearest center per row; ties go to the lowest index."""
    return np.argmin(squared_distances(latents, state), axis=1)


def assign_unlabeled(latent: np.ndarray, state: ClusterState) -> Assignment:
    """Hard assignment of one latent to its nearest center."""
    index = int(nearest_centers(latent, state)[0])
    return Assignment.of(index, state.num_clusters)


def assign_labeled(label: int, K: int) -> Assignment:
    """Forced assignment of a labeled sample to its own class."""
    return Assignment.of(int(label), K, is_labeled=True)


def _step_toward(
    state: ClusterState,
    counts: np.ndarray,
    latent: np.ndarray,
    k: int,
) -> ClusterState:
    counts[k] += 1
    state.centers[:, k] -= (state.centers[:, k] - latent) / counts[k]
    return state


def update_center_labeled(
    state: ClusterState,
    latent: np.ndarray,
    label: int,
) -> ClusterState:
    """
    Move center ``label`` toward ``latent`` with step 1/N_k^l (count first).

    Mutates and returns ``state``; only column ``label`` changes.
    """
    if not 0 <= label < state.num_clusters:
        raise LabelRangeError(f"label {label} is not in 0..{state.num_clusters - 1}")
    latent = _as_rows(latent, state)[0]
    return _step_toward(state, state.labeled_counts, latent, int(label))


def update_center_unlabeled(
    state: ClusterState,
    latent: np.ndarray,
    assignment: Assignment,
) -> ClusterState:
    """Same recurrence as the labeled update, on N_k^u and the assigned cluster."""
    latent = _as_rows(latent, state)[0]
    return _step_toward(state, state.unlabeled_counts, latent, assignment.index)


def update_centers(
    state: ClusterState,
    latents: np.ndarray,
    cluster_ids: np.ndarray,
    labeled: bool,
) -> ClusterState:
    """Apply the per-sample update to every row in order."""
    rows = _as_rows(latents, state)
    counts = state.labeled_counts if labeled else state.unlabeled_counts
    for latent, k in zip(rows, np.asarray(cluster_ids, dtype=np.int64)):
        _step_toward(state, counts, latent, int(k))
    return state


def reset_counts(state: ClusterState) -> ClusterState:
    """Zero both count vectors."""
    state.labeled_counts[:] = 0
    state.unlabeled_counts[:] = 0
    return state


def probabilities(latents: np.ndarray, state: ClusterState) -> np.ndarray:
    """Row-wise softmax of negative squared distances (N x K)."""
    p = softmax(-squared_distances(latents, state), axis=1)
    return np.maximum(p, PROBABILITY_FLOOR)


def assignment_probabilities(latent: np.ndarray, state: ClusterState) -> np.ndarray:
    """p_k = exp(-d_k) / sum_j exp(-d_j) with d_k = ||z - mu_k||^2."""
    return probabilities(latent, state)[0]


def probabilities_backward(
    latents: np.ndarray,
    state: ClusterState,
    probs: np.ndarray,
    grad_probs: np.ndarray,
) -> np.ndarray:
    """
    dL/dz from dL/dp through the distance softmax, centers held fixed.

    dL/dd_j = -p_j (g_j - sum_k g_k p_k) and dd_j/dz = 2 (z - mu_j).
    """
    rows = _as_rows(latents, state)
    expected = np.sum(grad_probs * probs, axis=1, keepdims=True)
    grad_dist = -probs * (grad_probs - expected)
    return 2.0 * (
        rows * grad_dist.sum(axis=1, keepdims=True) - grad_dist @ state.centers.T
    )
