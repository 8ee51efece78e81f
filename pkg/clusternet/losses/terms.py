"""Cluster (k-means style) and reconstruction loss terms."""

from typing import Sequence, Tuple, Union

import numpy as np

from clusternet.clustering.state import Assignment, ClusterState
from clusternet.core.exceptions import DimensionError


def _assignment_ids(
    assignments: Union[Sequence[Assignment], np.ndarray],
) -> np.ndarray:
    if isinstance(assignments, np.ndarray):
        return assignments.astype(np.int64)
    return np.array([a.index for a in assignments], dtype=np.int64)


def cluster_loss(
    latents: np.ndarray,
    state: ClusterState,
    assignments: Union[Sequence[Assignment], np.ndarray],
) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Mean squared distance of each latent to its assigned center.

    :returns: loss, dL/dz (N x d, rows 2(z - mu)/N) and dL/dC (d x K).
        Training never applies dL/dC; centers move by the count-scaled rule.
    """
    latents = np.atleast_2d(np.asarray(latents, dtype=np.float64))
    ids = _assignment_ids(assignments)
    if ids.shape[0] != latents.shape[0]:
        raise DimensionError(
            f"{ids.shape[0]} assignments for {latents.shape[0]} latents",
        )
    center_grads = np.zeros_like(state.centers)
    n_rows = latents.shape[0]
    if n_rows == 0:
        return 0.0, np.zeros_like(latents), center_grads
    residuals = latents - state.centers[:, ids].T
    loss = float(np.sum(residuals**2)) / n_rows
    latent_grads = 2.0 * residuals / n_rows
    np.add.at(center_grads.T, ids, -latent_grads)
    return loss, latent_grads, center_grads


def reconstruction_loss(
    reconstructions: np.ndarray,
    inputs: np.ndarray,
    normalize: bool = True,
) -> Tuple[float, np.ndarray]:
    """
    Sum of squared errors, divided by the batch size when ``normalize``.

    :returns: loss and dL/d(reconstruction).
    :raises DimensionError: shapes differ.
    """
    reconstructions = np.asarray(reconstructions, dtype=np.float64)
    inputs = np.asarray(inputs, dtype=np.float64)
    if reconstructions.shape != inputs.shape:
        raise DimensionError(
            f"reconstructions {reconstructions.shape} != inputs {inputs.shape}",
        )
    residuals = reconstructions - inputs
    scale = 1.0 / max(inputs.shape[0], 1) if normalize else 1.0
    return float(np.sum(residuals**2)) * scale, 2.0 * residuals * scale
