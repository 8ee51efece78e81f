"""Constrained k-means (labeled seeding, fixed labeled membership) and plain k-means."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger
from sklearn.cluster import KMeans

from clusternet.clustering.centers import init_centers, nearest_centers
from clusternet.clustering.state import ClusterState
from clusternet.core.constants import Defaults
from clusternet.core.exceptions import CenterInitializationError, DimensionError


@dataclass
class KMeansResult:
    """Centers (d x K), unlabeled assignments and the run's bookkeeping."""

    centers: np.ndarray
    assignments: np.ndarray
    labeled_assignments: np.ndarray
    iterations: int
    converged: bool
    objective: List[float] = field(default_factory=list)

    def all_assignments(self) -> np.ndarray:
        """Labeled assignments followed by unlabeled ones."""
        return np.concatenate([self.labeled_assignments, self.assignments])


def _objective(points: np.ndarray, ids: np.ndarray, centers: np.ndarray) -> float:
    if points.shape[0] == 0:
        return 0.0
    return float(np.sum((points - centers[:, ids].T) ** 2))


def constrained_kmeans(
    unlabeled: np.ndarray,
    labeled: np.ndarray,
    labels: np.ndarray,
    K: int,
    max_iter: int = Defaults.KMEANS_MAX_ITER,
    initial_centers: Optional[np.ndarray] = None,
) -> KMeansResult:
    """
    Seeded k-means where labeled points never change cluster.

    Centers start at the labeled class means (or ``initial_centers``,
    d x K, which makes the zero-labeled case plain Lloyd's iteration).
    Each iteration reassigns unlabeled points to the nearest center
    (lowest index on ties) and recomputes every center as the mean of its
    labeled and unlabeled members; a center with no members keeps its
    position. Stops when no unlabeled assignment changes or after
    ``max_iter`` iterations.

    ``objective`` holds the sum of squared distances after every
    assignment step and never increases.
    """
    labels = np.asarray(labels, dtype=np.int64)
    labeled = np.asarray(labeled, dtype=np.float64)
    if labels.size:
        labeled = labeled.reshape(labels.size, -1)
    if initial_centers is not None:
        state = ClusterState.from_centers(initial_centers)
    elif labels.size == 0:
        raise CenterInitializationError("no labeled points and no initial centers")
    else:
        state = init_centers(labeled, labels, K)
    if labels.size == 0:
        labeled = np.zeros((0, state.latent_dim))
    unlabeled = np.asarray(unlabeled, dtype=np.float64).reshape(-1, state.latent_dim)
    if labeled.size and labeled.shape[1] != state.latent_dim:
        raise DimensionError("labeled and unlabeled points differ in dimension")

    points = np.vstack([labeled, unlabeled])
    previous = np.full(unlabeled.shape[0], -1, dtype=np.int64)
    iterations, converged, objective = 0, False, []
    for _ in range(max_iter):
        ids = nearest_centers(unlabeled, state) if unlabeled.size else previous
        member_ids = np.concatenate([labels, ids])
        objective.append(_objective(points, member_ids, state.centers))
        if np.array_equal(ids, previous):
            converged = True
            break
        iterations += 1
        previous = ids
        for k in range(K):
            members = points[member_ids == k]
            if members.shape[0]:
                state.centers[:, k] = members.mean(axis=0)
    else:
        # max_iter spent; record the final assignment against the final centers
        if unlabeled.size:
            previous = nearest_centers(unlabeled, state)

    logger.debug(
        f"Constrained k-means: {iterations} iterations, converged={converged}",
    )
    return KMeansResult(
        centers=state.centers,
        assignments=previous,
        labeled_assignments=labels,
        iterations=iterations,
        converged=converged,
        objective=objective,
    )


def kmeans(
    samples: np.ndarray,
    K: int,
    seed: int,
    n_init: int = Defaults.KMEANS_N_INIT,
) -> KMeansResult:
    """Plain k-means baseline (k-means++ init, best of ``n_init`` runs)."""
    model = KMeans(n_clusters=K, n_init=n_init, random_state=seed)
    ids = model.fit_predict(np.asarray(samples, dtype=np.float64))
    return KMeansResult(
        centers=model.cluster_centers_.T,
        assignments=ids.astype(np.int64),
        labeled_assignments=np.zeros(0, dtype=np.int64),
        iterations=int(model.n_iter_),
        converged=int(model.n_iter_) < model.max_iter,
        objective=[float(model.inertia_)],
    )
