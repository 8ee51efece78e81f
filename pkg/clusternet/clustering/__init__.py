"""Cluster centers, hard assignments and constrained k-means."""

from clusternet.clustering.centers import (
    assign_labeled,
    assign_unlabeled,
    assignment_probabilities,
    init_centers,
    nearest_centers,
    probabilities,
    probabilities_backward,
    reset_counts,
    squared_distances,
    update_center_labeled,
    update_center_unlabeled,
    update_centers,
)
from clusternet.clustering.kmeans import KMeansResult, constrained_kmeans, kmeans
from clusternet.clustering.state import Assignment, ClusterState

__all__ = [
    "Assignment",
    "ClusterState",
    "KMeansResult",
    "assign_labeled",
    "assign_unlabeled",
    "assignment_probabilities",
    "constrained_kmeans",
    "init_centers",
    "kmeans",
    "nearest_centers",
    "probabilities",
    "probabilities_backward",
    "reset_counts",
    "squared_distances",
    "update_center_labeled",
    "update_center_unlabeled",
    "update_centers",
]
