"""Loss terms, their gradients and the annealed composite objective."""

from clusternet.losses.composite import (
    LossBreakdown,
    LossWeights,
    lambda_schedule,
    total_loss,
)
from clusternet.losses.divergence import kl_divergence, kl_rows, symmetric_kl
from clusternet.losses.pairwise import pairwise_loss
from clusternet.losses.terms import cluster_loss, reconstruction_loss

__all__ = [
    "LossBreakdown",
    "LossWeights",
    "cluster_loss",
    "kl_divergence",
    "kl_rows",
    "lambda_schedule",
    "pairwise_loss",
    "reconstruction_loss",
    "symmetric_kl",
    "total_loss",
]
