"""Annealing schedule and the composite objective."""

from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from clusternet.core.exceptions import ConfigError, NumericError


def lambda_schedule(epoch: int, T1: int, T2: int) -> float:
    """
    Weight of the unlabeled terms at ``epoch``.

    0 before T1, 1 from T2 on, linear in between.
    """
    if not 0 <= T1 < T2:
        raise ConfigError(f"annealing needs 0 <= T1 < T2, got T1={T1}, T2={T2}")
    if epoch < T1:
        return 0.0
    if epoch >= T2:
        return 1.0
    return (epoch - T1) / (T2 - T1)


class LossWeights(BaseModel):
    """Optional multipliers per loss term; 1 reproduces the plain objective."""

    model_config = ConfigDict(frozen=True)

    pair_labeled: float = Field(default=1.0, ge=0.0)
    cluster_labeled: float = Field(default=1.0, ge=0.0)
    pair_unlabeled: float = Field(default=1.0, ge=0.0)
    cluster_unlabeled: float = Field(default=1.0, ge=0.0)
    reconstruction: float = Field(default=1.0, ge=0.0)


@dataclass(frozen=True)
class LossBreakdown:
    """Weighted loss components, the lambda used and their total."""

    pair_labeled: float
    cluster_labeled: float
    pair_unlabeled: float
    cluster_unlabeled: float
    reconstruction: float
    lambda_value: float
    total: float

    def to_record(self) -> Dict[str, float]:
        """Plain dict for the metrics log."""
        return asdict(self)


def total_loss(
    pair_labeled: float,
    cluster_labeled: float,
    pair_unlabeled: float,
    cluster_unlabeled: float,
    reconstruction: float,
    lambda_value: float,
    weights: LossWeights | None = None,
) -> LossBreakdown:
    """
    L = Lpair_l + Lcluster_l + lambda * (Lpair_u + Lcluster_u) + Lrecon.

    Components are stored after applying ``weights``.

    :raises NumericError: a component is not finite.
    """
    if not 0.0 <= lambda_value <= 1.0:
        raise ConfigError(f"lambda must be in [0, 1], got {lambda_value}")
    weights = weights or LossWeights()
    components = {
        "pair_labeled": pair_labeled * weights.pair_labeled,
        "cluster_labeled": cluster_labeled * weights.cluster_labeled,
        "pair_unlabeled": pair_unlabeled * weights.pair_unlabeled,
        "cluster_unlabeled": cluster_unlabeled * weights.cluster_unlabeled,
        "reconstruction": reconstruction * weights.reconstruction,
    }
    for name, value in components.items():
        if not np.isfinite(value):
            raise NumericError(f"{name} loss is not finite")
    total = (
        components["pair_labeled"]
        + components["cluster_labeled"]
        + lambda_value
        * (components["pair_unlabeled"] + components["cluster_unlabeled"])
        + components["reconstruction"]
    )
    return LossBreakdown(**components, lambda_value=lambda_value, total=total)
