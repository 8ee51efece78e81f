"""Per-epoch training history."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from clusternet.clustering.state import ClusterState
from clusternet.losses.composite import LossBreakdown
from clusternet.network.parameters import NetworkParameters


@dataclass
class TrainReport:
    """
    History of one training phase.

    ``losses`` and ``lambdas`` have one entry per epoch; ``evaluations``
    too for fine-tuning (empty after pretraining, which has no centers).
    """

    phase: str
    params: NetworkParameters
    state: Optional[ClusterState] = None
    losses: List[LossBreakdown] = field(default_factory=list)
    lambdas: List[float] = field(default_factory=list)
    evaluations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def epochs(self) -> int:
        """Number of completed epochs."""
        return len(self.losses)

    def epoch_record(self, epoch: int) -> Dict[str, Any]:
        """Loss breakdown and evaluation of one epoch as a flat dict."""
        record: Dict[str, Any] = {"phase": self.phase, "epoch": epoch}
        record.update(self.losses[epoch].to_record())
        if epoch < len(self.evaluations):
            evaluation = {
                key: value
                for key, value in self.evaluations[epoch].items()
                if key != "epoch"
            }
            record.update(evaluation)
        return record

    def history(self) -> pd.DataFrame:
        """One row per epoch."""
        return pd.DataFrame([self.epoch_record(e) for e in range(self.epochs)])
