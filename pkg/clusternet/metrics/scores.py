"""NMI and accuracy of a predicted labeling against ground truth."""

import enum
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.metrics import normalized_mutual_info_score

from clusternet.core.exceptions import DimensionError


class AccuracyMode(str, enum.Enum):
    """DIRECT compares ids as-is; MATCHED first maps clusters to classes."""

    DIRECT = "direct"
    MATCHED = "matched"


@dataclass(frozen=True)
class LabelPair:
    """True class ids and predicted cluster/class ids of the same samples."""

    true_labels: np.ndarray
    predicted: np.ndarray

    def __post_init__(self) -> None:
        true_labels = np.asarray(self.true_labels, dtype=np.int64).ravel()
        predicted = np.asarray(self.predicted, dtype=np.int64).ravel()
        if true_labels.shape != predicted.shape:
            raise DimensionError(
                f"{true_labels.size} true labels vs {predicted.size} predictions",
            )
        if true_labels.size == 0:
            raise DimensionError("cannot score an empty labeling")
        object.__setattr__(self, "true_labels", true_labels)
        object.__setattr__(self, "predicted", predicted)

    def __len__(self) -> int:
        return int(self.true_labels.size)


def contingency(pair: LabelPair) -> np.ndarray:
    """
    Square co-occurrence matrix: entry (i, j) counts true i predicted j.

    The side is the largest id on either side plus one.
    """
    size = int(max(pair.true_labels.max(), pair.predicted.max())) + 1
    table = np.zeros((size, size), dtype=np.int64)
    np.add.at(table, (pair.true_labels, pair.predicted), 1)
    return table


def nmi(pair: LabelPair) -> float:
    """
    I(c; c') / max(H(c), H(c')) with natural logs.

    Two constant labelings score 1.
    """
    return float(
        normalized_mutual_info_score(
            pair.true_labels,
            pair.predicted,
            average_method="max",
        ),
    )


def accuracy(pair: LabelPair, mode: AccuracyMode = AccuracyMode.DIRECT) -> float:
    """
    Percentage of correctly labeled samples.

    MATCHED maximises the correct count over one-to-one cluster-to-class
    maps (optimal assignment on the contingency table).
    """
    if mode == AccuracyMode.DIRECT:
        correct = int(np.sum(pair.true_labels == pair.predicted))
    else:
        table = contingency(pair)
        rows, cols = linear_sum_assignment(table, maximize=True)
        correct = int(table[rows, cols].sum())
    return 100.0 * correct / len(pair)


def evaluate(
    true_labels: np.ndarray,
    predicted: np.ndarray,
    split: str,
    epoch: Optional[int] = None,
) -> Dict[str, Any]:
    """Structured record {split, epoch?, nmi, acc_direct, acc_matched, n}."""
    pair = LabelPair(true_labels, predicted)
    record: Dict[str, Any] = {"split": split}
    if epoch is not None:
        record["epoch"] = epoch
    record.update(
        nmi=nmi(pair),
        acc_direct=accuracy(pair, AccuracyMode.DIRECT),
        acc_matched=accuracy(pair, AccuracyMode.MATCHED),
        n=len(pair),
    )
    return record
