"""Similar / dissimilar index pairs within one mini-batch."""

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np
import pandas as pd

from clusternet.clustering.state import Assignment
from clusternet.core.exceptions import ConfigError
from clusternet.core.seeding import substream

PAIR_COLUMNS = ["epoch", "batch", "i", "j", "kind", "source"]


class PairSource(str, enum.Enum):
    """Where the memberships behind a pair set come from."""

    LABELED = "labeled"
    PREDICTED = "predicted"


def _empty() -> np.ndarray:
    return np.zeros((0, 2), dtype=np.int64)


@dataclass(frozen=True)
class PairSet:
    """
    Pairs (i, j) with i < j, as P x 2 index arrays.

    Every unordered pair of the batch lands in exactly one of the two
    sets before sampling.
    """

    similar: np.ndarray
    dissimilar: np.ndarray
    source: PairSource = PairSource.LABELED

    @classmethod
    def empty(cls, source: PairSource = PairSource.LABELED) -> "PairSet":
        """No pairs at all."""
        return cls(similar=_empty(), dissimilar=_empty(), source=source)

    def __len__(self) -> int:
        return int(self.similar.shape[0] + self.dissimilar.shape[0])

    def shifted(self, offset: int) -> "PairSet":
        """Same pairs with every index moved by ``offset``."""
        return PairSet(self.similar + offset, self.dissimilar + offset, self.source)


def _pairs_by_membership(ids: np.ndarray, source: PairSource) -> PairSet:
    ids = np.asarray(ids, dtype=np.int64).ravel()
    first, second = np.triu_indices(ids.size, k=1)
    same = ids[first] == ids[second]
    pairs = np.stack([first, second], axis=1).astype(np.int64)
    return PairSet(similar=pairs[same], dissimilar=pairs[~same], source=source)


def pairs_from_labels(labels: np.ndarray) -> PairSet:
    """All pairs of the batch; same class is similar, different class dissimilar."""
    return _pairs_by_membership(labels, PairSource.LABELED)


def pairs_from_predictions(
    assignments: Union[Sequence[Assignment], np.ndarray],
) -> PairSet:
    """
    Same rule as :func:`pairs_from_labels` keyed on predicted clusters.

    Accepts Assignment objects or a vector of cluster ids.
    """
    if isinstance(assignments, np.ndarray):
        ids = assignments
    else:
        ids = np.array([a.index for a in assignments], dtype=np.int64)
    return _pairs_by_membership(ids, PairSource.PREDICTED)


def _subsample(
    pairs: np.ndarray,
    bound: int,
    rng: np.random.Generator,
) -> np.ndarray:
    if pairs.shape[0] <= bound:
        return pairs
    keep = np.sort(rng.choice(pairs.shape[0], size=bound, replace=False))
    return pairs[keep]


def sample_pairs(
    pairs: PairSet,
    max_similar: int,
    max_dissimilar: int,
    seed: Union[int, np.random.Generator],
) -> PairSet:
    """
    Uniform subsample without replacement of each set, order preserved.

    Sets no larger than their bound pass through unchanged. An integer
    seed draws from its ``pairs`` sub-stream.
    """
    if max_similar < 0 or max_dissimilar < 0:
        raise ConfigError("pair bounds must be non-negative")
    rng = substream(seed, "pairs") if isinstance(seed, int) else seed
    return PairSet(
        similar=_subsample(pairs.similar, max_similar, rng),
        dissimilar=_subsample(pairs.dissimilar, max_dissimilar, rng),
        source=pairs.source,
    )


def pairs_frame(pairs: PairSet, epoch: int, batch: int) -> pd.DataFrame:
    """One row per pair: epoch, batch, i, j, kind (sim/dsim) and source."""
    both = np.vstack([pairs.similar, pairs.dissimilar])
    kinds = ["sim"] * pairs.similar.shape[0] + ["dsim"] * pairs.dissimilar.shape[0]
    return pd.DataFrame(
        {
            "epoch": epoch,
            "batch": batch,
            "i": both[:, 0],
            "j": both[:, 1],
            "kind": kinds,
            "source": pairs.source.value,
        },
        columns=PAIR_COLUMNS,
    )


def append_pairs(path: Path, pairs: PairSet, epoch: int, batch: int) -> None:
    """Append a batch's pairs to a CSV dump, writing the header once."""
    path = Path(path)
    pairs_frame(pairs, epoch, batch).to_csv(
        path,
        mode="a",
        header=not path.exists(),
        index=False,
    )
