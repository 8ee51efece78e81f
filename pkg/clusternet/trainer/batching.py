"""Mini-batch index plans."""

from typing import Iterator, Tuple

import numpy as np


def shuffled_batches(
    n_rows: int,
    batch_size: int,
    rng: np.random.Generator,
) -> Iterator[np.ndarray]:
    """Consecutive slices of one random permutation; the last may be short."""
    order = rng.permutation(n_rows)
    for start in range(0, n_rows, batch_size):
        yield order[start : start + batch_size]


def mixed_batches(
    n_labeled: int,
    n_unlabeled: int,
    batch_size: int,
    labeled_per_batch: int,
    rng: np.random.Generator,
) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    (labeled rows, unlabeled rows) per fine-tune batch.

    Unlabeled rows are a shuffled pass over the pool, ``batch_size`` minus
    the labeled share at a time. Each batch draws ``labeled_per_batch``
    labeled rows (capped at the pool size) without replacement. With no
    unlabeled data the labeled pool is passed over in full batches.
    """
    if n_unlabeled == 0:
        for rows in shuffled_batches(n_labeled, batch_size, rng):
            yield rows, np.zeros(0, dtype=np.int64)
        return
    labeled_count = min(labeled_per_batch, n_labeled)
    for rows in shuffled_batches(n_unlabeled, batch_size - labeled_count, rng):
        labeled_rows = rng.choice(n_labeled, size=labeled_count, replace=False)
        yield labeled_rows, rows
