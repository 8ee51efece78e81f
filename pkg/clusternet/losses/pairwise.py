"""Symmetric-KL pairwise loss with a margin hinge for dissimilar pairs."""

from typing import Tuple

import numpy as np

from clusternet.constraints.pairs import PairSet
from clusternet.core.constants import Defaults
from clusternet.core.exceptions import ConfigError, PairIndexError
from clusternet.losses.divergence import kl_rows


def _check_indices(pairs: PairSet, n_rows: int) -> None:
    for block in (pairs.similar, pairs.dissimilar):
        if block.size and (block.min() < 0 or block.max() >= n_rows):
            raise PairIndexError(
                f"pair index {int(block.max())} outside a batch of {n_rows} rows",
            )


def _directed_grads(
    p: np.ndarray,
    q: np.ndarray,
    eps: float,
    stop_gradient: bool,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gradients of KL(p || q) w.r.t. (p, q) on the simplex.

    The generalized form sum p log(p/q) - p + q is used: it equals KL on
    the simplex and its gradient differs from the raw partials only by
    per-row constants, which the distance softmax cancels. With
    ``stop_gradient`` p is held fixed.
    """
    p_safe, q_safe = np.maximum(p, eps), np.maximum(q, eps)
    grad_q = 1.0 - p / q_safe
    if stop_gradient:
        return np.zeros_like(p), grad_q
    return np.log(p_safe / q_safe), grad_q


def pairwise_loss(
    probabilities: np.ndarray,
    pairs: PairSet,
    margin: float = Defaults.MARGIN,
    stop_gradient: bool = True,
    eps: float = Defaults.KL_EPSILON,
) -> Tuple[float, np.ndarray]:
    """
    Mean symmetric KL over similar pairs plus mean hinge over dissimilar pairs.

    A dissimilar pair costs max(0, m - KL(p||q)) + max(0, m - KL(q||p)).
    Each set is averaged by its own size; an empty set contributes 0.

    With ``stop_gradient`` each directed KL term only moves its second
    argument, so across the pair both endpoints still receive gradient.
    Without it the gradient is exact.

    :returns: loss and dL/dP (same shape as ``probabilities``).
    :raises PairIndexError: a pair points outside the batch.
    """
    if margin <= 0:
        raise ConfigError("margin must be positive")
    probabilities = np.atleast_2d(np.asarray(probabilities, dtype=np.float64))
    _check_indices(pairs, probabilities.shape[0])
    grads = np.zeros_like(probabilities)
    loss = 0.0

    for block, similar in ((pairs.similar, True), (pairs.dissimilar, False)):
        if block.shape[0] == 0:
            continue
        count = block.shape[0]
        first, second = block[:, 0], block[:, 1]
        p, q = probabilities[first], probabilities[second]
        kl_pq, kl_qp = kl_rows(p, q, eps), kl_rows(q, p, eps)
        # (rows of the first argument, rows of the second, first, second, KL)
        terms = ((first, second, p, q, kl_pq), (second, first, q, p, kl_qp))
        if similar:
            loss += float(np.sum(kl_pq + kl_qp)) / count
        for rows_a, rows_b, a, b, divergence in terms:
            grad_a, grad_b = _directed_grads(a, b, eps, stop_gradient)
            if similar:
                scale = np.full((count, 1), 1.0 / count)
            else:
                active = (margin - divergence) > 0
                shortfall = np.where(active, margin - divergence, 0.0)
                loss += float(np.sum(shortfall)) / count
                scale = np.where(active, -1.0 / count, 0.0)[:, None]
            np.add.at(grads, rows_a, scale * grad_a)
            np.add.at(grads, rows_b, scale * grad_b)
    return loss, grads
