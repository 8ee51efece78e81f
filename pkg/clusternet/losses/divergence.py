"""KL divergences between cluster-membership distributions."""

import numpy as np

from clusternet.core.constants import Defaults
from clusternet.core.exceptions import DimensionError


def _check_pair(p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise DimensionError(f"distributions differ in shape: {p.shape} vs {q.shape}")
    return p, q


def kl_rows(
    p: np.ndarray,
    q: np.ndarray,
    eps: float = Defaults.KL_EPSILON,
) -> np.ndarray:
    """
    KL(p_r || q_r) for every row r, natural log.

    Terms with p = 0 contribute 0; q is floored at ``eps`` inside the log.
    """
    p, q = _check_pair(p, q)
    positive = p > 0
    ratio = np.where(positive, p, 1.0) / np.maximum(q, eps)
    return np.sum(np.where(positive, p * np.log(ratio), 0.0), axis=-1)


def kl_divergence(p: np.ndarray, q: np.ndarray) -> float:
    """KL(p || q) = sum_i p_i log(p_i / q_i)."""
    return float(kl_rows(p, q))


def symmetric_kl(p: np.ndarray, q: np.ndarray) -> float:
    """KL(p || q) + KL(q || p)."""
    return kl_divergence(p, q) + kl_divergence(q, p)
