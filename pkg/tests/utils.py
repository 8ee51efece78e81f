from typing import Callable

import numpy as np


def numeric_gradient(
    loss: Callable[[], float],
    tensor: np.ndarray,
    h: float = 1e-5,
) -> np.ndarray:
    """
    Central finite differences of ``loss`` w.r.t. every entry of ``tensor``.

    ``tensor`` is perturbed in place and restored.
    """
    grad = np.zeros_like(tensor)
    flat, out = tensor.reshape(-1), grad.reshape(-1)
    for index in range(flat.size):
        original = flat[index]
        flat[index] = original + h
        plus = loss()
        flat[index] = original - h
        minus = loss()
        flat[index] = original
        out[index] = (plus - minus) / (2 * h)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """||a - n|| / (||a|| + ||n||), 0 when both vanish."""
    scale = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(analytic - numeric) / scale)
