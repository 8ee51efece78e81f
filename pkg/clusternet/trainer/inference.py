"""Deterministic embedding, prediction and decoded centers."""

import numpy as np

from clusternet.clustering.centers import nearest_centers
from clusternet.clustering.state import ClusterState
from clusternet.core.constants import Defaults
from clusternet.network.autoencoder import decode, encode
from clusternet.network.parameters import NetworkParameters


def embed(
    params: NetworkParameters,
    samples: np.ndarray,
    chunk_size: int = Defaults.EMBED_CHUNK,
) -> np.ndarray:
    """Latents of every row with dropout off, encoded ``chunk_size`` rows at a time."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.shape[0] == 0:
        return np.zeros((0, params.spec.latent_dim))
    return np.vstack(
        [
            encode(params, samples[start : start + chunk_size])[0]
            for start in range(0, samples.shape[0], chunk_size)
        ],
    )


def predict(
    params: NetworkParameters,
    state: ClusterState,
    samples: np.ndarray,
) -> np.ndarray:
    """Nearest-center cluster id (= class id) of every sample."""
    return nearest_centers(embed(params, samples), state)


def decode_centers(params: NetworkParameters, state: ClusterState) -> np.ndarray:
    """Decoder output for every center, K x n."""
    reconstructions, _ = decode(params, state.centers.T)
    return reconstructions
