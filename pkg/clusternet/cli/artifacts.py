"""Files written by the commands."""

from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd
import ujson

from clusternet.clustering.state import ClusterState
from clusternet.data.schemas import Dataset

MODEL_FILE = "model.npz"
PRETRAINED_FILE = "pretrained.npz"
METRICS_FILE = "metrics.jsonl"
HISTORY_FILE = "history.csv"
CENTERS_FILE = "centers.csv"
DECODED_CENTERS_FILE = "centers_decoded.csv"
EMBEDDINGS_FILE = "embeddings.csv"
EVAL_FILE = "eval.json"
SUMMARY_FILE = "summary.json"
BLOBS_FILE = "blobs.csv"

LABEL_COLUMN = "label"


def write_centers(path: Path, state: ClusterState) -> Path:
    """K x d centers, one row per cluster."""
    columns = [f"z{i}" for i in range(state.latent_dim)]
    frame = pd.DataFrame(state.centers.T, columns=columns)
    frame.index.name = "cluster"
    frame.to_csv(path)
    return path


def write_decoded_centers(path: Path, decoded: np.ndarray) -> Path:
    """K x n decoder outputs of the centers."""
    columns = [f"x{i}" for i in range(decoded.shape[1])]
    frame = pd.DataFrame(decoded, columns=columns)
    frame.index.name = "cluster"
    frame.to_csv(path)
    return path


def write_embeddings(
    path: Path,
    latents: np.ndarray,
    labels: Optional[np.ndarray],
    predicted: Optional[np.ndarray],
) -> Path:
    """N rows of d latent columns plus ``label`` and ``predicted``."""
    frame = pd.DataFrame(latents, columns=[f"z{i}" for i in range(latents.shape[1])])
    missing = pd.array([pd.NA] * latents.shape[0], dtype="Int64")
    frame[LABEL_COLUMN] = missing if labels is None else labels
    frame["predicted"] = missing if predicted is None else predicted
    frame.to_csv(path, index=False)
    return path


def write_dataset_csv(path: Path, dataset: Dataset) -> Path:
    """Features ``f0..`` and, when present, a ``label`` column."""
    frame = pd.DataFrame(
        dataset.samples,
        columns=[f"f{i}" for i in range(dataset.n_features)],
    )
    if dataset.labels is not None:
        frame[LABEL_COLUMN] = dataset.labels
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    return path


def write_json(path: Path, record: Dict[str, Any]) -> Path:
    """One JSON document."""
    path.write_text(ujson.dumps(record, indent=2))
    return path
