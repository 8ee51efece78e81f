"""
Checkpoint container.

A checkpoint is an uncompressed numpy ``.npz`` archive:

* ``header`` - UTF-8 JSON bytes (uint8 array) with ``format``,
  ``version``, the network ``spec`` and ``has_centers``;
* ``param/<key>``, ``adam_m/<key>``, ``adam_v/<key>`` - one float64 array
  per parameter tensor and Adam moment;
* ``adam_step`` - int64 scalar;
* ``centers``, ``labeled_counts``, ``unlabeled_counts`` - present when
  ``has_centers`` is true.

Arrays are stored verbatim, so a save/load round trip is bit-exact.
"""

import zipfile
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
import ujson
from loguru import logger
from pydantic import ValidationError

from clusternet.clustering.state import ClusterState
from clusternet.core.constants import Defaults
from clusternet.core.exceptions import CheckpointError
from clusternet.network.parameters import AdamState, NetworkParameters
from clusternet.network.spec import NetworkSpec

FORMAT_NAME = "clusternet-checkpoint"


def save_checkpoint(
    path: Path,
    params: NetworkParameters,
    state: Optional[ClusterState] = None,
) -> Path:
    """Write parameters, optimizer state and optionally cluster centers."""
    header = {
        "format": FORMAT_NAME,
        "version": Defaults.CHECKPOINT_VERSION,
        "spec": params.spec.model_dump(mode="json"),
        "has_centers": state is not None,
    }
    arrays: Dict[str, np.ndarray] = {
        "header": np.frombuffer(ujson.dumps(header).encode(), dtype=np.uint8),
        "adam_step": np.asarray(params.adam.step, dtype=np.int64),
    }
    for key, value in params.tensors.items():
        arrays[f"param/{key}"] = value
    for key, value in params.adam.first_moment.items():
        arrays[f"adam_m/{key}"] = value
    for key, value in params.adam.second_moment.items():
        arrays[f"adam_v/{key}"] = value
    if state is not None:
        arrays["centers"] = state.centers
        arrays["labeled_counts"] = state.labeled_counts
        arrays["unlabeled_counts"] = state.unlabeled_counts

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as handle:
        np.savez(handle, **arrays)
    logger.debug(f"Checkpoint written to {path}")
    return path


def _prefixed(archive: Dict[str, np.ndarray], prefix: str) -> Dict[str, np.ndarray]:
    return {
        key[len(prefix) :]: value
        for key, value in archive.items()
        if key.startswith(prefix)
    }


def load_checkpoint(path: Path) -> Tuple[NetworkParameters, Optional[ClusterState]]:
    """
    Read a checkpoint written by :func:`save_checkpoint`.

    :raises CheckpointError: missing file, foreign format, unsupported
        version or a spec that does not validate.
    """
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"{path}: checkpoint not found")
    try:
        with np.load(path, allow_pickle=False) as npz:
            archive = {key: npz[key] for key in npz.files}
    except (OSError, ValueError, zipfile.BadZipFile) as e:
        raise CheckpointError(f"{path}: not a checkpoint archive ({e})") from e

    if "header" not in archive:
        raise CheckpointError(f"{path}: missing header")
    header = ujson.loads(archive["header"].tobytes().decode())
    if header.get("format") != FORMAT_NAME:
        raise CheckpointError(f"{path}: not a {FORMAT_NAME} file")
    if header.get("version") != Defaults.CHECKPOINT_VERSION:
        raise CheckpointError(
            f"{path}: unsupported checkpoint version {header.get('version')}",
        )
    try:
        spec = NetworkSpec.model_validate(header["spec"])
    except ValidationError as e:
        raise CheckpointError(f"{path}: invalid network spec ({e})") from e

    params = NetworkParameters(
        spec=spec,
        tensors=_prefixed(archive, "param/"),
        adam=AdamState(
            first_moment=_prefixed(archive, "adam_m/"),
            second_moment=_prefixed(archive, "adam_v/"),
            step=int(archive["adam_step"]),
        ),
    )
    state = None
    if header.get("has_centers"):
        state = ClusterState(
            centers=archive["centers"],
            labeled_counts=archive["labeled_counts"],
            unlabeled_counts=archive["unlabeled_counts"],
        )
    return params, state
