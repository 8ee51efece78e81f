"""Reader and writer for the big-endian IDX format used by MNIST and USPS dumps."""

import gzip
import struct
from pathlib import Path
from typing import IO, Optional

import numpy as np
from loguru import logger

from clusternet.core.constants import IdxFormat
from clusternet.core.exceptions import (
    DataFormatError,
    DataInconsistencyError,
    DataParseError,
)
from clusternet.data.schemas import Dataset


def _open(path: Path) -> IO[bytes]:
    if path.suffix == ".gz":
        return gzip.open(path, "rb")
    return path.open("rb")


def _read_header(handle: IO[bytes], layout: str, path: Path) -> tuple[int, ...]:
    size = struct.calcsize(layout)
    raw = handle.read(size)
    if len(raw) != size:
        raise DataFormatError(f"{path}: truncated IDX header")
    return struct.unpack(layout, raw)


def _read_images(path: Path) -> tuple[np.ndarray, int, int]:
    with _open(path) as handle:
        # [magic][count][rows][cols] then count*rows*cols unsigned bytes
        magic, count, rows, cols = _read_header(handle, IdxFormat.IMAGES_HEADER, path)
        if magic != IdxFormat.IMAGES_MAGIC:
            raise DataFormatError(
                f"{path}: magic number {magic:#010x} is not an IDX image file",
            )
        payload = handle.read()
    expected = count * rows * cols
    if len(payload) != expected:
        raise DataFormatError(
            f"{path}: expected {expected} pixel bytes, found {len(payload)}",
        )
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(count, rows * cols)
    return pixels, rows, cols


def _read_labels(path: Path) -> np.ndarray:
    with _open(path) as handle:
        magic, count = _read_header(handle, IdxFormat.LABELS_HEADER, path)
        if magic != IdxFormat.LABELS_MAGIC:
            raise DataFormatError(
                f"{path}: magic number {magic:#010x} is not an IDX label file",
            )
        payload = handle.read()
    if len(payload) != count:
        raise DataFormatError(f"{path}: expected {count} labels, found {len(payload)}")
    return np.frombuffer(payload, dtype=np.uint8).astype(np.int64)


def load_idx(images_path: Path, labels_path: Optional[Path] = None) -> Dataset:
    """
    Load an IDX image file and, optionally, its label file.

    Pixel bytes are mapped to [0, 1] by division by 255.

    :param images_path: IDX image file (plain or ``.gz``).
    :param labels_path: matching IDX label file.
    :raises DataFormatError: on a wrong magic number or a truncated file.
    :raises DataInconsistencyError: when image and label counts differ.
    :return: dataset with image shape (rows, cols, 1).
    """
    images_path = Path(images_path)
    if not images_path.exists():
        raise DataParseError(f"{images_path}: file not found")
    pixels, rows, cols = _read_images(images_path)
    labels = None
    if labels_path is not None:
        labels_path = Path(labels_path)
        if not labels_path.exists():
            raise DataParseError(f"{labels_path}: file not found")
        labels = _read_labels(labels_path)
        if labels.shape[0] != pixels.shape[0]:
            raise DataInconsistencyError(
                f"{pixels.shape[0]} images but {labels.shape[0]} labels",
            )
    logger.info(f"Loaded {pixels.shape[0]} images of {rows}x{cols} from {images_path}")
    return Dataset(
        samples=pixels.astype(np.float64) / IdxFormat.PIXEL_SCALE,
        labels=labels,
        image_shape=(rows, cols, 1),
    )


def save_idx(
    dataset: Dataset,
    images_path: Path,
    labels_path: Optional[Path] = None,
) -> None:
    """
    Write a dataset as IDX files.

    Values are scaled by 255 and rounded to bytes; a dataset without an
    image shape is written as 1 x n images.

    :raises DataFormatError: for multi-channel images, which IDX image files
        cannot hold.
    """
    rows, cols, channels = dataset.image_shape or (1, dataset.n_features, 1)
    if channels != 1:
        raise DataFormatError("IDX image files hold single-channel images only")
    pixels = np.clip(np.rint(dataset.samples * IdxFormat.PIXEL_SCALE), 0, 255)
    header = struct.pack(
        IdxFormat.IMAGES_HEADER,
        IdxFormat.IMAGES_MAGIC,
        dataset.n_samples,
        rows,
        cols,
    )
    Path(images_path).write_bytes(header + pixels.astype(np.uint8).tobytes())
    if labels_path is None:
        return
    if dataset.labels is None:
        raise DataFormatError("dataset has no labels to write")
    header = struct.pack(
        IdxFormat.LABELS_HEADER,
        IdxFormat.LABELS_MAGIC,
        dataset.n_samples,
    )
    Path(labels_path).write_bytes(header + dataset.labels.astype(np.uint8).tobytes())
