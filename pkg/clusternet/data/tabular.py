"""CSV datasets."""

from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from loguru import logger

from clusternet.core.exceptions import DataParseError
from clusternet.data.schemas import Dataset


def _has_header(first_row: pd.Series) -> bool:
    numeric = pd.to_numeric(first_row, errors="coerce")
    return bool(numeric.isna().any())


def _parse_labels(column: pd.Series, name: str) -> np.ndarray:
    numeric = pd.to_numeric(column, errors="coerce")
    if numeric.notna().all() and np.all(numeric == np.floor(numeric)):
        if numeric.min() < 0:
            raise DataParseError(f"label column '{name}' has negative class ids")
        return numeric.to_numpy(dtype=np.int64)
    if column.isna().any():
        row = int(np.flatnonzero(column.isna().to_numpy())[0])
        raise DataParseError(f"row {row + 1}: missing label in column '{name}'")
    codes, uniques = pd.factorize(column, sort=True)
    logger.info(f"Label column '{name}' mapped to ids: {list(uniques)}")
    return codes.astype(np.int64)


def _to_matrix(frame: pd.DataFrame, row_offset: int) -> np.ndarray:
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna().to_numpy()
    if bad.any():
        row, col = np.argwhere(bad)[0]
        cell = frame.iat[row, col]
        reason = "missing value" if pd.isna(cell) else f"non-numeric value {cell!r}"
        raise DataParseError(
            f"row {row + row_offset}: {reason} in column '{frame.columns[col]}'",
        )
    return numeric.to_numpy(dtype=np.float64)


def load_csv(path: Path, label_column: Optional[str] = None) -> Dataset:
    """
    Load a rectangular numeric table.

    The first row is treated as a header when any of its cells is not a
    number. Without a header, ``label_column`` may name a column by its
    0-based position. Row numbers in errors are 1-based file lines.

    :raises DataParseError: empty file, ragged row, non-numeric cell or an
        unknown label column.
    """
    path = Path(path)
    try:
        raw = pd.read_csv(
            path,
            header=None,
            dtype=str,
            skip_blank_lines=True,
            keep_default_na=False,
            na_values=[""],
        )
    except FileNotFoundError as e:
        raise DataParseError(f"{path}: file not found") from e
    except pd.errors.EmptyDataError as e:
        raise DataParseError(f"{path}: file is empty") from e
    except pd.errors.ParserError as e:
        raise DataParseError(f"{path}: ragged rows ({e})") from e

    row_offset = 1
    if _has_header(raw.iloc[0]):
        raw.columns = [str(name).strip() for name in raw.iloc[0]]
        raw = raw.iloc[1:].reset_index(drop=True)
        row_offset = 2
    else:
        raw.columns = [str(position) for position in range(raw.shape[1])]
    if raw.empty:
        raise DataParseError(f"{path}: no data rows")

    labels = None
    if label_column is not None:
        if label_column not in raw.columns:
            raise DataParseError(f"{path}: no column named '{label_column}'")
        labels = _parse_labels(raw[label_column], label_column)
        raw = raw.drop(columns=[label_column])

    samples = _to_matrix(raw, row_offset)
    logger.info(f"Loaded {samples.shape[0]}x{samples.shape[1]} table from {path}")
    return Dataset(samples=samples, labels=labels)
