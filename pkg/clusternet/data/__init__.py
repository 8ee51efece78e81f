"""Dataset loading, generation and partitioning."""

from clusternet.data.idx import load_idx, save_idx
from clusternet.data.schemas import Dataset, SplitDataset
from clusternet.data.split import (
    concat,
    normalize,
    pad_images,
    split,
    stratified_subset,
)
from clusternet.data.synthetic import make_blobs
from clusternet.data.tabular import load_csv

__all__ = [
    "Dataset",
    "SplitDataset",
    "concat",
    "load_csv",
    "load_idx",
    "make_blobs",
    "normalize",
    "pad_images",
    "save_idx",
    "split",
    "stratified_subset",
]
