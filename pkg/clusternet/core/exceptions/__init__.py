from clusternet.core.exceptions.exceptions import (
    CenterInitializationError,
    CheckpointError,
    ClusterNetError,
    ConfigError,
    DataError,
    DataFormatError,
    DataInconsistencyError,
    DataParseError,
    DimensionError,
    LabelRangeError,
    NumericError,
    PairIndexError,
    StratificationError,
)

__all__ = [
    "CenterInitializationError",
    "CheckpointError",
    "ClusterNetError",
    "ConfigError",
    "DataError",
    "DataFormatError",
    "DataInconsistencyError",
    "DataParseError",
    "DimensionError",
    "LabelRangeError",
    "NumericError",
    "PairIndexError",
    "StratificationError",
]
