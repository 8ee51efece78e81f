"""Custom exceptions for the package."""

from typing import Any, Dict

from clusternet.core.constants import ErrorCodes, ErrorMessages, ExitCodes


class ClusterNetError(Exception):
    """Base package exception."""

    exit_code: int = ExitCodes.RUNTIME_ERROR
    message: str = ErrorMessages.GENERAL_ERROR
    error_code: str = ErrorCodes.GENERAL_ERROR_CODE

    def __init__(self, detail: str | None = None) -> None:
        self.detail = detail or self.message
        super().__init__(self.detail)

    def to_record(self) -> Dict[str, Any]:
        """Convert the error to a structured log record.

        Returns:
            Dict with the error code, message, type and exit code.
        """
        return {
            "error_code": self.error_code,
            "message": self.detail,
            "type": self.__class__.__name__,
            "exit_code": self.exit_code,
        }


class ConfigError(ClusterNetError):
    """Raised when a configuration value is invalid."""

    exit_code = ExitCodes.USAGE_ERROR
    message = ErrorMessages.CONFIG_ERROR
    error_code = ErrorCodes.CONFIG_ERROR_CODE


# Data Exceptions
class DataError(ClusterNetError):
    """Base exception for dataset loading and partitioning."""

    exit_code = ExitCodes.USAGE_ERROR
    message = ErrorMessages.DATA_FORMAT_ERROR
    error_code = ErrorCodes.DATA_FORMAT_ERROR_CODE


class DataFormatError(DataError):
    """Raised when a file does not follow the expected binary layout."""


class DataInconsistencyError(DataError):
    """Raised when paired files disagree (e.g. image and label counts)."""

    message = ErrorMessages.DATA_INCONSISTENCY_ERROR
    error_code = ErrorCodes.DATA_INCONSISTENCY_ERROR_CODE


class DataParseError(DataError):
    """Raised when a text table cannot be parsed."""

    message = ErrorMessages.DATA_PARSE_ERROR
    error_code = ErrorCodes.DATA_PARSE_ERROR_CODE


class StratificationError(DataError):
    """Raised when a stratified split or subset cannot be drawn."""

    message = ErrorMessages.STRATIFICATION_ERROR
    error_code = ErrorCodes.STRATIFICATION_ERROR_CODE


# Network Exceptions
class DimensionError(ClusterNetError):
    """Raised when an array does not have the shape the network expects."""

    message = ErrorMessages.DIMENSION_ERROR
    error_code = ErrorCodes.DIMENSION_ERROR_CODE


class NumericError(ClusterNetError):
    """Raised when a loss, gradient or parameter stops being finite."""

    message = ErrorMessages.NUMERIC_ERROR
    error_code = ErrorCodes.NUMERIC_ERROR_CODE


class CheckpointError(ClusterNetError):
    """Raised when a checkpoint cannot be read or does not match the config."""

    exit_code = ExitCodes.USAGE_ERROR
    message = ErrorMessages.CHECKPOINT_ERROR
    error_code = ErrorCodes.CHECKPOINT_ERROR_CODE


# Clustering Exceptions
class CenterInitializationError(ClusterNetError):
    """Raised when a class has no labeled sample to seed its center."""

    message = ErrorMessages.CENTER_INIT_ERROR
    error_code = ErrorCodes.CENTER_INIT_ERROR_CODE


class LabelRangeError(ClusterNetError):
    """Raised when a class id is not in 0..K-1."""

    message = ErrorMessages.LABEL_RANGE_ERROR
    error_code = ErrorCodes.LABEL_RANGE_ERROR_CODE


class PairIndexError(ClusterNetError):
    """Raised when a constraint pair points outside the batch."""

    message = ErrorMessages.PAIR_INDEX_ERROR
    error_code = ErrorCodes.PAIR_INDEX_ERROR_CODE
