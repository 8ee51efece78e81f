import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Union

import ujson
from loguru import logger

from clusternet.settings import settings

METRICS_EVENT = "metrics"


class InterceptHandler(logging.Handler):
    """
    Default handler from examples in loguru documentation.

    This handler intercepts all log requests and
    passes them to loguru.

    For more info see:
    https://loguru.readthedocs.io/en/stable/overview.html#entirely-compatible-with-standard-logging
    """

    def emit(self, record: logging.LogRecord) -> None:  # pragma: no cover
        """
        Propagates logs to loguru.

        :param record: record to log.
        """
        try:
            level: Union[str, int] = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Find caller from where originated the logged message
        frame, depth = logging.currentframe(), 2
        while frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back  # type: ignore
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(
            level,
            record.getMessage(),
        )


def is_metrics_record(record: Any) -> bool:
    """Filter for structured metrics records."""
    return record["extra"].get("event") == METRICS_EVENT


def configure_logging() -> None:  # pragma: no cover
    """Configures logging."""
    intercept_handler = InterceptHandler()

    logging.basicConfig(handlers=[intercept_handler], level=logging.NOTSET)

    # scikit-learn and friends log through the stdlib
    for logger_name in ("sklearn", "numpy", "scipy"):
        logging.getLogger(logger_name).handlers = [intercept_handler]

    # set logs output, level and format
    logger.remove()
    logger.add(
        sys.stderr,
        level=settings.log_level.value,
        filter=lambda r: not is_metrics_record(r),
    )
    logger.add(
        settings.log_dir / "error.log",
        level="ERROR",
        rotation="1 day",
        retention="10 days",
    )
    if settings.debug:
        logger.add(
            settings.log_dir / "debug.log",
            level="DEBUG",
            rotation="1 day",
            retention="10 days",
            filter=lambda r: not is_metrics_record(r),
        )


@contextmanager
def metrics_sink(path: Path) -> Iterator[Path]:
    """
    Route structured metrics records into a line-delimited file.

    The file holds one JSON object per line and nothing else,
    so two identical runs produce identical files.

    :param path: metrics log file, appended to.
    :yield: the path.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    handler_id = logger.add(
        path,
        format="{message}",
        filter=is_metrics_record,
        level="INFO",
        mode="a",
    )
    try:
        yield path
    finally:
        logger.remove(handler_id)


def log_metrics(record: Dict[str, Any]) -> None:
    """
    Emit one structured metrics record.

    :param record: JSON-serialisable mapping.
    """
    logger.bind(event=METRICS_EVENT).info(ujson.dumps(record))
