from pathlib import Path

import ujson
from loguru import logger

from clusternet.core.logging import log_metrics, metrics_sink


def test_metrics_sink_writes_json_lines(tmp_path: Path) -> None:
    """
    Only metrics records reach the file, one JSON object per line.

    :param tmp_path: temporary directory.
    """
    path = tmp_path / "metrics.jsonl"
    with metrics_sink(path):
        logger.warning("not a metrics record")
        log_metrics({"epoch": 0, "nmi": 0.5})
        log_metrics({"epoch": 1, "nmi": 0.75})
    log_metrics({"epoch": 2, "nmi": 1.0})

    lines = path.read_text().splitlines()
    assert [ujson.loads(line) for line in lines] == [
        {"epoch": 0, "nmi": 0.5},
        {"epoch": 1, "nmi": 0.75},
    ]


def test_metrics_sink_appends(tmp_path: Path) -> None:
    path = tmp_path / "nested" / "metrics.jsonl"
    for epoch in range(2):
        with metrics_sink(path):
            log_metrics({"epoch": epoch})
    assert len(path.read_text().splitlines()) == 2
