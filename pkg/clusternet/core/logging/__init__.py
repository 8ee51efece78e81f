from clusternet.core.logging.log import (
    configure_logging,
    log_metrics,
    metrics_sink,
)

__all__ = ["configure_logging", "log_metrics", "metrics_sink"]
