"""Command-line surface."""

from clusternet.cli.commands import (
    cmd_baseline,
    cmd_eval,
    cmd_export_embeddings,
    cmd_make_blobs,
    cmd_pretrain,
    cmd_train,
)
from clusternet.cli.config import RunConfig, load_run_config, write_resolved_config
from clusternet.cli.parser import build_parser, parse_args

__all__ = [
    "RunConfig",
    "build_parser",
    "cmd_baseline",
    "cmd_eval",
    "cmd_export_embeddings",
    "cmd_make_blobs",
    "cmd_pretrain",
    "cmd_train",
    "load_run_config",
    "parse_args",
    "write_resolved_config",
]
