import sys
from typing import Optional, Sequence

import ujson
from loguru import logger

from clusternet.cli.commands import (
    cmd_baseline,
    cmd_eval,
    cmd_export_embeddings,
    cmd_make_blobs,
    cmd_pretrain,
    cmd_train,
)
from clusternet.cli.config import load_run_config
from clusternet.cli.parser import parse_args
from clusternet.core.constants import ExitCodes
from clusternet.core.exceptions import ClusterNetError
from clusternet.core.logging import configure_logging


def run(argv: Optional[Sequence[str]] = None) -> object:
    """Parse ``argv``, run the command and return its result."""
    args, overrides = parse_args(argv)
    config = load_run_config(args.config, overrides)
    if args.command == "pretrain":
        return cmd_pretrain(config)
    if args.command == "train":
        return cmd_train(config, args.checkpoint, args.repeat)
    if args.command == "eval":
        return cmd_eval(config, args.checkpoint, args.split)
    if args.command == "baseline":
        return cmd_baseline(config, args.checkpoint)
    if args.command == "export-embeddings":
        return cmd_export_embeddings(config, args.checkpoint)
    return cmd_make_blobs(config, args.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint of the command line."""
    configure_logging()
    try:
        result = run(argv)
    except ClusterNetError as e:
        logger.bind(**e.to_record()).error(f"{e.error_code}: {e.detail}")
        return e.exit_code
    if isinstance(result, dict):
        print(ujson.dumps(result))  # noqa: T201
    else:
        print(result)  # noqa: T201
    return ExitCodes.SUCCESS


if __name__ == "__main__":
    sys.exit(main())
