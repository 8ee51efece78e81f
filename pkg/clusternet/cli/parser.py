"""Argument parsing."""

import argparse
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Sequence, Tuple

from clusternet.core.exceptions import ConfigError

# (flag, dotted config key, argparse options)
OVERRIDE_FLAGS: List[Tuple[str, str, Dict[str, Any]]] = [
    ("--seed", "seed", {"type": int}),
    ("--output-dir", "output_dir", {"type": Path}),
    ("--data", "data.kind", {"choices": ["idx", "csv", "blobs"]}),
    ("--images", "data.images", {"type": Path, "nargs": "+"}),
    ("--labels", "data.labels", {"type": Path, "nargs": "+"}),
    ("--csv", "data.csv_path", {"type": Path}),
    ("--label-column", "data.label_column", {}),
    ("--subset", "data.subset_size", {"type": int}),
    ("--pad-to", "data.pad_to", {"type": int}),
    ("--normalize", "data.normalize", {"action": argparse.BooleanOptionalAction}),
    ("--blobs-k", "data.blobs.num_classes", {"type": int}),
    ("--blobs-per-cluster", "data.blobs.per_cluster", {"type": int}),
    ("--blobs-dim", "data.blobs.dim", {"type": int}),
    ("--blobs-spread", "data.blobs.spread", {"type": float}),
    ("--labeled-frac", "split.labeled_frac", {"type": float}),
    ("--holdout-frac", "split.holdout_frac", {"type": float}),
    ("--arch", "network.architecture", {"choices": ["mlp", "conv"]}),
    ("--hidden", "network.hidden", {"type": int, "nargs": "+"}),
    ("--filters", "network.filters", {"type": int, "nargs": "+"}),
    ("--latent-dim", "network.latent_dim", {"type": int}),
    ("--dropout", "network.dropout_rate", {"type": float}),
    ("--pretrain-epochs", "train.pretrain_epochs", {"type": int}),
    ("--finetune-epochs", "train.finetune_epochs", {"type": int}),
    ("--lr", "train.learning_rate", {"type": float}),
    ("--batch-size", "train.batch_size", {"type": int}),
    ("--labeled-per-batch", "train.labeled_per_batch", {"type": int}),
    ("--t1", "train.T1", {"type": int}),
    ("--t2", "train.T2", {"type": int}),
    ("--margin", "train.margin", {"type": float}),
    ("--lambda-mode", "train.lambda_mode", {"choices": ["anneal", "constant"]}),
    ("--lambda-constant", "train.lambda_constant", {"type": float}),
    ("--count-reset", "train.count_reset", {"choices": ["epoch", "batch"]}),
    ("--max-similar-pairs", "train.max_similar_pairs", {"type": int}),
    ("--max-dissimilar-pairs", "train.max_dissimilar_pairs", {"type": int}),
    ("--checkpoint-every", "train.checkpoint_every", {"type": int}),
    ("--dump-pairs", "train.dump_pairs", {"action": "store_const", "const": True}),
]


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as ConfigError instead of exiting with status 2."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(f"{self.prog}: {message}")


def _dest(dotted: str) -> str:
    return "cfg__" + dotted.replace(".", "__")


def _common() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    parent.add_argument("--config", type=Path, help="JSON run config")
    for flag, dotted, options in OVERRIDE_FLAGS:
        parent.add_argument(flag, dest=_dest(dotted), default=None, **options)
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Parser with one sub-command per operation."""
    parser = _Parser(prog="clusternet", description="Semi-supervised deep clustering")
    commands = parser.add_subparsers(dest="command", required=True)
    common = _common()

    commands.add_parser("pretrain", parents=[common], help="pretrain the autoencoder")

    train = commands.add_parser("train", parents=[common], help="fine-tune ClusterNet")
    train.add_argument("--checkpoint", type=Path, help="pretrained checkpoint")
    train.add_argument("--repeat", type=int, default=1, help="runs over seeds")

    evaluate = commands.add_parser("eval", parents=[common], help="score a model")
    evaluate.add_argument("--checkpoint", type=Path, required=True)
    evaluate.add_argument(
        "--split",
        choices=["holdout", "labeled", "unlabeled", "all"],
        default="holdout",
    )

    baseline = commands.add_parser(
        "baseline",
        parents=[common],
        help="k-means baselines",
    )
    baseline.add_argument("--checkpoint", type=Path, help="embed with this network")

    export = commands.add_parser(
        "export-embeddings",
        parents=[common],
        help="write latents as CSV",
    )
    export.add_argument("--checkpoint", type=Path, required=True)

    blobs = commands.add_parser("make-blobs", parents=[common], help="write blobs CSV")
    blobs.add_argument("--out", type=Path, help="CSV path")
    return parser


def parse_args(
    argv: Optional[Sequence[str]] = None,
) -> Tuple[argparse.Namespace, Dict[str, Any]]:
    """Parsed namespace and the config overrides given on the command line."""
    args = build_parser().parse_args(argv)
    overrides = {
        dotted: getattr(args, _dest(dotted))
        for _, dotted, _ in OVERRIDE_FLAGS
        if getattr(args, _dest(dotted)) is not None
    }
    return args, overrides
