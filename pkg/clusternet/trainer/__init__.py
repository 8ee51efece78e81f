"""Pretraining, ClusterNet fine-tuning and inference."""

from clusternet.trainer.config import CountReset, LambdaMode, TrainConfig
from clusternet.trainer.finetune import lambda_for_epoch, train_clusternet
from clusternet.trainer.inference import decode_centers, embed, predict
from clusternet.trainer.pretrain import pretrain
from clusternet.trainer.report import TrainReport

__all__ = [
    "CountReset",
    "LambdaMode",
    "TrainConfig",
    "TrainReport",
    "decode_centers",
    "embed",
    "lambda_for_epoch",
    "predict",
    "pretrain",
    "train_clusternet",
]
