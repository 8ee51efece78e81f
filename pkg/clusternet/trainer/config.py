"""Training hyper-parameters."""

import enum
from typing import Tuple

from loguru import logger
from pydantic import BaseModel, Field, model_validator

from clusternet.core.constants import Defaults
from clusternet.losses.composite import LossWeights


class LambdaMode(str, enum.Enum):
    """How the unlabeled-term weight evolves over fine-tune epochs."""

    ANNEAL = "anneal"
    CONSTANT = "constant"


class CountReset(str, enum.Enum):
    """When the center-update counts go back to zero."""

    EPOCH = "epoch"
    BATCH = "batch"


class TrainConfig(BaseModel):
    """Pretraining and fine-tuning settings."""

    pretrain_epochs: int = Field(default=Defaults.PRETRAIN_EPOCHS, ge=0)
    finetune_epochs: int = Field(default=Defaults.FINETUNE_EPOCHS, ge=0)
    learning_rate: float = Field(default=Defaults.LEARNING_RATE, gt=0.0)
    adam_betas: Tuple[float, float] = Defaults.ADAM_BETAS
    adam_epsilon: float = Field(default=Defaults.ADAM_EPSILON, gt=0.0)
    T1: int = Field(default=Defaults.T1, ge=0)
    T2: int = Field(default=Defaults.T2, ge=1)
    lambda_mode: LambdaMode = LambdaMode.ANNEAL
    lambda_constant: float = Field(default=1.0, ge=0.0, le=1.0)
    margin: float = Field(default=Defaults.MARGIN, gt=0.0)
    batch_size: int = Field(default=Defaults.BATCH_SIZE, ge=2)
    labeled_per_batch: int = Field(default=Defaults.LABELED_PER_BATCH, ge=1)
    max_similar_pairs: int = Field(default=Defaults.MAX_SIMILAR_PAIRS, ge=0)
    max_dissimilar_pairs: int = Field(default=Defaults.MAX_DISSIMILAR_PAIRS, ge=0)
    stop_gradient: bool = True
    normalize_reconstruction: bool = True
    loss_weights: LossWeights = LossWeights()
    count_reset: CountReset = CountReset.EPOCH
    checkpoint_every: int = Field(default=0, ge=0)
    dump_pairs: bool = False
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def check_schedule(self) -> "TrainConfig":
        """T1 < T2, beta ranges and labeled share of a batch."""
        if self.T1 >= self.T2:
            raise ValueError(f"T1 ({self.T1}) must be below T2 ({self.T2})")
        if not all(0.0 <= beta < 1.0 for beta in self.adam_betas):
            raise ValueError("adam betas must be in [0, 1)")
        if self.labeled_per_batch >= self.batch_size:
            raise ValueError("labeled_per_batch must leave room for unlabeled samples")
        if self.lambda_mode == LambdaMode.ANNEAL and self.T2 > self.finetune_epochs:
            logger.warning(
                f"T2={self.T2} exceeds finetune_epochs={self.finetune_epochs}; "
                "lambda never reaches 1",
            )
        return self
