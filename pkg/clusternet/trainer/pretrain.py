"""Reconstruction-only pretraining of the autoencoder."""

from typing import Tuple

import numpy as np
from loguru import logger

from clusternet.core.exceptions import DimensionError, NumericError
from clusternet.core.logging import log_metrics
from clusternet.core.seeding import substream
from clusternet.data.schemas import Dataset
from clusternet.losses.composite import total_loss
from clusternet.losses.terms import reconstruction_loss
from clusternet.network.autoencoder import backward, decode, encode
from clusternet.network.optimizer import adam_step
from clusternet.network.parameters import NetworkParameters
from clusternet.trainer.batching import shuffled_batches
from clusternet.trainer.config import TrainConfig
from clusternet.trainer.report import TrainReport


def check_features(params: NetworkParameters, dataset: Dataset) -> None:
    """Raise DimensionError if the dataset does not fit the network input."""
    if dataset.n_features != params.spec.input_dim:
        raise DimensionError(
            f"dataset has {dataset.n_features} features, "
            f"network expects {params.spec.input_dim}",
        )


def optimizer_step(
    params: NetworkParameters,
    gradients: dict[str, np.ndarray],
    config: TrainConfig,
    where: str,
) -> NetworkParameters:
    """Adam step with the batch position added to numeric errors."""
    try:
        return adam_step(
            params,
            gradients,
            lr=config.learning_rate,
            betas=config.adam_betas,
            eps=config.adam_epsilon,
        )
    except NumericError as e:
        raise NumericError(f"{e.detail} at {where}") from e


def pretrain(
    params: NetworkParameters,
    dataset: Dataset,
    config: TrainConfig,
) -> Tuple[NetworkParameters, TrainReport]:
    """
    Minimise reconstruction loss for ``config.pretrain_epochs`` epochs.

    Batches are shuffled and dropout masks drawn from sub-streams of
    ``config.seed``, so a run is reproducible bit for bit.
    """
    check_features(params, dataset)
    shuffle_rng = substream(config.seed, "shuffle")
    dropout_rng = substream(config.seed, "dropout")
    report = TrainReport(phase="pretrain", params=params)

    for epoch in range(config.pretrain_epochs):
        batch_losses = []
        for batch, rows in enumerate(
            shuffled_batches(dataset.n_samples, config.batch_size, shuffle_rng),
        ):
            where = f"pretrain epoch {epoch}, batch {batch}"
            inputs = dataset.samples[rows]
            latents, encoder_trace = encode(params, inputs, True, dropout_rng)
            outputs, decoder_trace = decode(params, latents, True, dropout_rng)
            loss, output_grads = reconstruction_loss(
                outputs,
                inputs,
                config.normalize_reconstruction,
            )
            if not np.isfinite(loss):
                raise NumericError(f"reconstruction loss is not finite at {where}")
            gradients = backward(
                params,
                (encoder_trace, decoder_trace),
                output_grads * config.loss_weights.reconstruction,
                None,
            )
            params = optimizer_step(params, gradients, config, where)
            batch_losses.append(loss)

        breakdown = total_loss(
            0.0,
            0.0,
            0.0,
            0.0,
            float(np.mean(batch_losses)) if batch_losses else 0.0,
            0.0,
            config.loss_weights,
        )
        report.losses.append(breakdown)
        report.lambdas.append(0.0)
        log_metrics(report.epoch_record(epoch))
        logger.info(
            f"Pretrain epoch {epoch + 1}/{config.pretrain_epochs}: "
            f"reconstruction={breakdown.reconstruction:.6f}",
        )

    report.params = params
    return params, report
