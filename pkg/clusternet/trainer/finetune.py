"""ClusterNet fine-tuning: alternating center and network updates."""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from clusternet.clustering.centers import (
    init_centers,
    nearest_centers,
    probabilities,
    probabilities_backward,
    reset_counts,
    update_centers,
)
from clusternet.clustering.state import ClusterState
from clusternet.constraints.pairs import (
    PairSet,
    append_pairs,
    pairs_from_labels,
    pairs_from_predictions,
    sample_pairs,
)
from clusternet.core.exceptions import NumericError, StratificationError
from clusternet.core.logging import log_metrics
from clusternet.core.seeding import substream
from clusternet.data.schemas import Dataset, SplitDataset
from clusternet.losses.composite import LossBreakdown, lambda_schedule, total_loss
from clusternet.losses.pairwise import pairwise_loss
from clusternet.losses.terms import cluster_loss, reconstruction_loss
from clusternet.metrics.scores import evaluate
from clusternet.network.autoencoder import backward, decode, encode
from clusternet.network.checkpoint import save_checkpoint
from clusternet.network.parameters import NetworkParameters
from clusternet.trainer.batching import mixed_batches
from clusternet.trainer.config import CountReset, LambdaMode, TrainConfig
from clusternet.trainer.inference import embed
from clusternet.trainer.pretrain import check_features, optimizer_step
from clusternet.trainer.report import TrainReport

PAIRS_FILE = "pairs.csv"


@dataclass
class _Batch:
    """Inputs of one fine-tune batch; labeled rows come first."""

    inputs: np.ndarray
    labels: np.ndarray

    @property
    def n_labeled(self) -> int:
        return int(self.labels.size)


def lambda_for_epoch(epoch: int, config: TrainConfig) -> float:
    """Weight of the unlabeled terms at ``epoch``."""
    if config.lambda_mode == LambdaMode.CONSTANT:
        return config.lambda_constant
    return lambda_schedule(epoch, config.T1, config.T2)


def _batch_pairs(
    labels: np.ndarray,
    predicted: np.ndarray,
    config: TrainConfig,
    rng: np.random.Generator,
) -> Tuple[PairSet, PairSet]:
    labeled = sample_pairs(
        pairs_from_labels(labels),
        config.max_similar_pairs,
        config.max_dissimilar_pairs,
        rng,
    )
    unlabeled = sample_pairs(
        pairs_from_predictions(predicted),
        config.max_similar_pairs,
        config.max_dissimilar_pairs,
        rng,
    )
    # unlabeled rows follow the labeled ones in the batch
    return labeled, unlabeled.shifted(labels.size)


def _mean_breakdown(
    breakdowns: list[LossBreakdown],
    lambda_value: float,
) -> LossBreakdown:
    if not breakdowns:
        return total_loss(0.0, 0.0, 0.0, 0.0, 0.0, lambda_value)

    def mean(name: str) -> float:
        return float(np.mean([getattr(b, name) for b in breakdowns]))

    return total_loss(
        mean("pair_labeled"),
        mean("cluster_labeled"),
        mean("pair_unlabeled"),
        mean("cluster_unlabeled"),
        mean("reconstruction"),
        lambda_value,
    )


def _evaluation_pool(split: SplitDataset) -> Tuple[str, Dataset]:
    if split.unlabeled.n_samples:
        return "unlabeled", split.unlabeled
    return "labeled", split.labeled


class _FineTuner:
    """Mutable state of one fine-tune run: parameters, centers and RNG streams."""

    def __init__(
        self,
        params: NetworkParameters,
        state: ClusterState,
        config: TrainConfig,
        output_dir: Optional[Path],
    ) -> None:
        self.params = params
        self.state = state
        self.config = config
        self.output_dir = output_dir
        self.pair_rng = substream(config.seed, "pairs")
        self.dropout_rng = substream(config.seed, "dropout")
        self.pairs_path: Optional[Path] = None
        if config.dump_pairs:
            if output_dir is None:
                logger.warning("dump_pairs is set but there is no output directory")
            else:
                self.pairs_path = output_dir / PAIRS_FILE
                self.pairs_path.unlink(missing_ok=True)

    def step(
        self,
        batch: _Batch,
        lambda_value: float,
        epoch: int,
        index: int,
    ) -> LossBreakdown:
        """
        One batch: encode, assign, probabilities, pairs, losses, centers, Adam.

        Assignments and the count-scaled center updates use the dropout-free
        latents, the same codes that are scored; the dropout pass only
        feeds the gradients. Centers move before the network step and
        gradients are taken against the centers the batch was assigned to.
        """
        where = f"fine-tune epoch {epoch}, batch {index}"
        config, weights, state = self.config, self.config.loss_weights, self.state
        n_labeled = batch.n_labeled
        rng = self.dropout_rng
        latents, encoder_trace = encode(self.params, batch.inputs, True, rng)
        outputs, decoder_trace = decode(self.params, latents, True, rng)
        labeled_latents, unlabeled_latents = latents[:n_labeled], latents[n_labeled:]
        clean = embed(self.params, batch.inputs)

        predicted = np.zeros(0, dtype=np.int64)
        if unlabeled_latents.shape[0]:
            predicted = nearest_centers(clean[n_labeled:], state)
        probs = probabilities(latents, state)
        labeled_pairs, unlabeled_pairs = _batch_pairs(
            batch.labels,
            predicted,
            config,
            self.pair_rng,
        )
        if self.pairs_path is not None:
            for pairs in (labeled_pairs, unlabeled_pairs):
                append_pairs(self.pairs_path, pairs, epoch, index)

        pair_l, pair_l_grads = pairwise_loss(
            probs,
            labeled_pairs,
            config.margin,
            config.stop_gradient,
        )
        pair_u, pair_u_grads = pairwise_loss(
            probs,
            unlabeled_pairs,
            config.margin,
            config.stop_gradient,
        )
        cluster_l, cluster_l_grads, _ = cluster_loss(
            labeled_latents,
            state,
            batch.labels,
        )
        cluster_u, cluster_u_grads, _ = cluster_loss(
            unlabeled_latents,
            state,
            predicted,
        )
        recon, output_grads = reconstruction_loss(
            outputs,
            batch.inputs,
            config.normalize_reconstruction,
        )
        breakdown = total_loss(
            pair_l,
            cluster_l,
            pair_u,
            cluster_u,
            recon,
            lambda_value,
            weights,
        )
        if not np.isfinite(breakdown.total):
            raise NumericError(f"loss is not finite at {where}")

        prob_grads = (
            weights.pair_labeled * pair_l_grads
            + lambda_value * weights.pair_unlabeled * pair_u_grads
        )
        latent_grads = probabilities_backward(latents, state, probs, prob_grads)
        latent_grads[:n_labeled] += weights.cluster_labeled * cluster_l_grads
        latent_grads[n_labeled:] += (
            lambda_value * weights.cluster_unlabeled * cluster_u_grads
        )

        update_centers(state, clean[:n_labeled], batch.labels, labeled=True)
        update_centers(state, clean[n_labeled:], predicted, labeled=False)

        gradients = backward(
            self.params,
            (encoder_trace, decoder_trace),
            weights.reconstruction * output_grads,
            latent_grads,
        )
        self.params = optimizer_step(
            self.params,
            gradients,
            config,
            where,
        )
        if config.count_reset == CountReset.BATCH:
            reset_counts(state)
        return breakdown

    def checkpoint(self, epoch: int) -> None:
        """Save parameters and centers after ``epoch`` when due."""
        every = self.config.checkpoint_every
        if not every or self.output_dir is None or (epoch + 1) % every:
            return
        save_checkpoint(
            self.output_dir / f"checkpoint-epoch{epoch + 1:03d}.npz",
            self.params,
            self.state,
        )


def train_clusternet(
    params: NetworkParameters,
    split: SplitDataset,
    config: TrainConfig,
    output_dir: Optional[Path] = None,
) -> Tuple[NetworkParameters, ClusterState, TrainReport]:
    """
    Fine-tune a (pretrained) autoencoder together with the cluster centers.

    Centers start at the labeled class means in latent space. Every epoch
    walks mixed batches of labeled and unlabeled rows; the unlabeled
    pairwise and cluster terms are weighted by lambda. After each epoch
    the unlabeled pool (the labeled one if there is none) is scored with
    the retained ground truth, which never feeds back into training.
    Adam starts from fresh moments.

    :param output_dir: where periodic checkpoints and the pair dump go.
    :raises StratificationError: the labeled partition has no labels.
    :raises CenterInitializationError: a class has no labeled sample.
    :raises NumericError: a loss, gradient or parameter stops being finite.
    """
    labeled, unlabeled = split.labeled, split.unlabeled
    check_features(params, labeled)
    labels = labeled.labels
    if labels is None:
        raise StratificationError("the labeled partition carries no labels")
    # Adam moments start from zero
    params = NetworkParameters(spec=params.spec, tensors=params.tensors)
    state = init_centers(
        embed(params, labeled.samples),
        labels,
        split.num_classes,
    )
    if min(config.labeled_per_batch, labeled.n_samples) < 2:  # noqa: PLR2004
        logger.warning("fewer than two labeled samples per batch: no labeled pairs")

    tuner = _FineTuner(params, state, config, output_dir)
    shuffle_rng = substream(config.seed, "shuffle")
    pool_name, pool = _evaluation_pool(split)
    report = TrainReport(phase="finetune", params=params, state=state)

    for epoch in range(config.finetune_epochs):
        lambda_value = lambda_for_epoch(epoch, config)
        if config.count_reset == CountReset.EPOCH:
            reset_counts(state)
        breakdowns = []
        batches = mixed_batches(
            labeled.n_samples,
            unlabeled.n_samples,
            config.batch_size,
            config.labeled_per_batch,
            shuffle_rng,
        )
        for index, (labeled_rows, unlabeled_rows) in enumerate(batches):
            batch = _Batch(
                inputs=np.vstack(
                    [labeled.samples[labeled_rows], unlabeled.samples[unlabeled_rows]],
                ),
                labels=labels[labeled_rows],
            )
            breakdowns.append(tuner.step(batch, lambda_value, epoch, index))

        breakdown = _mean_breakdown(breakdowns, lambda_value)
        report.losses.append(breakdown)
        report.lambdas.append(lambda_value)
        if pool.labels is not None:
            predicted = nearest_centers(embed(tuner.params, pool.samples), state)
            report.evaluations.append(
                evaluate(pool.labels, predicted, pool_name, epoch),
            )
        log_metrics(report.epoch_record(epoch))
        score = ""
        if report.evaluations:
            score = f" nmi={report.evaluations[-1]['nmi']:.4f}"
        logger.info(
            f"Fine-tune epoch {epoch + 1}/{config.finetune_epochs}: "
            f"loss={breakdown.total:.6f} lambda={lambda_value:.4f}{score}",
        )
        tuner.checkpoint(epoch)

    report.params = tuner.params
    return tuner.params, state, report
