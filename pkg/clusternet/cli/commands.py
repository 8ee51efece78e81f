"""Command implementations; each returns what it wrote or reported."""

from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from loguru import logger

from clusternet.cli.artifacts import (
    BLOBS_FILE,
    CENTERS_FILE,
    DECODED_CENTERS_FILE,
    EMBEDDINGS_FILE,
    EVAL_FILE,
    HISTORY_FILE,
    METRICS_FILE,
    MODEL_FILE,
    PRETRAINED_FILE,
    SUMMARY_FILE,
    write_centers,
    write_dataset_csv,
    write_decoded_centers,
    write_embeddings,
    write_json,
)
from clusternet.cli.config import RunConfig, write_resolved_config
from clusternet.cli.sources import load_dataset, load_split
from clusternet.clustering.centers import nearest_centers
from clusternet.clustering.kmeans import constrained_kmeans, kmeans
from clusternet.core.exceptions import CheckpointError, ConfigError
from clusternet.core.logging import log_metrics, metrics_sink
from clusternet.data.schemas import Dataset, SplitDataset
from clusternet.data.split import concat
from clusternet.data.synthetic import make_blobs
from clusternet.metrics.scores import evaluate
from clusternet.network.autoencoder import init_network
from clusternet.network.checkpoint import load_checkpoint, save_checkpoint
from clusternet.network.parameters import NetworkParameters
from clusternet.trainer.finetune import train_clusternet
from clusternet.trainer.inference import decode_centers, embed, predict
from clusternet.trainer.pretrain import check_features, pretrain

SUMMARY_METRICS = ("nmi", "acc_direct", "acc_matched")
EVAL_SPLITS = ("holdout", "labeled", "unlabeled", "all")


def _prepare(config: RunConfig, output_dir: Path) -> Path:
    """Write the resolved config and start a fresh metrics log."""
    write_resolved_config(config, output_dir)
    metrics_path = output_dir / METRICS_FILE
    metrics_path.unlink(missing_ok=True)
    return metrics_path


def _training_data(split: SplitDataset) -> Dataset:
    return concat([split.labeled, split.unlabeled])


def _labels(dataset: Dataset) -> np.ndarray:
    if dataset.labels is None:
        raise ConfigError("the dataset has no labels to evaluate against")
    return dataset.labels


def _load_matching(
    path: Path,
    config: RunConfig,
    dataset: Dataset,
) -> NetworkParameters:
    params, _ = load_checkpoint(path)
    if params.spec != config.network.build_spec(dataset):
        raise ConfigError(f"{path}: checkpoint network does not match the config")
    return params


def cmd_pretrain(config: RunConfig) -> Path:
    """Pretrain the autoencoder on labeled + unlabeled data; returns the checkpoint."""
    output_dir = config.output_dir
    metrics_path = _prepare(config, output_dir)
    training = _training_data(load_split(config))
    params = init_network(config.network.build_spec(training), config.seed)
    with metrics_sink(metrics_path):
        params, report = pretrain(params, training, config.train)
    report.history().to_csv(output_dir / HISTORY_FILE, index=False)
    return save_checkpoint(output_dir / PRETRAINED_FILE, params)


def _train_once(
    config: RunConfig,
    output_dir: Path,
    checkpoint: Optional[Path],
) -> Dict[str, Any]:
    metrics_path = _prepare(config, output_dir)
    split = load_split(config)
    training = _training_data(split)
    with metrics_sink(metrics_path):
        if checkpoint is not None:
            params = _load_matching(checkpoint, config, training)
        else:
            params = init_network(config.network.build_spec(training), config.seed)
            params, _ = pretrain(params, training, config.train)
            save_checkpoint(output_dir / PRETRAINED_FILE, params)
        params, state, report = train_clusternet(
            params,
            split,
            config.train,
            output_dir,
        )
        result: Dict[str, Any] = {"seed": config.seed}
        if report.evaluations:
            result.update(
                {key: report.evaluations[-1][key] for key in SUMMARY_METRICS},
            )
        if split.holdout.n_samples:
            holdout = evaluate(
                _labels(split.holdout),
                predict(params, state, split.holdout.samples),
                "holdout",
            )
            log_metrics(holdout)
            result["holdout"] = holdout

    save_checkpoint(output_dir / MODEL_FILE, params, state)
    write_centers(output_dir / CENTERS_FILE, state)
    write_decoded_centers(
        output_dir / DECODED_CENTERS_FILE,
        decode_centers(params, state),
    )
    report.history().to_csv(output_dir / HISTORY_FILE, index=False)
    return result


def summarize(results: List[Dict[str, Any]]) -> Dict[str, Any]:
    """Average and best of every score over repeated runs."""
    summary: Dict[str, Any] = {"split": "summary", "runs": len(results)}
    sections = {"": results}
    holdouts = [r["holdout"] for r in results if "holdout" in r]
    if holdouts:
        sections["holdout_"] = holdouts
    for prefix, records in sections.items():
        for key in SUMMARY_METRICS:
            values = [r[key] for r in records if key in r]
            if values:
                summary[f"{prefix}{key}_avg"] = float(np.mean(values))
                summary[f"{prefix}{key}_best"] = float(np.max(values))
    return summary


def cmd_train(
    config: RunConfig,
    checkpoint: Optional[Path] = None,
    repeat: int = 1,
) -> Dict[str, Any]:
    """
    Fine-tune (pretraining first unless ``checkpoint`` is given).

    With ``repeat`` > 1 the run is repeated for seeds seed, seed+1, ...
    in ``seed-<n>`` sub-directories and an avg/best summary is written.
    """
    if repeat < 1:
        raise ConfigError("repeat must be at least 1")
    if repeat == 1:
        return _train_once(config, config.output_dir, checkpoint)
    results = []
    for seed in range(config.seed, config.seed + repeat):
        run_dir = config.output_dir / f"seed-{seed}"
        run_config = config.with_seed(seed).model_copy(update={"output_dir": run_dir})
        results.append(_train_once(run_config, run_dir, checkpoint))
    summary = summarize(results)
    write_json(config.output_dir / SUMMARY_FILE, summary)
    logger.info(f"Summary over {repeat} seeds: {summary}")
    return summary


def _eval_dataset(config: RunConfig, name: str) -> Dataset:
    if name == "all":
        return load_dataset(config.data, config.seed)
    split = load_split(config)
    dataset: Dataset = getattr(split, name)
    if dataset.n_samples == 0:
        raise ConfigError(f"the {name} partition is empty")
    return dataset


def cmd_eval(
    config: RunConfig,
    checkpoint: Path,
    split: str = "holdout",
) -> Dict[str, Any]:
    """Score a trained checkpoint on one partition (or the whole dataset)."""
    if split not in EVAL_SPLITS:
        raise ConfigError(f"unknown partition '{split}'")
    params, state = load_checkpoint(checkpoint)
    if state is None:
        raise CheckpointError(f"{checkpoint}: checkpoint has no cluster centers")
    dataset = _eval_dataset(config, split)
    check_features(params, dataset)
    record = evaluate(_labels(dataset), predict(params, state, dataset.samples), split)
    output_dir = config.output_dir
    output_dir.mkdir(parents=True, exist_ok=True)
    with metrics_sink(output_dir / METRICS_FILE):
        log_metrics(record)
    write_json(output_dir / EVAL_FILE, record)
    return record


def cmd_baseline(
    config: RunConfig,
    checkpoint: Optional[Path] = None,
) -> Dict[str, Any]:
    """
    k-means and constrained k-means on raw features or pretrained latents.

    k-means is scored on all training rows, constrained k-means on its
    unlabeled assignments (labeled ones when nothing is unlabeled).
    """
    metrics_path = _prepare(config, config.output_dir)
    split = load_split(config)
    labeled, unlabeled = split.labeled, split.unlabeled
    labeled_x, unlabeled_x = labeled.samples, unlabeled.samples
    if checkpoint is not None:
        params = _load_matching(checkpoint, config, _training_data(split))
        labeled_x, unlabeled_x = embed(params, labeled_x), embed(params, unlabeled_x)

    K = split.num_classes
    training_labels = np.concatenate([_labels(labeled), _labels(unlabeled)])
    plain = kmeans(np.vstack([labeled_x, unlabeled_x]), K, config.seed)
    seeded = constrained_kmeans(unlabeled_x, labeled_x, _labels(labeled), K)
    if unlabeled.n_samples:
        seeded_record = evaluate(
            _labels(unlabeled),
            seeded.assignments,
            "constrained-kmeans",
        )
    else:
        seeded_record = evaluate(
            _labels(labeled),
            seeded.labeled_assignments,
            "constrained-kmeans",
        )
    records = {
        "kmeans": evaluate(training_labels, plain.assignments, "kmeans"),
        "constrained_kmeans": seeded_record,
    }
    with metrics_sink(metrics_path):
        for record in records.values():
            log_metrics(record)
    write_json(config.output_dir / "baseline.json", records)
    return records


def cmd_export_embeddings(config: RunConfig, checkpoint: Path) -> Path:
    """Latents of the whole dataset with true and predicted labels as CSV."""
    params, state = load_checkpoint(checkpoint)
    dataset = load_dataset(config.data, config.seed)
    check_features(params, dataset)
    latents = embed(params, dataset.samples)
    predicted = None if state is None else nearest_centers(latents, state)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    return write_embeddings(
        config.output_dir / EMBEDDINGS_FILE,
        latents,
        dataset.labels,
        predicted,
    )


def cmd_make_blobs(config: RunConfig, path: Optional[Path] = None) -> Path:
    """Write the configured blobs (unnormalised) as a CSV dataset."""
    blobs = config.data.blobs
    dataset = make_blobs(
        blobs.num_classes,
        blobs.per_cluster,
        blobs.dim,
        blobs.spread,
        config.seed,
    )
    return write_dataset_csv(path or config.output_dir / BLOBS_FILE, dataset)
