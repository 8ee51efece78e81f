from pathlib import Path
from typing import List

import numpy as np
import pandas as pd
import pytest

from clusternet.clustering import ClusterState, nearest_centers, update_centers
from clusternet.constraints.pairs import PAIR_COLUMNS
from clusternet.core.exceptions import CenterInitializationError
from clusternet.data import Dataset, SplitDataset, split
from clusternet.losses import lambda_schedule
from clusternet.network import NetworkParameters
from clusternet.trainer import (
    LambdaMode,
    TrainConfig,
    embed,
    finetune,
    train_clusternet,
)
from clusternet.trainer.finetune import PAIRS_FILE


def test_lambda_trace_follows_schedule(
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    _, _, report = train_clusternet(small_params, blobs_split, fast_config)
    expected = [lambda_schedule(t, fast_config.T1, fast_config.T2) for t in range(4)]
    assert report.lambdas == expected
    assert report.epochs == 4
    assert [e["split"] for e in report.evaluations] == ["unlabeled"] * 4


def test_before_ramp_only_labeled_terms_count(
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    _, _, report = train_clusternet(small_params, blobs_split, fast_config)
    first = report.losses[0]
    assert first.lambda_value == 0.0
    assert first.total == pytest.approx(
        first.pair_labeled + first.cluster_labeled + first.reconstruction,
    )
    assert first.cluster_unlabeled > 0


def test_constant_lambda(
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    config = fast_config.model_copy(
        update={"lambda_mode": LambdaMode.CONSTANT, "lambda_constant": 0.3},
    )
    _, _, report = train_clusternet(small_params, blobs_split, config)
    assert report.lambdas == [0.3] * 4


def test_labeled_only_run_separates_classes(
    small_params: NetworkParameters,
    blobs: Dataset,
) -> None:
    parts = split(blobs, labeled_frac=1.0, holdout_frac=0.0, seed=0)
    assert parts.unlabeled.n_samples == 0
    config = TrainConfig(
        finetune_epochs=20,
        T1=1,
        T2=5,
        batch_size=32,
        labeled_per_batch=8,
        learning_rate=1e-2,
    )
    params, state, report = train_clusternet(small_params, parts, config)

    predicted = nearest_centers(embed(params, parts.labeled.samples), state)
    assert np.mean(predicted == parts.labeled.labels) >= 0.95
    assert report.evaluations[-1]["split"] == "labeled"
    assert not state.unlabeled_counts.any()


def test_finetune_is_deterministic(
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    first_params, first_state, first_report = train_clusternet(
        small_params,
        blobs_split,
        fast_config,
    )
    second_params, second_state, second_report = train_clusternet(
        small_params,
        blobs_split,
        fast_config,
    )
    np.testing.assert_array_equal(first_state.centers, second_state.centers)
    for key, value in first_params.tensors.items():
        np.testing.assert_array_equal(second_params.tensors[key], value)
    assert first_report.history().equals(second_report.history())


def test_history_has_losses_and_scores(
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    _, _, report = train_clusternet(small_params, blobs_split, fast_config)
    history = report.history()
    assert len(history) == 4
    for column in ("phase", "epoch", "total", "lambda_value", "nmi", "acc_matched"):
        assert column in history.columns
    assert set(history["phase"]) == {"finetune"}


def test_pair_dump(
    tmp_path: Path,
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    config = fast_config.model_copy(update={"finetune_epochs": 1, "dump_pairs": True})
    train_clusternet(small_params, blobs_split, config, output_dir=tmp_path)

    frame = pd.read_csv(tmp_path / PAIRS_FILE)
    assert list(frame.columns) == PAIR_COLUMNS
    assert set(frame["source"]) == {"labeled", "predicted"}
    assert set(frame["epoch"]) == {0}
    labeled = frame[frame["source"] == "labeled"]
    assert labeled["j"].max() < fast_config.labeled_per_batch
    predicted = frame[frame["source"] == "predicted"]
    assert predicted["i"].min() >= fast_config.labeled_per_batch


def test_pair_dump_needs_output_dir(
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
    log_messages: List[str],
) -> None:
    config = fast_config.model_copy(update={"finetune_epochs": 1, "dump_pairs": True})
    train_clusternet(small_params, blobs_split, config)
    assert any("no output directory" in message for message in log_messages)


def test_periodic_checkpoints(
    tmp_path: Path,
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    config = fast_config.model_copy(update={"checkpoint_every": 2})
    train_clusternet(small_params, blobs_split, config, output_dir=tmp_path)
    written = sorted(path.name for path in tmp_path.glob("checkpoint-*.npz"))
    assert written == ["checkpoint-epoch002.npz", "checkpoint-epoch004.npz"]


def test_class_without_labels(
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    labeled = blobs_split.labeled
    partial = SplitDataset(
        labeled=labeled.subset(np.flatnonzero(labeled.labels != 3)),
        unlabeled=blobs_split.unlabeled,
        holdout=blobs_split.holdout,
    )
    with pytest.raises(CenterInitializationError, match="class 3"):
        train_clusternet(small_params, partial, fast_config)



def test_labeled_updates_stay_on_their_class(
    monkeypatch: pytest.MonkeyPatch,
    small_params: NetworkParameters,
    blobs_split: SplitDataset,
    fast_config: TrainConfig,
) -> None:
    pool = blobs_split.labeled
    assert pool.labels is not None
    truth = {row.tobytes(): int(label) for row, label in zip(pool.samples, pool.labels)}
    embedded: List[np.ndarray] = []
    matches: List[bool] = []

    def recording_embed(params: NetworkParameters, samples: np.ndarray) -> np.ndarray:
        embedded.append(np.asarray(samples))
        return embed(params, samples)

    def recording_update(
        state: ClusterState,
        latents: np.ndarray,
        cluster_ids: np.ndarray,
        labeled: bool,
    ) -> ClusterState:
        if labeled:
            rows = embedded[-1][: len(cluster_ids)]
            expected = [truth[row.tobytes()] for row in rows]
            matches.append(bool(np.array_equal(cluster_ids, expected)))
        return update_centers(state, latents, cluster_ids, labeled)

    monkeypatch.setattr(finetune, "embed", recording_embed)
    monkeypatch.setattr(finetune, "update_centers", recording_update)
    train_clusternet(small_params, blobs_split, fast_config)

    assert len(matches) == len(embedded) - 1 - fast_config.finetune_epochs
    assert all(matches)


def test_centers_follow_dropout_free_latents(
    small_params: NetworkParameters,
    blobs: Dataset,
) -> None:
    assert small_params.spec.dropout_rate > 0
    parts = split(blobs, labeled_frac=1.0, holdout_frac=0.0, seed=0)
    config = TrainConfig(
        finetune_epochs=1,
        T1=0,
        T2=1,
        batch_size=32,
        labeled_per_batch=8,
        learning_rate=1e-4,
    )
    params, state, _ = train_clusternet(small_params, parts, config)

    labels = parts.labeled.labels
    assert labels is not None
    latents = embed(params, parts.labeled.samples)
    for k in range(parts.num_classes):
        class_mean = latents[labels == k].mean(axis=0)
        np.testing.assert_allclose(state.centers[:, k], class_mean, atol=0.02)
