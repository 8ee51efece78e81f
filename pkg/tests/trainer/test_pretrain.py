import numpy as np
import pytest

from clusternet.core.exceptions import DimensionError
from clusternet.data import Dataset
from clusternet.network import NetworkParameters
from clusternet.trainer import TrainConfig, pretrain


def test_zero_epochs_leave_parameters_unchanged(
    small_params: NetworkParameters,
    blobs: Dataset,
) -> None:
    params, report = pretrain(small_params, blobs, TrainConfig(pretrain_epochs=0))
    assert report.epochs == 0
    for key, value in small_params.tensors.items():
        np.testing.assert_array_equal(params.tensors[key], value)


def test_pretrain_is_deterministic(
    small_params: NetworkParameters,
    blobs: Dataset,
    fast_config: TrainConfig,
) -> None:
    first, _ = pretrain(small_params, blobs, fast_config)
    second, _ = pretrain(small_params, blobs, fast_config)
    for key, value in first.tensors.items():
        np.testing.assert_array_equal(second.tensors[key], value)
    assert first.adam.step == second.adam.step > 0


def test_reconstruction_improves(
    small_params: NetworkParameters,
    blobs: Dataset,
) -> None:
    config = TrainConfig(
        pretrain_epochs=20,
        batch_size=32,
        labeled_per_batch=8,
        learning_rate=1e-2,
    )
    _, report = pretrain(small_params, blobs, config)
    losses = [b.reconstruction for b in report.losses]
    assert report.epochs == 20
    assert losses[-1] < losses[0]
    assert report.lambdas == [0.0] * 20
    assert report.state is None


def test_pretrain_leaves_input_parameters_untouched(
    small_params: NetworkParameters,
    blobs: Dataset,
    fast_config: TrainConfig,
) -> None:
    before = small_params.copy()
    pretrain(small_params, blobs, fast_config)
    for key, value in before.tensors.items():
        np.testing.assert_array_equal(small_params.tensors[key], value)


def test_feature_mismatch(small_params: NetworkParameters) -> None:
    with pytest.raises(DimensionError, match="3 features"):
        pretrain(small_params, Dataset(samples=np.zeros((4, 3))), TrainConfig())
