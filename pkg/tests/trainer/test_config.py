from typing import List

import pytest
from pydantic import ValidationError

from clusternet.trainer import LambdaMode, TrainConfig, lambda_for_epoch


def test_defaults_are_valid() -> None:
    config = TrainConfig()
    assert config.T1 < config.T2
    assert config.stop_gradient


@pytest.mark.parametrize(
    "overrides",
    [
        {"T1": 5, "T2": 5},
        {"T1": 8, "T2": 4},
        {"adam_betas": (0.9, 1.0)},
        {"batch_size": 16, "labeled_per_batch": 16},
        {"margin": 0.0},
        {"batch_size": 1},
        {"lambda_constant": 1.5},
    ],
)
def test_invalid_values_are_rejected(overrides: dict) -> None:
    """
    :param overrides: fields that break validation.
    """
    with pytest.raises(ValidationError):
        TrainConfig(**overrides)


def test_short_finetune_warns(log_messages: List[str]) -> None:
    TrainConfig(finetune_epochs=10, T1=2, T2=20)
    assert any("lambda never reaches 1" in message for message in log_messages)


def test_constant_mode_does_not_warn(log_messages: List[str]) -> None:
    TrainConfig(finetune_epochs=10, T2=20, lambda_mode=LambdaMode.CONSTANT)
    assert not log_messages


def test_lambda_for_epoch() -> None:
    annealed = TrainConfig(finetune_epochs=10, T1=2, T2=6)
    assert [lambda_for_epoch(t, annealed) for t in (0, 2, 4, 6, 9)] == [
        0.0,
        0.0,
        0.5,
        1.0,
        1.0,
    ]
    constant = TrainConfig(lambda_mode=LambdaMode.CONSTANT, lambda_constant=0.25)
    assert lambda_for_epoch(0, constant) == 0.25
