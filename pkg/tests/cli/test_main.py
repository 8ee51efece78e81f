from pathlib import Path

import pandas as pd
import pytest
import ujson

from clusternet import __main__ as entrypoint
from clusternet.cli import parse_args
from clusternet.core.constants import ExitCodes


@pytest.fixture(autouse=True)
def keep_test_logging(monkeypatch: pytest.MonkeyPatch) -> None:
    """
    Leave the loguru sinks of the test session in place.

    :param monkeypatch: pytest monkeypatch.
    """
    monkeypatch.setattr(entrypoint, "configure_logging", lambda: None)


def test_parse_args_collects_overrides() -> None:
    args, overrides = parse_args(
        ["train", "--seed", "4", "--hidden", "8", "4", "--t1", "2", "--repeat", "3"],
    )
    assert args.command == "train"
    assert args.repeat == 3
    assert overrides == {"seed": 4, "network.hidden": [8, 4], "train.T1": 2}


def test_make_blobs_command(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    out = tmp_path / "blobs.csv"
    code = entrypoint.main(
        ["make-blobs", "--blobs-k", "3", "--blobs-per-cluster", "5", "--out", str(out)],
    )
    assert code == ExitCodes.SUCCESS
    assert capsys.readouterr().out.strip() == str(out)
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["f0", "f1", "label"]
    assert len(frame) == 15


def test_train_prints_result(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    code = entrypoint.main(
        [
            "train",
            "--output-dir",
            str(tmp_path),
            "--blobs-k",
            "2",
            "--blobs-per-cluster",
            "10",
            "--labeled-frac",
            "0.3",
            "--hidden",
            "4",
            "--latent-dim",
            "2",
            "--pretrain-epochs",
            "1",
            "--finetune-epochs",
            "1",
            "--t1",
            "0",
            "--t2",
            "1",
            "--batch-size",
            "8",
            "--labeled-per-batch",
            "2",
        ],
    )
    assert code == ExitCodes.SUCCESS
    result = ujson.loads(capsys.readouterr().out)
    assert result["seed"] == 0
    assert "nmi" in result


@pytest.mark.parametrize(
    "argv",
    [
        ["train", "--config", "does-not-exist.json"],
        ["train", "--no-such-flag"],
        ["eval"],
        ["pretrain", "--data", "csv"],
        [],
    ],
)
def test_usage_errors_exit_with_one(argv: list) -> None:
    """
    :param argv: command lines that cannot run.
    """
    assert entrypoint.main(argv) == ExitCodes.USAGE_ERROR


def test_missing_data_file(tmp_path: Path) -> None:
    argv = [
        "pretrain",
        "--output-dir",
        str(tmp_path),
        "--data",
        "csv",
        "--csv",
        str(tmp_path / "absent.csv"),
    ]
    assert entrypoint.main(argv) == ExitCodes.USAGE_ERROR
