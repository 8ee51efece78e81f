from itertools import permutations

import numpy as np
import pytest

from clusternet.core.exceptions import DimensionError
from clusternet.metrics import (
    AccuracyMode,
    LabelPair,
    accuracy,
    contingency,
    evaluate,
    nmi,
)


def test_nmi_identical_and_permuted() -> None:
    labels = np.array([0, 0, 1, 1, 2, 2])
    assert nmi(LabelPair(labels, labels)) == pytest.approx(1.0)
    assert nmi(LabelPair(labels, (labels + 1) % 3)) == pytest.approx(1.0)


def test_nmi_independent_labelings() -> None:
    pair = LabelPair(np.array([0, 0, 1, 1]), np.array([0, 1, 0, 1]))
    assert nmi(pair) == pytest.approx(0.0, abs=1e-12)


def test_nmi_bounds_and_symmetry(rng: np.random.Generator) -> None:
    for _ in range(20):
        a, b = rng.integers(0, 4, size=30), rng.integers(0, 5, size=30)
        score = nmi(LabelPair(a, b))
        assert 0.0 <= score <= 1.0
        assert score == pytest.approx(nmi(LabelPair(b, a)))


def test_direct_and_matched_accuracy() -> None:
    pair = LabelPair(np.array([0, 0, 1, 1]), np.array([1, 1, 0, 0]))
    assert accuracy(pair, AccuracyMode.DIRECT) == 0.0
    assert accuracy(pair, AccuracyMode.MATCHED) == 100.0


def test_matched_accuracy_is_best_permutation(rng: np.random.Generator) -> None:
    for _ in range(20):
        true, predicted = rng.integers(0, 4, size=25), rng.integers(0, 4, size=25)
        pair = LabelPair(true, predicted)
        best = max(
            np.sum(np.array(mapping)[predicted] == true)
            for mapping in permutations(range(4))
        )
        assert accuracy(pair, AccuracyMode.MATCHED) == pytest.approx(100 * best / 25)
        assert accuracy(pair, AccuracyMode.MATCHED) >= accuracy(pair)


def test_contingency() -> None:
    table = contingency(LabelPair(np.array([0, 0, 1]), np.array([1, 1, 2])))
    assert table.shape == (3, 3)
    assert table[0, 1] == 2
    assert table[1, 2] == 1
    assert table.sum() == 3


def test_labelings_must_match() -> None:
    with pytest.raises(DimensionError):
        LabelPair(np.array([0, 1]), np.array([0]))
    with pytest.raises(DimensionError):
        LabelPair(np.array([], dtype=int), np.array([], dtype=int))


def test_evaluate_record() -> None:
    record = evaluate(np.array([0, 1, 1]), np.array([0, 1, 1]), "holdout", epoch=2)
    assert record == {
        "split": "holdout",
        "epoch": 2,
        "nmi": pytest.approx(1.0),
        "acc_direct": 100.0,
        "acc_matched": 100.0,
        "n": 3,
    }
    assert "epoch" not in evaluate(np.array([0]), np.array([0]), "all")
