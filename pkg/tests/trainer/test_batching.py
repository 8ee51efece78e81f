import numpy as np

from clusternet.trainer.batching import mixed_batches, shuffled_batches


def test_shuffled_batches_cover_every_row(rng: np.random.Generator) -> None:
    batches = list(shuffled_batches(10, 4, rng))
    assert [len(rows) for rows in batches] == [4, 4, 2]
    assert sorted(np.concatenate(batches)) == list(range(10))


def test_mixed_batches(rng: np.random.Generator) -> None:
    batches = list(mixed_batches(5, 20, 8, 3, rng))
    assert [len(u) for _, u in batches] == [5, 5, 5, 5]
    assert sorted(np.concatenate([u for _, u in batches])) == list(range(20))
    for labeled, _ in batches:
        assert len(labeled) == 3
        assert len(set(labeled)) == 3
        assert labeled.max() < 5


def test_mixed_batches_cap_labeled_share(rng: np.random.Generator) -> None:
    batches = list(mixed_batches(2, 12, 8, 4, rng))
    assert all(len(labeled) == 2 for labeled, _ in batches)
    assert [len(u) for _, u in batches] == [6, 6]


def test_mixed_batches_without_unlabeled(rng: np.random.Generator) -> None:
    batches = list(mixed_batches(10, 0, 4, 2, rng))
    assert [len(labeled) for labeled, _ in batches] == [4, 4, 2]
    assert all(u.size == 0 for _, u in batches)
