from typing import Any

import numpy as np
import pytest

from clusternet.clustering import (
    Assignment,
    ClusterState,
    assign_labeled,
    assign_unlabeled,
    assignment_probabilities,
    init_centers,
    nearest_centers,
    probabilities,
    probabilities_backward,
    reset_counts,
    update_center_labeled,
    update_center_unlabeled,
    update_centers,
)
from clusternet.core.exceptions import (
    CenterInitializationError,
    DimensionError,
    LabelRangeError,
)
from tests.utils import numeric_gradient, relative_error


def _state(*centers: tuple[float, ...]) -> ClusterState:
    return ClusterState.from_centers(np.array(centers, dtype=float).T)


def test_init_centers_are_class_means() -> None:
    latents = np.array([[0.0, 0.0], [2.0, 2.0], [5.0, 1.0]])
    state = init_centers(latents, np.array([0, 0, 1]), K=2)
    np.testing.assert_array_equal(state.centers[:, 0], [1.0, 1.0])
    np.testing.assert_array_equal(state.centers[:, 1], [5.0, 1.0])
    assert not state.labeled_counts.any()
    assert not state.unlabeled_counts.any()


def test_init_centers_single_latent_per_class() -> None:
    latents = np.array([[1.0, 2.0], [3.0, 4.0]])
    state = init_centers(latents, np.array([1, 0]), K=2)
    np.testing.assert_array_equal(state.centers.T, [[3.0, 4.0], [1.0, 2.0]])


def test_init_centers_empty_class() -> None:
    with pytest.raises(CenterInitializationError, match="class 2"):
        init_centers(np.zeros((2, 2)), np.array([0, 1]), K=3)


def test_assign_unlabeled_nearest() -> None:
    state = _state((0.0, 0.0), (10.0, 10.0))
    assert assign_unlabeled(np.array([1.0, 1.0]), state).index == 0
    assert assign_unlabeled(np.array([10.0, 10.0]), state).index == 1


def test_assign_unlabeled_tie_goes_to_lowest_index() -> None:
    state = _state((0.0, 0.0), (2.0, 0.0))
    assignment = assign_unlabeled(np.array([1.0, 0.0]), state)
    np.testing.assert_array_equal(assignment.one_hot, [1, 0])
    assert not assignment.is_labeled


def test_assign_labeled() -> None:
    np.testing.assert_array_equal(assign_labeled(2, 4).one_hot, [0, 0, 1, 0])
    np.testing.assert_array_equal(assign_labeled(0, 2).one_hot, [1, 0])
    assert assign_labeled(0, 2).is_labeled
    with pytest.raises(LabelRangeError):
        assign_labeled(5, 4)


@pytest.mark.parametrize(
    "one_hot",
    [[1, 1, 0], [0, 2, 0], [0, -1, 0], [0.0, 0.5, 0.0], [], [[1, 0], [0, 1]]],
)
def test_assignment_needs_one_hot(one_hot: Any) -> None:
    with pytest.raises(LabelRangeError):
        Assignment(one_hot=np.array(one_hot))
    assert Assignment(one_hot=np.array([0, 1, 0])).index == 1


def test_labeled_update_recurrence() -> None:
    state = _state((1.0, 1.0), (7.0, 7.0))
    update_center_labeled(state, np.array([3.0, 3.0]), 0)
    np.testing.assert_array_equal(state.centers[:, 0], [3.0, 3.0])
    assert state.labeled_counts[0] == 1

    update_center_labeled(state, np.array([5.0, 5.0]), 0)
    np.testing.assert_array_equal(state.centers[:, 0], [4.0, 4.0])
    assert state.labeled_counts[0] == 2
    np.testing.assert_array_equal(state.centers[:, 1], [7.0, 7.0])
    assert not state.unlabeled_counts.any()


def test_unlabeled_update_tracks_its_own_counts() -> None:
    state = _state((1.0, 1.0), (7.0, 7.0))
    update_center_unlabeled(state, np.array([3.0, 3.0]), Assignment.of(1, 2))
    np.testing.assert_array_equal(state.centers[:, 1], [3.0, 3.0])
    np.testing.assert_array_equal(state.unlabeled_counts, [0, 1])
    assert not state.labeled_counts.any()


def test_running_mean_property(rng: np.random.Generator) -> None:
    for _ in range(20):
        latents = rng.normal(size=(int(rng.integers(1, 50)), 3)) * 10
        state = ClusterState.from_centers(rng.normal(size=(3, 2)))
        update_centers(state, latents, np.zeros(len(latents), dtype=int), labeled=True)
        np.testing.assert_allclose(
            state.centers[:, 0],
            latents.mean(axis=0),
            rtol=0,
            atol=1e-12,
        )


def test_batched_update_matches_per_sample(rng: np.random.Generator) -> None:
    latents = rng.normal(size=(12, 2))
    ids = rng.integers(0, 3, size=12)
    batched = ClusterState.from_centers(rng.normal(size=(2, 3)))
    single = batched.copy()
    update_centers(batched, latents, ids, labeled=False)
    for latent, k in zip(latents, ids):
        update_center_unlabeled(single, latent, Assignment.of(int(k), 3))
    np.testing.assert_array_equal(batched.centers, single.centers)
    np.testing.assert_array_equal(batched.unlabeled_counts, single.unlabeled_counts)


def test_reset_counts() -> None:
    state = _state((0.0,), (1.0,))
    update_centers(state, np.array([[2.0]]), np.array([1]), labeled=True)
    reset_counts(state)
    assert not state.labeled_counts.any()


def test_probabilities_uniform_when_equidistant() -> None:
    state = _state((1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0))
    np.testing.assert_allclose(assignment_probabilities(np.zeros(2), state), [0.25] * 4)


def test_probabilities_analytic() -> None:
    offset = np.sqrt(np.log(2))
    state = _state((0.0,), (offset,))
    np.testing.assert_allclose(
        assignment_probabilities(np.zeros(1), state),
        [2 / 3, 1 / 3],
    )
    state = _state((0.0,), (offset,), (-offset,))
    np.testing.assert_allclose(
        assignment_probabilities(np.zeros(1), state),
        [0.5, 0.25, 0.25],
    )


def test_probabilities_stable_and_consistent(rng: np.random.Generator) -> None:
    state = ClusterState.from_centers(rng.normal(size=(3, 5)) * 20)
    latents = rng.normal(size=(30, 3)) * 20
    p = probabilities(latents, state)
    assert np.all(p > 0)
    np.testing.assert_allclose(p.sum(axis=1), 1.0, atol=1e-9)
    np.testing.assert_array_equal(p.argmax(axis=1), nearest_centers(latents, state))


def test_probabilities_backward_matches_finite_differences(
    rng: np.random.Generator,
) -> None:
    state = ClusterState.from_centers(rng.normal(size=(3, 4)))
    latents = rng.normal(size=(5, 3))
    weights = rng.normal(size=(5, 4))

    def loss() -> float:
        return float(np.sum(weights * probabilities(latents, state)))

    analytic = probabilities_backward(
        latents,
        state,
        probabilities(latents, state),
        weights,
    )
    assert relative_error(analytic, numeric_gradient(loss, latents)) <= 1e-6


def test_dimension_mismatch() -> None:
    with pytest.raises(DimensionError):
        nearest_centers(np.zeros((2, 3)), _state((0.0, 0.0), (1.0, 1.0)))
