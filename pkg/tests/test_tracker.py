import dataclasses

import numpy as np
import pytest

from allgood import (
    BanditInstance,
    TrackerState,
    good_set,
    next_arm,
    run,
    stopping_threshold,
    z_statistic,
)
from allgood.tracker import TrackingInvariantError, _check_invariants


def _record_key(record):
    # everything except the wall-clock time, which is not reproducible
    return dataclasses.replace(record, wall_time=0.0)


class TestStoppingThreshold:
    def test_hand_computed_value(self):
        # log(10) + (2/2) log(log(e + 1000))
        expected = np.log(10.0) + np.log(np.log(np.e + 1000.0))
        assert stopping_threshold(100, 0.1, 2) == pytest.approx(expected)
        assert stopping_threshold(100, 0.1, 2) == pytest.approx(4.23556, abs=1e-4)

    def test_monotone_in_t_and_delta(self):
        assert stopping_threshold(200, 0.1, 3) > stopping_threshold(100, 0.1, 3)
        assert stopping_threshold(100, 0.01, 3) > stopping_threshold(100, 0.1, 3)

    def test_validation(self):
        with pytest.raises(ValueError):
            stopping_threshold(0, 0.1, 2)
        with pytest.raises(ValueError):
            stopping_threshold(10, 1.0, 2)


class TestZStatistic:
    def test_hand_computed_value(self):
        # empirical means equal to (0.9, 0.6), eps 0.05, 50/50 pulls at
        # t=100: Z = 100 * 0.03125 * 0.5 * 0.5 = 0.78125
        state = TrackerState(
            t=100,
            pull_counts=np.array([50, 50]),
            reward_sums=np.array([45.0, 30.0]),
            empirical_means=np.array([0.9, 0.6]),
            cumulative_weights=np.array([50.0, 50.0]),
        )
        inst = BanditInstance(means=(0.9, 0.6), epsilon=0.05)
        assert z_statistic(state, inst) == pytest.approx(0.78125)

    def test_requires_every_arm_pulled(self):
        state = TrackerState(
            t=2,
            pull_counts=np.array([2, 0]),
            reward_sums=np.array([1.0, 0.0]),
            empirical_means=np.array([0.5, np.nan]),
            cumulative_weights=np.array([1.0, 1.0]),
        )
        with pytest.raises(ValueError, match="pulled"):
            z_statistic(state, BanditInstance(means=(0.9, 0.6), epsilon=0.05))

    def test_negative_empirical_means_ok_in_multiplicative_mode(self):
        state = TrackerState(
            t=10,
            pull_counts=np.array([5, 5]),
            reward_sums=np.array([5.0, -1.0]),
            empirical_means=np.array([1.0, -0.2]),
            cumulative_weights=np.array([5.0, 5.0]),
        )
        inst = BanditInstance(means=(1.0, 0.5), epsilon=0.5, mode="multiplicative")
        assert np.isfinite(z_statistic(state, inst))


class TestNextArm:
    def test_largest_deficit_wins(self):
        state = TrackerState(
            t=10,
            pull_counts=np.array([3, 7]),
            reward_sums=np.zeros(2),
            empirical_means=np.zeros(2),
            cumulative_weights=np.array([6.0, 4.0]),
        )
        assert next_arm(state) == 0

    def test_ties_break_to_lowest_index(self):
        state = TrackerState(
            t=10,
            pull_counts=np.array([5, 5]),
            reward_sums=np.zeros(2),
            empirical_means=np.zeros(2),
            cumulative_weights=np.array([5.0, 5.0]),
        )
        assert next_arm(state) == 0


class TestInvariantChecks:
    def test_violation_raises(self):
        state = TrackerState(
            t=10_000,
            pull_counts=np.array([9_999, 1]),
            reward_sums=np.zeros(2),
            empirical_means=np.zeros(2),
            cumulative_weights=np.array([5_000.0, 5_000.0]),
        )
        with pytest.raises(TrackingInvariantError):
            _check_invariants(state)

    def test_balanced_state_passes(self):
        state = TrackerState(
            t=100,
            pull_counts=np.array([50, 50]),
            reward_sums=np.zeros(2),
            empirical_means=np.zeros(2),
            cumulative_weights=np.array([50.0, 50.0]),
        )
        _check_invariants(state)


class TestRun:
    def test_deterministic_replay(self):
        inst = BanditInstance(means=(0.9, 0.6), epsilon=0.05)
        a = run(inst, delta=0.01, seed=7)
        b = run(inst, delta=0.01, seed=7)
        assert _record_key(a) == _record_key(b)

    def test_easy_instance_answers_correctly(self):
        inst = BanditInstance(means=(2.0, 0.0), epsilon=0.5)
        record = run(inst, delta=1e-3, seed=0)
        assert record.correct
        assert record.answer == good_set(inst)
        assert not record.capped
        assert sum(record.pull_counts) == record.stopping_time

    def test_smaller_delta_takes_longer_on_average(self):
        inst = BanditInstance(means=(0.9, 0.6), epsilon=0.05)
        loose = [run(inst, delta=0.1, seed=s).stopping_time for s in range(5)]
        tight = [run(inst, delta=1e-5, seed=s).stopping_time for s in range(5)]
        assert np.mean(tight) > np.mean(loose)

    def test_tau_max_caps_run(self):
        inst = BanditInstance(means=(0.5, 0.49), epsilon=0.005)
        record = run(inst, delta=1e-3, seed=0, tau_max=50)
        assert record.capped
        assert record.stopping_time == 50

    def test_uniform_rule_round_robins(self):
        inst = BanditInstance(means=(0.9, 0.6, 0.3), epsilon=0.05)
        record = run(inst, delta=1e-3, seed=2, uniform=True, tau_max=10_000)
        counts = np.array(record.pull_counts)
        assert counts.max() - counts.min() <= 1

    def test_stop_stride_delays_stopping(self):
        inst = BanditInstance(means=(2.0, 0.0), epsilon=0.5)
        base = run(inst, delta=1e-3, seed=4)
        strided = run(inst, delta=1e-3, seed=4, stop_stride=64)
        assert strided.stopping_time % 64 == 0
        assert strided.stopping_time >= base.stopping_time

    def test_multiplicative_instance(self):
        inst = BanditInstance(means=(2.0, 1.8, 0.3), epsilon=0.5, mode="multiplicative")
        record = run(inst, delta=1e-3, seed=3)
        assert record.correct
        assert record.answer == good_set(inst)

    def test_invariants_hold_during_runs(self):
        # run() raises TrackingInvariantError on any violation; these calls
        # completing is the assertion
        for seed in range(3):
            run(BanditInstance(means=(0.9, 0.6), epsilon=0.05), delta=1e-4, seed=seed)
            run(
                BanditInstance(means=(1.0, 1.0, 1.0, 1.0, 0.05), epsilon=0.9),
                delta=0.1,
                seed=seed,
            )

    def test_delta_validation(self):
        with pytest.raises(ValueError):
            run(BanditInstance(means=(0.9, 0.6), epsilon=0.05), delta=1.5)
