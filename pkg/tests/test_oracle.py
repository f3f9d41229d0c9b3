import numpy as np
import pytest

from allgood import (
    BAD_MADE_GOOD,
    GOOD_MADE_BAD,
    BanditInstance,
    best_response,
    game_value,
    good_set,
    supergradient,
)
from allgood.model import MULTIPLICATIVE, good_set_from_means
from conftest import random_floored_weights, random_instance
from reference_oracle import brute_force_value


class TestHandComputedCases:
    def test_two_arm_bad_made_good(self):
        # means (0.9, 0.6), eps 0.05, uniform weights. Raising arm 1 while
        # lowering arm 0 onto a shared level: t = (0.5*0.6 + 0.5*0.85) = 0.725,
        # alternative (0.775, 0.725), cost 2 * 0.5 * 0.125^2 / 2 = 0.0078125.
        inst = BanditInstance(means=(0.9, 0.6), epsilon=0.05)
        br = best_response(inst, np.array([0.5, 0.5]))
        assert br.case == BAD_MADE_GOOD
        assert br.k == 1
        assert br.l == 1  # one top arm lowered
        assert br.t_bar == pytest.approx(0.725)
        assert np.allclose(br.alternative, [0.775, 0.725])
        assert br.cost == pytest.approx(0.0078125)

    def test_three_arm_good_made_bad(self):
        # means (0.9, 0.85, 0.2), eps 0.1, uniform weights. Dragging arm 1
        # down while raising arm 0: t = (0.85 + (0.9 - 0.1)) / 2 = 0.825,
        # cost (1/3) * (0.025^2 + 0.025^2) / 2 = 1/4800. The symmetric flip
        # of arm 0 costs 0.001875 and loses.
        inst = BanditInstance(means=(0.9, 0.85, 0.2), epsilon=0.1)
        br = best_response(inst, np.full(3, 1 / 3))
        assert br.case == GOOD_MADE_BAD
        assert br.k == 1
        assert br.l == 0
        assert br.t_bar == pytest.approx(0.825)
        assert np.allclose(br.alternative, [0.925, 0.825, 0.2])
        assert br.cost == pytest.approx(1.0 / 4800.0)

    def test_multiplicative_bad_made_good(self):
        # means (10, 5), eps 0.2, uniform weights. t = ((0.8^2*0.5*5) +
        # (0.8*0.5*10)) / (0.8^2*0.5 + 0.5) = 280/41; arm 0 drops to t/0.8,
        # cost 0.25 * ((60/41)^2 + (75/41)^2) = 9225/6724.
        inst = BanditInstance(means=(10.0, 5.0), epsilon=0.2, mode=MULTIPLICATIVE)
        br = best_response(inst, np.array([0.5, 0.5]))
        assert br.case == BAD_MADE_GOOD
        assert br.k == 1
        assert br.t_bar == pytest.approx(280.0 / 41.0)
        assert np.allclose(br.alternative, [350.0 / 41.0, 280.0 / 41.0])
        assert br.cost == pytest.approx(9225.0 / 6724.0)

    def test_boundary_arm_gives_zero_cost(self):
        # arm 1 sits exactly on the threshold 0.85; flipping it is free
        inst = BanditInstance(means=(0.9, 0.85), epsilon=0.05)
        assert game_value(inst, np.array([0.5, 0.5])) == pytest.approx(0.0, abs=1e-15)


class TestAgainstBruteForce:
    def test_hand_cases(self):
        cases = [
            (BanditInstance(means=(0.9, 0.6), epsilon=0.05), [0.5, 0.5]),
            (BanditInstance(means=(0.9, 0.85, 0.2), epsilon=0.1), [1 / 3] * 3),
            (BanditInstance(means=(10.0, 5.0), epsilon=0.2, mode=MULTIPLICATIVE), [0.5, 0.5]),
        ]
        for inst, w in cases:
            assert game_value(inst, np.array(w)) == pytest.approx(
                brute_force_value(inst, w), rel=1e-9
            )

    def test_random_instances(self):
        # a lighter companion to the 50-instance acceptance sweep
        rng = np.random.default_rng(42)
        for _ in range(10):
            inst = random_instance(rng)
            w = random_floored_weights(rng, inst.n_arms)
            ref = brute_force_value(inst, w)
            assert game_value(inst, w) == pytest.approx(ref, rel=1e-6, abs=1e-12)


class TestResponseStructure:
    def test_alternative_changes_good_set_up_to_boundary(self):
        # the minimizer sits on the boundary of the alternative region:
        # nudging the flipped arm by any eps changes the answer
        rng = np.random.default_rng(9)
        for _ in range(25):
            inst = random_instance(rng)
            w = random_floored_weights(rng, inst.n_arms)
            br = best_response(inst, w)
            lam = br.alternative.copy()
            nudge = 1e-9 if br.case == BAD_MADE_GOOD else -1e-9
            lam[br.k] += nudge
            assert good_set_from_means(lam, inst.epsilon, inst.mode) != good_set(inst)

    def test_supergradient_matches_cost_and_support(self):
        rng = np.random.default_rng(10)
        for _ in range(25):
            inst = random_instance(rng)
            w = random_floored_weights(rng, inst.n_arms)
            br = best_response(inst, w)
            g = supergradient(inst, w)
            assert (g >= 0).all()
            assert float(w @ g) == pytest.approx(br.cost, rel=1e-12, abs=1e-15)
            untouched = br.alternative == inst.means_array()
            assert (g[untouched] == 0).all()

    def test_flipped_arm_class_matches_case(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            inst = random_instance(rng)
            w = random_floored_weights(rng, inst.n_arms)
            br = best_response(inst, w)
            if br.case == GOOD_MADE_BAD:
                assert br.k in good_set(inst)
                assert br.l in good_set(inst)
            else:
                assert br.k not in good_set(inst)
                assert 1 <= br.l <= inst.n_arms - 1

    def test_cost_nonnegative_and_deterministic(self):
        inst = BanditInstance(means=(0.7, 0.4, 0.3), epsilon=0.2)
        w = np.array([0.5, 0.3, 0.2])
        a = best_response(inst, w)
        b = best_response(inst, w)
        assert a.cost == b.cost >= 0
        assert np.array_equal(a.alternative, b.alternative)


class TestWeightValidation:
    def test_rejects_zero_weight(self):
        inst = BanditInstance(means=(0.9, 0.6), epsilon=0.05)
        with pytest.raises(ValueError, match="positive"):
            best_response(inst, np.array([1.0, 0.0]))

    def test_rejects_wrong_length(self):
        inst = BanditInstance(means=(0.9, 0.6), epsilon=0.05)
        with pytest.raises(ValueError, match="shape"):
            best_response(inst, np.array([0.5, 0.25, 0.25]))
