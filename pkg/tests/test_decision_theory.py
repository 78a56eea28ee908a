import numpy as np
import pytest

from peerlens.beliefs import Belief
from peerlens.decision_theory import (
    DecisionProblem,
    announcement_problem,
    generalized_scoring,
    instrumental_value,
    optimal_action,
    uncertainty,
)
from peerlens.scoring import BRIER, IGNORANCE, divergence

# Two actions, two states, action j pays 1 exactly when the state is j.
MATCHING = DecisionProblem(("match-0", "match-1"), ((1.0, 0.0), (0.0, 1.0)))


def brute_force_best(dp: DecisionProblem, belief: Belief):
    """Independent argmax: explicit loop with first-wins tie handling."""
    best_idx, best_eu = 0, None
    for idx, row in enumerate(dp.utility):
        eu = sum(u * p for u, p in zip(row, belief.probs))
        if best_eu is None or eu > best_eu:
            best_idx, best_eu = idx, eu
    return best_idx, best_eu


class TestOptimalAction:
    def test_majority_matching(self):
        assert optimal_action(MATCHING, Belief.binary(0.6)) == "match-1"
        assert optimal_action(MATCHING, Belief.binary(0.1)) == "match-0"

    def test_tie_breaks_to_lowest_index(self):
        assert optimal_action(MATCHING, Belief.binary(0.5)) == "match-0"
        flat = DecisionProblem(("a", "b"), ((1.0, 1.0), (1.0, 1.0)))
        assert optimal_action(flat, Belief.binary(0.8)) == "a"

    def test_matches_brute_force_on_random_problems(self):
        from peerlens.beliefs import StateSpace

        rng = np.random.default_rng(50)
        space = StateSpace(("a", "b", "c"))
        for _ in range(200):
            dp = DecisionProblem(
                tuple(range(4)),
                tuple(tuple(rng.uniform(-1, 1, size=3)) for _ in range(4)),
            )
            belief = Belief(space, tuple(rng.dirichlet([1.0, 1.0, 1.0])))
            idx, _ = brute_force_best(dp, belief)
            assert optimal_action(dp, belief) == dp.actions[idx]


class TestInstrumentalValue:
    def test_no_update_no_value(self):
        b = Belief.binary(0.3)
        assert instrumental_value(MATCHING, b, b) == 0.0

    def test_hand_example(self):
        # Prior favors state 1, posterior favors state 0: gain 0.9 - 0.1 = 0.8.
        v = instrumental_value(MATCHING, Belief.binary(0.1), Belief.binary(0.6))
        assert v == pytest.approx(0.8, abs=1e-12)

    def test_same_action_zero(self):
        v = instrumental_value(MATCHING, Belief.binary(0.9), Belief.binary(0.6))
        assert v == 0.0

    def test_nonnegative_on_random_problems(self):
        rng = np.random.default_rng(51)
        for _ in range(300):
            dp = DecisionProblem(
                tuple(range(3)),
                tuple(tuple(rng.uniform(-1, 1, size=2)) for _ in range(3)),
            )
            q = Belief.binary(rng.random())
            p = Belief.binary(rng.random())
            assert instrumental_value(dp, q, p) >= -1e-12


class TestUncertainty:
    def test_point_mass_has_none(self):
        assert uncertainty(MATCHING, Belief.binary(1.0)) == 0.0
        assert uncertainty(MATCHING, Belief.binary(0.0)) == 0.0

    def test_brute_force_values(self):
        # Best ex-post payoff is 1; best ex-ante payoff is max(p, 1-p).
        assert uncertainty(MATCHING, Belief.binary(0.5)) == pytest.approx(0.5)
        assert uncertainty(MATCHING, Belief.binary(0.7)) == pytest.approx(0.3)

    def test_weakly_concave(self):
        rng = np.random.default_rng(52)
        for _ in range(200):
            dp = DecisionProblem(
                tuple(range(3)),
                tuple(tuple(rng.uniform(-1, 1, size=2)) for _ in range(3)),
            )
            p1, p2, lam = rng.random(), rng.random(), rng.random()
            mixed = Belief.binary(lam * p1 + (1 - lam) * p2)
            gap = uncertainty(dp, mixed) - (
                lam * uncertainty(dp, Belief.binary(p1))
                + (1 - lam) * uncertainty(dp, Belief.binary(p2))
            )
            assert gap >= -1e-12


class TestGeneralizedScoring:
    def test_collapses_to_uncertainty(self):
        for p in (0.2, 0.5, 0.9):
            b = Belief.binary(p)
            assert generalized_scoring(MATCHING, b, b) == pytest.approx(
                uncertainty(MATCHING, b), abs=1e-15
            )

    def test_hand_example(self):
        v = generalized_scoring(MATCHING, Belief.binary(0.9), Belief.binary(0.2))
        assert v == pytest.approx(0.8, abs=1e-12)

    def test_dominates_uncertainty(self):
        rng = np.random.default_rng(53)
        for _ in range(300):
            dp = DecisionProblem(
                tuple(range(3)),
                tuple(tuple(rng.uniform(-1, 1, size=2)) for _ in range(3)),
            )
            r, p = Belief.binary(rng.random()), Belief.binary(rng.random())
            assert generalized_scoring(dp, r, p) - uncertainty(dp, p) >= -1e-12

    def test_linear_in_second_argument(self):
        issued = Belief.binary(0.8)
        p1, p2 = 0.1, 0.6
        mixed = Belief.binary(0.5 * p1 + 0.5 * p2)
        lhs = generalized_scoring(MATCHING, issued, mixed)
        rhs = 0.5 * generalized_scoring(
            MATCHING, issued, Belief.binary(p1)
        ) + 0.5 * generalized_scoring(MATCHING, issued, Belief.binary(p2))
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestAnnouncementProblem:
    def test_grid_actions(self):
        dp = announcement_problem(BRIER, 11)
        assert dp.actions == tuple(np.linspace(0.0, 1.0, 11))
        with pytest.raises(ValueError):
            announcement_problem(BRIER, 2)

    def test_self_announcement_worthless(self):
        dp = announcement_problem(BRIER, 101)
        for p in (0.0, 0.25, 0.5, 1.0):
            b = Belief.binary(p)
            assert instrumental_value(dp, b, b) == 0.0

    def test_recovers_brier_divergence(self):
        dp = announcement_problem(BRIER, 101)
        got = instrumental_value(dp, Belief.binary(0.7), Belief.binary(0.2))
        assert got == pytest.approx(0.25, abs=1e-4)

    def test_recovers_divergence_on_grid_pairs(self):
        rng = np.random.default_rng(54)
        dp = announcement_problem(BRIER, 101)
        grid = np.asarray(dp.actions)
        for _ in range(300):
            q = float(grid[rng.integers(grid.size)])
            p = float(grid[rng.integers(grid.size)])
            got = instrumental_value(dp, Belief.binary(q), Belief.binary(p))
            want = divergence(BRIER, Belief.binary(q), Belief.binary(p))
            assert abs(got - want) <= 1e-3

    def test_ignorance_grid_keeps_utilities_finite(self):
        dp = announcement_problem(IGNORANCE, 11)
        assert all(np.isfinite(u) for row in dp.utility for u in row)
        got = instrumental_value(dp, Belief.binary(0.7), Belief.binary(0.2))
        want = divergence(IGNORANCE, Belief.binary(0.7), Belief.binary(0.2))
        assert got == pytest.approx(want, abs=0.05)

    def test_refinement_never_hurts(self):
        # The 11-point grid is a subset of the 101-point grid, so the best
        # achievable expected utility can only improve with refinement.
        coarse = announcement_problem(BRIER, 11)
        fine = announcement_problem(BRIER, 101)
        rng = np.random.default_rng(55)
        for _ in range(100):
            belief = Belief.binary(rng.random())
            best_coarse = max(
                sum(u * p for u, p in zip(row, belief.probs)) for row in coarse.utility
            )
            best_fine = max(
                sum(u * p for u, p in zip(row, belief.probs)) for row in fine.utility
            )
            assert best_fine >= best_coarse - 1e-12


class TestConstruction:
    def test_requires_actions(self):
        with pytest.raises(ValueError):
            DecisionProblem((), ())

    def test_requires_finite_utilities(self):
        with pytest.raises(ValueError):
            DecisionProblem(("a",), ((float("inf"), 0.0),))

    def test_row_count_must_match_actions(self):
        with pytest.raises(ValueError):
            DecisionProblem(("a", "b"), ((1.0, 0.0),))

    def test_dimension_check_at_use(self):
        from peerlens.beliefs import StateSpace

        space = StateSpace(("a", "b", "c"))
        with pytest.raises(ValueError):
            optimal_action(MATCHING, Belief(space, (0.2, 0.3, 0.5)))
