"""Instrumental value of information in finite decision problems.

A decision problem is an action set plus a utility table over actions and
states.  Observing evidence is worth the utility gain the decision-maker
attributes to switching from the action optimal under her prior to the one
optimal under her posterior.  Announcing a belief scored by a proper rule is
itself such a decision problem, which ties this module back to scoring-rule
divergences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beliefs import Belief
from .scoring import IgnoranceScore, ScoringRule

# Announcement grids clip endpoint beliefs for rules with unbounded scores so
# that the utility table stays finite.
_ENDPOINT_EPS = 1e-9


@dataclass(frozen=True)
class DecisionProblem:
    """Finite action set with a (actions x states) utility table."""

    actions: tuple
    utility: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        actions = tuple(self.actions)
        rows = tuple(tuple(float(u) for u in row) for row in self.utility)
        if not actions:
            raise ValueError("a decision problem needs at least one action")
        if len(rows) != len(actions):
            raise ValueError("utility table needs one row per action")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("utility table rows must have equal length")
        if not all(math.isfinite(u) for r in rows for u in r):
            raise ValueError("utility entries must be finite")
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "utility", rows)

    def utility_matrix(self) -> np.ndarray:
        return np.asarray(self.utility, dtype=float)


def _check_dims(dp: DecisionProblem, belief: Belief) -> None:
    if len(belief.probs) != len(dp.utility[0]):
        raise ValueError("belief dimension must match the utility table's states")


def _best_action_index(dp: DecisionProblem, belief: Belief) -> int:
    _check_dims(dp, belief)
    expected = dp.utility_matrix() @ belief.as_array()
    # np.argmax returns the first maximizer, which is the documented tie-break.
    return int(np.argmax(expected))


def optimal_action(dp: DecisionProblem, belief: Belief):
    """Expected-utility maximizing action; ties go to the lowest action index."""
    return dp.actions[_best_action_index(dp, belief)]


def instrumental_value(dp: DecisionProblem, posterior: Belief, prior: Belief) -> float:
    """Perceived utility gain from rebasing the action on the posterior.

    Nonnegative, and zero whenever both beliefs pick the same action.
    """
    u = dp.utility_matrix()
    q = posterior.as_array()
    row_post = u[_best_action_index(dp, posterior)]
    row_prior = u[_best_action_index(dp, prior)]
    return float(np.dot(q, row_post - row_prior))


def uncertainty(dp: DecisionProblem, belief: Belief) -> float:
    """Expected utility lost to not knowing the state exactly."""
    _check_dims(dp, belief)
    u = dp.utility_matrix()
    ex_post_best = u.max(axis=0)
    row = u[_best_action_index(dp, belief)]
    return float(np.dot(belief.as_array(), ex_post_best - row))


def generalized_scoring(dp: DecisionProblem, issued: Belief, actual: Belief) -> float:
    """Utility loss of acting on `issued` as judged by someone believing `actual`.

    Never smaller than the uncertainty of `actual`, mirroring how a scoring
    function dominates the entropy.
    """
    _check_dims(dp, actual)
    u = dp.utility_matrix()
    ex_post_best = u.max(axis=0)
    row = u[_best_action_index(dp, issued)]
    return float(np.dot(actual.as_array(), ex_post_best - row))


def announcement_problem(rule: ScoringRule, grid_size: int) -> DecisionProblem:
    """Decision problem whose actions are announced binary beliefs on a uniform
    grid, rewarded by how little they are penalized by the scoring rule.

    With a fine grid the instrumental value of moving between two on-grid
    beliefs recovers the rule's divergence.
    """
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    grid = np.linspace(0.0, 1.0, grid_size)
    clip = isinstance(rule, IgnoranceScore)
    rows = []
    for p in grid:
        effective = min(max(float(p), _ENDPOINT_EPS), 1.0 - _ENDPOINT_EPS) if clip else float(p)
        announced = Belief.binary(effective)
        row = tuple(
            rule.score(Belief.binary(1.0 if label == "1" else 0.0), label)
            - rule.score(announced, label)
            for label in ("0", "1")
        )
        rows.append(row)
    return DecisionProblem(tuple(float(p) for p in grid), tuple(rows))
