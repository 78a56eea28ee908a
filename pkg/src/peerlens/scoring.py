"""Strictly proper scoring rules and the quantities they induce.

A scoring rule prices a forecast against a realized state; larger scores mean
the outcome was less consistent with the forecast.  From a rule we derive the
divergence between two beliefs (the cost of forecasting with the wrong one),
the entropy of a belief (its residual uncertainty), and the scoring function
(expected score of issuing one belief when another is true).
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod

import numpy as np

from .beliefs import Belief


class InfiniteSurpriseError(ValueError):
    """Raised when a forecast assigned zero probability to the realized state."""


class ScoringRule(ABC):
    """Interface for scoring rules; built-ins are strictly proper."""

    name: str = "abstract"

    @abstractmethod
    def score(self, forecast: Belief, realized: str) -> float:
        """Penalty for having issued `forecast` when `realized` obtains."""

    def binary_divergence(self, posterior, prior):
        """Vectorized divergence d(posterior || prior) for binary beliefs.

        Arguments are probabilities of the second state, broadcastable arrays.
        The base implementation loops over the generic definition; built-in
        rules override it with closed forms for use in quadrature loops.
        """
        q, p = np.broadcast_arrays(np.asarray(posterior, float), np.asarray(prior, float))
        out = np.empty(q.shape)
        flat_q, flat_p, flat_out = q.ravel(), p.ravel(), out.ravel()
        for i in range(flat_q.size):
            flat_out[i] = divergence(self, Belief.binary(flat_q[i]), Belief.binary(flat_p[i]))
        return out if out.ndim else float(out)


class BrierScore(ScoringRule):
    """Quadratic score; half the squared distance between forecast and outcome
    indicator, so the two-state case reduces to the squared error on the
    probability of the realized-or-not claim."""

    name = "brier"

    def score(self, forecast: Belief, realized: str) -> float:
        idx = forecast.space.index(realized)
        return 0.5 * math.fsum(
            ((1.0 if j == idx else 0.0) - p) ** 2 for j, p in enumerate(forecast.probs)
        )

    def binary_divergence(self, posterior, prior):
        q = np.asarray(posterior, float)
        p = np.asarray(prior, float)
        return (q - p) ** 2


class IgnoranceScore(ScoringRule):
    """Surprisal in bits: -log2 of the probability given to the realized state."""

    name = "ignorance"

    def score(self, forecast: Belief, realized: str) -> float:
        p = forecast.prob(realized)
        if p <= 0.0:
            raise InfiniteSurpriseError(
                f"forecast gives zero probability to realized state {realized!r}"
            )
        return -math.log2(p)

    def binary_divergence(self, posterior, prior):
        q, p = np.broadcast_arrays(np.asarray(posterior, float), np.asarray(prior, float))
        if np.any((p <= 0.0) & (q > 0.0)) or np.any((p >= 1.0) & (q < 1.0)):
            raise InfiniteSurpriseError("prior lacks support where posterior has mass")
        out = np.zeros(np.broadcast(q, p).shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            one = np.where(q > 0.0, q * np.log2(np.where(q > 0.0, q, 1.0) / p), 0.0)
            zero = np.where(
                q < 1.0, (1.0 - q) * np.log2(np.where(q < 1.0, 1.0 - q, 1.0) / (1.0 - p)), 0.0
            )
        out = one + zero
        return out


BRIER = BrierScore()
IGNORANCE = IgnoranceScore()

RULES: dict[str, ScoringRule] = {BRIER.name: BRIER, IGNORANCE.name: IGNORANCE}


def rule_by_name(name: str) -> ScoringRule:
    try:
        return RULES[name]
    except KeyError:
        raise ValueError(
            f"unknown scoring rule {name!r}, expected one of: {', '.join(sorted(RULES))}"
        ) from None


def score(rule: ScoringRule, forecast: Belief, realized: str) -> float:
    return rule.score(forecast, realized)


def divergence(rule: ScoringRule, from_belief: Belief, to_belief: Belief) -> float:
    """Expected score penalty of forecasting `to_belief` when `from_belief` is true.

    Zero exactly when the two beliefs coincide; for the ignorance score this is
    the Kullback-Leibler divergence in bits.
    """
    if from_belief.space != to_belief.space:
        raise ValueError("beliefs must share a state space")
    total = 0.0
    for label, weight in zip(from_belief.space.labels, from_belief.probs):
        if weight == 0.0:
            continue
        total += weight * (rule.score(to_belief, label) - rule.score(from_belief, label))
    return total


def entropy(rule: ScoringRule, belief: Belief) -> float:
    """Expected self-score: the residual uncertainty carried by a belief."""
    return math.fsum(
        w * rule.score(belief, label)
        for label, w in zip(belief.space.labels, belief.probs)
        if w > 0.0
    )


def scoring_function(rule: ScoringRule, issued: Belief, actual: Belief) -> float:
    """Expected score of issuing `issued` when states are distributed as `actual`.

    Decomposes as entropy(actual) + divergence(actual || issued), so it is
    minimized over issued beliefs exactly at the true one.
    """
    if issued.space != actual.space:
        raise ValueError("beliefs must share a state space")
    return math.fsum(
        w * rule.score(issued, label)
        for label, w in zip(actual.space.labels, actual.probs)
        if w > 0.0
    )
