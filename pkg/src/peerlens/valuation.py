"""The four ways an experiment is valued before its outcome is known.

An outcome is worth the belief shift it causes: the divergence from the
observer's posterior back to her prior.  Weighting outcome values by a
predictive distribution yields four criteria, depending on whose beliefs
weight the outcomes and whose beliefs are shifted:

* private value to an investigator: her outcome odds, her belief shift;
* public value to an investigator: her outcome odds, the community's shift;
* private value to proposal reviewers: each reviewer's odds and own shift,
  averaged over reviewers;
* public value to proposal reviewers: each reviewer's odds against the
  community's shift, which collapses to the community predictive against the
  community shift.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .beliefs import Belief, CommunityBeliefs
from .experiments import (
    Definitive,
    Experiment,
    GaussianBinary,
    community_predictive,
    posterior,
    posterior_prob_curve,
    predictive,
    predictive_density_curve,
    quadrature_grid,
    state_densities,
)
from .scoring import ScoringRule, divergence


@dataclass(frozen=True)
class DivergenceValue:
    """Outcome value is the scoring-rule divergence from posterior to prior."""

    rule: ScoringRule


@dataclass(frozen=True)
class SurpriseIndicator:
    """Outcome value is 1 when the observer considered the revealed state the
    less likely one, else 0.  Only meaningful for definitive experiments."""


ValueModel = Union[DivergenceValue, SurpriseIndicator]


def _check_model(model: ValueModel, exp: Experiment) -> None:
    if isinstance(model, SurpriseIndicator) and not isinstance(exp, Definitive):
        raise ValueError("SurpriseIndicator only combines with definitive experiments")


def outcome_value(model: ValueModel, exp: Experiment, observer: Belief, y) -> float:
    """How much the observer thinks she learned from outcome y."""
    _check_model(model, exp)
    if isinstance(model, SurpriseIndicator):
        return 1.0 if observer.prob(y) < 0.5 else 0.0
    return divergence(model.rule, posterior(exp, observer, y), observer)


def community_outcome_value(
    model: ValueModel, exp: Experiment, community: CommunityBeliefs, y
) -> float:
    """Average value of outcome y across the community's members."""
    return sum(w * outcome_value(model, exp, b, y) for w, b in community.members)


def _gaussian_value_curve(
    model: DivergenceValue, exp: GaussianBinary, p: float, ys: np.ndarray
) -> np.ndarray:
    return model.rule.binary_divergence(posterior_prob_curve(exp, p, ys), p)


def private_value_investigator(
    model: ValueModel, exp: Experiment, investigator: Belief
) -> float:
    """Expected shift in the investigator's own beliefs, under her own odds."""
    _check_model(model, exp)
    if isinstance(exp, GaussianBinary):
        ys, weights = quadrature_grid(exp)
        p = investigator.probs[1]
        values = _gaussian_value_curve(model, exp, p, ys)
        return float(np.dot(weights, predictive_density_curve(exp, p, ys) * values))
    pred = predictive(exp, investigator)
    return pred.expect(lambda y: outcome_value(model, exp, investigator, y))


def public_value_investigator(
    model: ValueModel,
    exp: Experiment,
    investigator: Belief,
    community: CommunityBeliefs,
) -> float:
    """Expected shift in the community's beliefs, under the investigator's odds."""
    _check_model(model, exp)
    if isinstance(exp, GaussianBinary):
        ys, weights = quadrature_grid(exp)
        values = np.zeros_like(ys)
        for w, member in community.members:
            values += w * _gaussian_value_curve(model, exp, member.probs[1], ys)
        density = predictive_density_curve(exp, investigator.probs[1], ys)
        return float(np.dot(weights, density * values))
    pred = predictive(exp, investigator)
    return pred.expect(lambda y: community_outcome_value(model, exp, community, y))


def private_value_reviewers(
    model: ValueModel, exp: Experiment, community: CommunityBeliefs
) -> float:
    """Average over reviewers of the expected shift in their own beliefs."""
    return sum(
        w * private_value_investigator(model, exp, b) for w, b in community.members
    )


def public_value_reviewers(
    model: ValueModel, exp: Experiment, community: CommunityBeliefs
) -> float:
    """Average over reviewers of the expected community shift.

    Computed in its collapsed single-integral form: the community-average
    outcome value weighted by the community-average predictive.
    """
    _check_model(model, exp)
    if isinstance(exp, GaussianBinary):
        ys, weights = quadrature_grid(exp)
        values = np.zeros_like(ys)
        density = np.zeros_like(ys)
        for w, member in community.members:
            values += w * _gaussian_value_curve(model, exp, member.probs[1], ys)
            density += w * predictive_density_curve(exp, member.probs[1], ys)
        return float(np.dot(weights, density * values))
    pred = community_predictive(exp, community)
    return pred.expect(lambda y: community_outcome_value(model, exp, community, y))


def state_conditional_values(
    model: DivergenceValue, exp: GaussianBinary, observer_ps: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Expected outcome value for each observer belief, conditional on the
    data-generating state.

    Every valuation criterion for this experiment family is a belief-weighted
    combination of these two arrays, because the predictive is a mixture of
    the per-state outcome densities.  Grid searches lean on that identity.
    """
    ys, weights = quadrature_grid(exp)
    f0, f1 = state_densities(exp, ys)
    w0 = weights * f0
    w1 = weights * f1
    ps = np.atleast_1d(np.asarray(observer_ps, float))
    under0 = np.empty(ps.shape)
    under1 = np.empty(ps.shape)
    for i, p in enumerate(ps):
        values = _gaussian_value_curve(model, exp, float(p), ys)
        under0[i] = np.dot(w0, values)
        under1[i] = np.dot(w1, values)
    return under0, under1
