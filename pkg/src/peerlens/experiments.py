"""Experiment likelihood models, predictive distributions, and Bayesian updating.

Three likelihood families are supported: a two-state Gaussian signal (the
outcome is normally distributed around a state-specific mean with a shared
standard deviation), a definitive experiment whose outcome reveals the state
exactly, and an arbitrary finite outcome table.

Continuous outcomes are integrated on a fixed composite-Simpson grid spanning
eight signal standard deviations beyond both state means.  That grid is the
single integration backbone shared by every downstream expectation, which
keeps results deterministic and reproducible bit for bit.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .beliefs import BINARY, Belief, CommunityBeliefs, StateSpace, mean_belief

# Composite Simpson rule: node count (odd, so the interval count is even) and
# the half-width of the integration window in units of sigma_y.
QUADRATURE_NODES = 4001
QUADRATURE_SIGMAS = 8.0


class ImpossibleEvidenceError(ValueError):
    """Raised when conditioning on an outcome the prior assigns zero probability."""


@dataclass(frozen=True)
class GaussianBinary:
    """Outcome is Normal(mu0, sigma_y) under state "0" and Normal(mu1, sigma_y)
    under state "1"; sigma_y defaults to half the separation of the means."""

    mu0: float
    mu1: float
    sigma_y: float | None = None

    def __post_init__(self) -> None:
        if self.mu0 == self.mu1:
            raise ValueError("state means must differ")
        if self.sigma_y is None:
            object.__setattr__(self, "sigma_y", abs(self.mu0 - self.mu1) / 2.0)
        if self.sigma_y <= 0.0:
            raise ValueError("sigma_y must be positive")

    @property
    def space(self):
        return BINARY


@dataclass(frozen=True)
class Definitive:
    """The outcome is the state itself; evidence is conclusive."""


@dataclass(frozen=True)
class FiniteOutcome:
    """Row-stochastic outcome table: rows follow the state space order, columns
    index the finitely many outcomes.  States default to digit labels "0".."k"."""

    table: tuple[tuple[float, ...], ...]
    space: StateSpace | None = None

    def __post_init__(self) -> None:
        rows = []
        width = None
        for row in self.table:
            row = tuple(float(v) for v in row)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("outcome table rows must have equal length")
            if any(v < 0.0 for v in row):
                raise ValueError("outcome probabilities must be nonnegative")
            total = math.fsum(row)
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"outcome table rows must sum to 1 (got {total!r})")
            rows.append(tuple(v / total for v in row))
        object.__setattr__(self, "table", tuple(rows))
        if self.space is None:
            object.__setattr__(
                self, "space", StateSpace(tuple(str(i) for i in range(len(rows))))
            )
        if len(self.space) != len(rows):
            raise ValueError("outcome table must have one row per state")

    @property
    def n_outcomes(self) -> int:
        return len(self.table[0])


Experiment = Union[GaussianBinary, Definitive, FiniteOutcome]


def _normal_pdf(y, mu: float, sigma: float):
    z = (np.asarray(y, float) - mu) / sigma
    return np.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))


@functools.lru_cache(maxsize=None)
def quadrature_grid(exp: GaussianBinary) -> tuple[np.ndarray, np.ndarray]:
    """Simpson nodes and weights shared by all expectations over this experiment."""
    lo = min(exp.mu0, exp.mu1) - QUADRATURE_SIGMAS * exp.sigma_y
    hi = max(exp.mu0, exp.mu1) + QUADRATURE_SIGMAS * exp.sigma_y
    ys = np.linspace(lo, hi, QUADRATURE_NODES)
    h = (hi - lo) / (QUADRATURE_NODES - 1)
    weights = np.full(QUADRATURE_NODES, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    weights *= h / 3.0
    ys.flags.writeable = False
    weights.flags.writeable = False
    return ys, weights


def state_densities(exp: GaussianBinary, y) -> tuple[np.ndarray, np.ndarray]:
    """Outcome densities under each state, vectorized over y."""
    return _normal_pdf(y, exp.mu0, exp.sigma_y), _normal_pdf(y, exp.mu1, exp.sigma_y)


def posterior_prob_curve(exp: GaussianBinary, p: float, y) -> np.ndarray:
    """Posterior probability of state "1" after outcome y, for prior p, vectorized."""
    if p <= 0.0:
        return np.zeros(np.shape(y))
    if p >= 1.0:
        return np.ones(np.shape(y))
    f0, f1 = state_densities(exp, y)
    return p * f1 / (p * f1 + (1.0 - p) * f0)


def predictive_density_curve(exp: GaussianBinary, p: float, y) -> np.ndarray:
    f0, f1 = state_densities(exp, y)
    return p * f1 + (1.0 - p) * f0


@dataclass(frozen=True)
class DiscretePredictive:
    """Predictive distribution over finitely many outcomes."""

    outcomes: tuple
    probs: tuple[float, ...]

    def mass(self, y) -> float:
        try:
            return self.probs[self.outcomes.index(y)]
        except ValueError:
            raise ValueError(f"unknown outcome {y!r}") from None

    def support(self):
        return [(y, m) for y, m in zip(self.outcomes, self.probs) if m > 0.0]

    def expect(self, value_at: Callable) -> float:
        # Zero-probability outcomes contribute nothing and are never evaluated,
        # so impossible evidence cannot poison the expectation.
        return math.fsum(m * value_at(y) for y, m in self.support())


@dataclass(frozen=True)
class GaussianPredictive:
    """Two-component Gaussian mixture predictive tied to the shared Simpson grid."""

    exp: GaussianBinary
    p: float

    def pdf(self, y):
        return predictive_density_curve(self.exp, self.p, y)

    def expect(self, values_on_grid: np.ndarray) -> float:
        ys, weights = quadrature_grid(self.exp)
        return float(np.dot(weights, self.pdf(ys) * values_on_grid))


Predictive = Union[DiscretePredictive, GaussianPredictive]


def likelihood(exp: Experiment, y, x: str) -> float:
    """Probability (mass or density) of outcome y when x is the true state."""
    if isinstance(exp, GaussianBinary):
        idx = exp.space.index(x)
        mu = exp.mu1 if idx == 1 else exp.mu0
        return float(_normal_pdf(y, mu, exp.sigma_y))
    if isinstance(exp, Definitive):
        return 1.0 if y == x else 0.0
    if isinstance(exp, FiniteOutcome):
        row = exp.table[exp.space.index(x)]
        if not 0 <= y < len(row):
            raise ValueError(f"outcome index {y!r} out of range")
        return row[y]
    raise TypeError(f"unknown experiment type {type(exp).__name__}")


def posterior(exp: Experiment, prior: Belief, y) -> Belief:
    """Bayesian update of `prior` on observing outcome `y`."""
    if isinstance(exp, GaussianBinary):
        if prior.space != exp.space:
            raise ValueError("GaussianBinary experiments use the binary state space")
        f0, f1 = state_densities(exp, y)
        joint = (prior.probs[0] * float(f0), prior.probs[1] * float(f1))
    elif isinstance(exp, Definitive):
        joint = tuple(
            p if label == y else 0.0 for label, p in zip(prior.space.labels, prior.probs)
        )
        if y not in prior.space.labels:
            raise ValueError(f"unknown outcome {y!r}")
    elif isinstance(exp, FiniteOutcome):
        if prior.space != exp.space:
            raise ValueError("belief state space must match the experiment's")
        joint = tuple(p * row[y] for p, row in zip(prior.probs, exp.table))
    else:
        raise TypeError(f"unknown experiment type {type(exp).__name__}")
    total = math.fsum(joint)
    if total <= 0.0:
        raise ImpossibleEvidenceError(
            f"outcome {y!r} has zero probability under the prior"
        )
    return Belief(prior.space, tuple(j / total for j in joint))


def predictive(exp: Experiment, prior: Belief) -> Predictive:
    """Outcome distribution anticipated by someone holding `prior`."""
    if isinstance(exp, GaussianBinary):
        if prior.space != exp.space:
            raise ValueError("GaussianBinary experiments use the binary state space")
        return GaussianPredictive(exp, prior.probs[1])
    if isinstance(exp, Definitive):
        return DiscretePredictive(tuple(prior.space.labels), prior.probs)
    if isinstance(exp, FiniteOutcome):
        if prior.space != exp.space:
            raise ValueError("belief state space must match the experiment's")
        table = np.asarray(exp.table)
        masses = prior.as_array() @ table
        return DiscretePredictive(tuple(range(exp.n_outcomes)), tuple(masses))
    raise TypeError(f"unknown experiment type {type(exp).__name__}")


def community_predictive(exp: Experiment, community: CommunityBeliefs) -> Predictive:
    """Outcome distribution averaged over the community's beliefs.

    Equals the predictive of the mean belief because the mixture is linear in
    the prior.
    """
    return predictive(exp, mean_belief(community))
