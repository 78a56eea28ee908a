"""Probabilistic core types: state spaces, beliefs, and community belief mixtures.

A belief is a probability distribution over a finite set of competing claims
(states).  A community is a finite weighted mixture of beliefs held by the
reviewers/peers of a field.  All values are immutable after construction and
safe to share across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Constructors accept probability vectors whose sum is off by at most this
# much and renormalize them; anything worse is rejected.
SUM_TOLERANCE = 1e-9


def _normalized(values: tuple[float, ...], what: str) -> tuple[float, ...]:
    total = math.fsum(values)
    if not math.isfinite(total) or abs(total - 1.0) > SUM_TOLERANCE:
        raise ValueError(f"{what} must sum to 1 (got {total!r})")
    return tuple(v / total for v in values)


@dataclass(frozen=True)
class StateSpace:
    """An ordered set of at least two competing claims."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) < 2:
            raise ValueError("a state space needs at least 2 states")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("state labels must be unique")

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown state label {label!r}") from None


#: Default two-claim space; claim "1" plays the role of the focal claim.
BINARY = StateSpace(("0", "1"))


@dataclass(frozen=True)
class Belief:
    """A probability distribution over the states of a StateSpace."""

    space: StateSpace
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != len(self.space):
            raise ValueError("probability vector length must match state space")
        if any(p < 0.0 or p > 1.0 + SUM_TOLERANCE for p in probs):
            raise ValueError("probabilities must lie in [0, 1]")
        object.__setattr__(self, "probs", _normalized(probs, "belief probabilities"))

    @classmethod
    def binary(cls, p: float, space: StateSpace = BINARY) -> "Belief":
        """Belief over a two-state space given the probability of the second state."""
        if len(space) != 2:
            raise ValueError("binary beliefs need a two-state space")
        return cls(space, (1.0 - p, p))

    @classmethod
    def point_mass(cls, label: str, space: StateSpace) -> "Belief":
        probs = [0.0] * len(space)
        probs[space.index(label)] = 1.0
        return cls(space, tuple(probs))

    def prob(self, label: str) -> float:
        return self.probs[self.space.index(label)]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    def is_point_mass(self) -> bool:
        return any(p == 1.0 for p in self.probs)


@dataclass(frozen=True)
class CommunityBeliefs:
    """A finite weighted mixture of beliefs over one shared state space."""

    members: tuple[tuple[float, Belief], ...]

    def __post_init__(self) -> None:
        members = tuple((float(w), b) for w, b in self.members)
        if not members:
            raise ValueError("a community needs at least one member")
        if any(w <= 0.0 for w, _ in members):
            raise ValueError("member weights must be positive")
        space = members[0][1].space
        if any(b.space != space for _, b in members):
            raise ValueError("all members must share one state space")
        weights = _normalized(tuple(w for w, _ in members), "member weights")
        object.__setattr__(
            self, "members", tuple(zip(weights, (b for _, b in members)))
        )

    @classmethod
    def single(cls, belief: Belief) -> "CommunityBeliefs":
        return cls(((1.0, belief),))

    @classmethod
    def two_camps(
        cls,
        majority_fraction: float,
        majority_belief: Belief,
        minority_belief: Belief,
    ) -> "CommunityBeliefs":
        return cls(
            ((majority_fraction, majority_belief), (1.0 - majority_fraction, minority_belief))
        )

    @property
    def space(self) -> StateSpace:
        return self.members[0][1].space


def mean_belief(community: CommunityBeliefs) -> Belief:
    """Weight-averaged belief of the community."""
    acc = np.zeros(len(community.space))
    for weight, belief in community.members:
        acc += weight * belief.as_array()
    return Belief(community.space, tuple(acc))


def belief_stats(community: CommunityBeliefs, claim: str) -> tuple[float, float]:
    """Mean and standard deviation of the community's belief in one claim.

    The SD of a mixture of probabilities can never exceed sqrt(m * (1 - m))
    where m is the mean; that bound is attained by a 50/50 split between
    total conviction and total disbelief.
    """
    idx = community.space.index(claim)
    mean = math.fsum(w * b.probs[idx] for w, b in community.members)
    # Centered form of sum(w * p^2) - mean^2: immune to the cancellation that
    # otherwise inflates the sd of near-degenerate mixtures to ~1e-9.
    variance = math.fsum(w * (b.probs[idx] - mean) ** 2 for w, b in community.members)
    return mean, math.sqrt(max(0.0, variance))
