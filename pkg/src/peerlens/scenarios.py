"""Named scenarios: worked examples, value landscapes, the question-choice
community simulation, optimal-question search, and executable theorem checks.

The simulation world: a pool of binary questions, each characterized by how a
community of peers splits into a majority and a minority camp over the two
competing claims.  Investigators sample a handful of candidate questions, get
assigned a belief by joining one of the camps, and pursue whichever candidate
scores highest under a chosen valuation criterion.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .beliefs import Belief, CommunityBeliefs, StateSpace, belief_stats
from .decision_theory import DecisionProblem, announcement_problem, instrumental_value
from .experiments import Definitive, GaussianBinary
from .scoring import (
    BRIER,
    IGNORANCE,
    ScoringRule,
    divergence,
    entropy,
    scoring_function,
)
from .valuation import (
    DivergenceValue,
    SurpriseIndicator,
    outcome_value,
    private_value_investigator,
    private_value_reviewers,
    public_value_investigator,
    public_value_reviewers,
    state_conditional_values,
)

# Beliefs "held almost beyond doubt" are clamped this far away from certainty,
# and grid searches use the same clamp for degenerate camp beliefs or weights.
EPSILON = 1e-9

DEFAULT_EXPERIMENT = GaussianBinary(0.0, 2.0, 1.0)

CRITERIA = ("investigator-public", "reviewer-private", "reviewer-public")


@dataclass(frozen=True)
class Question:
    """A binary claim plus the community's two-camp belief structure over it.

    Camp beliefs are probabilities assigned to the claim coded "1"."""

    majority_fraction: float
    majority_belief: float
    minority_belief: float

    def __post_init__(self) -> None:
        if not 0.5 <= self.majority_fraction <= 1.0:
            raise ValueError("majority fraction must lie in [0.5, 1]")
        for b in (self.majority_belief, self.minority_belief):
            if not 0.0 <= b <= 1.0:
                raise ValueError("camp beliefs must lie in [0, 1]")

    def community(self) -> CommunityBeliefs:
        majority = Belief.binary(self.majority_belief)
        if self.majority_fraction == 1.0:
            return CommunityBeliefs.single(majority)
        return CommunityBeliefs.two_camps(
            self.majority_fraction, majority, Belief.binary(self.minority_belief)
        )


# ---------------------------------------------------------------------------
# Worked example: a definitive experiment the whole field thinks it can predict
# ---------------------------------------------------------------------------

MARS_SPACE = StateSpace(("no-life", "life"))


@dataclass(frozen=True)
class MarsValues:
    private_inv: float
    public_inv_no_life: float
    public_inv_life: float
    private_rev: float
    public_rev: float

    def as_rows(self) -> list[tuple[str, float]]:
        return [
            ("private_inv", self.private_inv),
            ("public_inv_no_life", self.public_inv_no_life),
            ("public_inv_life", self.public_inv_life),
            ("private_rev", self.private_rev),
            ("public_rev", self.public_rev),
        ]


def mars_scenario() -> MarsValues:
    """Definitive life-detection experiment in a field split 70/30, where every
    member is all but certain of their camp's claim and values only outcomes
    that force someone to switch sides."""
    exp = Definitive()
    model = SurpriseIndicator()
    doubter = Belief.binary(EPSILON, MARS_SPACE)
    believer = Belief.binary(1.0 - EPSILON, MARS_SPACE)
    community = CommunityBeliefs.two_camps(0.7, doubter, believer)
    return MarsValues(
        private_inv=private_value_investigator(model, exp, doubter),
        public_inv_no_life=public_value_investigator(model, exp, doubter, community),
        public_inv_life=public_value_investigator(model, exp, believer, community),
        private_rev=private_value_reviewers(model, exp, community),
        public_rev=public_value_reviewers(model, exp, community),
    )


# ---------------------------------------------------------------------------
# Lone-wolf landscapes
# ---------------------------------------------------------------------------


def lone_wolf_private_landscape(
    grid: int,
    experiment: GaussianBinary = DEFAULT_EXPERIMENT,
    rule: ScoringRule = BRIER,
) -> tuple[np.ndarray, np.ndarray]:
    """Private value of the experiment across investigator beliefs p."""
    if grid < 3:
        raise ValueError("grid must be at least 3")
    model = DivergenceValue(rule)
    ps = np.linspace(0.0, 1.0, grid)
    values = np.array(
        [private_value_investigator(model, experiment, Belief.binary(p)) for p in ps]
    )
    return ps, values


def lone_wolf_public_landscape(
    grid: int,
    experiment: GaussianBinary = DEFAULT_EXPERIMENT,
    rule: ScoringRule = BRIER,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Public value across investigator beliefs p when all peers believe r.

    Returns (ps, rs, values) with values[i, j] for belief p_i against peers r_j.
    """
    if grid < 3:
        raise ValueError("grid must be at least 3")
    model = DivergenceValue(rule)
    ps = np.linspace(0.0, 1.0, grid)
    rs = np.linspace(0.0, 1.0, grid)
    values = np.empty((grid, grid))
    for j, r in enumerate(rs):
        peers = CommunityBeliefs.single(Belief.binary(r))
        for i, p in enumerate(ps):
            values[i, j] = public_value_investigator(
                model, experiment, Belief.binary(p), peers
            )
    return ps, rs, values


# ---------------------------------------------------------------------------
# Question sampling and the community simulation
# ---------------------------------------------------------------------------


def sample_question(rng) -> Question:
    """Draw a question: majority fraction uniform on [0.5, 1], camp beliefs
    independent uniform on [0, 1], using three consecutive draws."""
    m = 0.5 + 0.5 * rng.random()
    majority = rng.random()
    minority = rng.random()
    return Question(m, majority, minority)


def assign_investigator_belief(question: Question, rng) -> float:
    """Place the investigator in a camp: majority with the majority's odds."""
    if rng.random() < question.majority_fraction:
        return question.majority_belief
    return question.minority_belief


@dataclass(frozen=True)
class SimulationConfig:
    n_investigators: int = 50
    n_candidates: int = 15
    criterion: str = "reviewer-private"
    experiment: GaussianBinary | Definitive = DEFAULT_EXPERIMENT
    rule: ScoringRule = BRIER
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.n_investigators < 1 or self.n_candidates < 1:
            raise ValueError("counts must be at least 1")
        if self.criterion not in CRITERIA:
            raise ValueError(
                f"unknown criterion {self.criterion!r}, expected one of: "
                + ", ".join(CRITERIA)
            )


@dataclass(frozen=True)
class ChoiceRecord:
    question: Question
    investigator_belief: float
    favored_claim: str
    community_mean: float
    community_sd: float
    criterion_value: float


def question_value(
    criterion: str,
    question: Question,
    experiment: GaussianBinary | Definitive = DEFAULT_EXPERIMENT,
    rule: ScoringRule = BRIER,
    investigator_belief: float | None = None,
) -> float:
    """Score one question under a valuation criterion.

    Only the investigator-public criterion uses the investigator's own belief;
    reviewer criteria depend on the community alone.
    """
    model = DivergenceValue(rule)
    community = question.community()
    if criterion == "investigator-public":
        if investigator_belief is None:
            raise ValueError("investigator-public needs the investigator's belief")
        return public_value_investigator(
            model, experiment, Belief.binary(investigator_belief), community
        )
    if criterion == "reviewer-private":
        return private_value_reviewers(model, experiment, community)
    if criterion == "reviewer-public":
        return public_value_reviewers(model, experiment, community)
    raise ValueError(f"unknown criterion {criterion!r}")


def investigator_substream(seed: int, index: int) -> np.random.Generator:
    """Deterministic per-investigator stream: PCG64 seeded by hashing (seed, i),
    so any parallel schedule reproduces the serial draws."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def investigator_candidates(
    cfg: SimulationConfig, index: int
) -> list[tuple[Question, float]]:
    """The candidate questions one investigator samples, with her assigned
    belief per question.  Draw order per candidate: three question draws,
    then one camp-assignment draw."""
    rng = investigator_substream(cfg.rng_seed, index)
    out = []
    for _ in range(cfg.n_candidates):
        question = sample_question(rng)
        belief = assign_investigator_belief(question, rng)
        out.append((question, belief))
    return out


def _favored_claim(investigator_belief: float) -> str:
    # Exactly even beliefs favor claim "1"; measure zero under the sampler.
    return "1" if investigator_belief >= 0.5 else "0"


def _choose(cfg: SimulationConfig, index: int) -> ChoiceRecord:
    best_value = -math.inf
    best: tuple[Question, float] | None = None
    for question, belief in investigator_candidates(cfg, index):
        value = question_value(
            cfg.criterion, question, cfg.experiment, cfg.rule, belief
        )
        if value > best_value:
            best_value = value
            best = (question, belief)
    assert best is not None
    question, belief = best
    favored = _favored_claim(belief)
    mean, sd = belief_stats(question.community(), favored)
    return ChoiceRecord(question, belief, favored, mean, sd, best_value)


def worker_count() -> int:
    """Worker cap from the PEERLENS_THREADS environment variable (default 1)."""
    raw = os.environ.get("PEERLENS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_simulation(cfg: SimulationConfig, workers: int | None = None) -> list[ChoiceRecord]:
    """One chosen question per investigator; deterministic given the seed.

    Investigators are independent work items on isolated substreams, so the
    output is identical for any worker count.
    """
    if workers is None:
        workers = worker_count()
    workers = min(workers, cfg.n_investigators)
    indices = range(cfg.n_investigators)
    if workers <= 1:
        return [_choose(cfg, i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: _choose(cfg, i), indices))


# ---------------------------------------------------------------------------
# Optimal questions by exhaustive grid search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OptimalQuestion:
    criterion: str
    question: Question
    investigator_belief: float | None
    value: float


def _clamped_belief_grid(grid: int) -> np.ndarray:
    qs = np.linspace(0.0, 1.0, grid)
    qs[0] = EPSILON
    qs[-1] = 1.0 - EPSILON
    return qs


def _state_values(
    model: DivergenceValue, experiment: GaussianBinary | Definitive, qs: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(experiment, GaussianBinary):
        return state_conditional_values(model, experiment, qs)
    under0 = np.array(
        [outcome_value(model, experiment, Belief.binary(q), "0") for q in qs]
    )
    under1 = np.array(
        [outcome_value(model, experiment, Belief.binary(q), "1") for q in qs]
    )
    return under0, under1


def optimize_question(
    criterion: str,
    grid: int = 101,
    experiment: GaussianBinary | Definitive = DEFAULT_EXPERIMENT,
    rule: ScoringRule = BRIER,
) -> OptimalQuestion:
    """Exhaustive search over (majority fraction, camp beliefs) grids, plus the
    investigator's camp for the investigator-public criterion.

    Degenerate grid endpoints (certain beliefs, a vanishing minority) are
    clamped by EPSILON: the interesting optima are limits, and the community
    must remain a genuine mixture.  Ties break by lexicographic grid order
    (fraction, majority belief, minority belief, camp).

    Every criterion is evaluated through its decomposition over per-state
    expected outcome values, which is exact because the predictive
    distribution is linear in the belief that weights it.
    """
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}")
    if grid < 3:
        raise ValueError("grid must be at least 3")
    ms = np.linspace(0.5, 1.0, grid)
    ms[-1] = 1.0 - EPSILON
    qs = _clamped_belief_grid(grid)

    model = DivergenceValue(rule)
    under0, under1 = _state_values(model, experiment, qs)
    # Every criterion decomposes over these per-state expectations because the
    # predictive density is linear in the weighting belief.
    m = ms[:, None, None]
    qa = qs[None, :, None]
    qb = qs[None, None, :]
    a0 = under0[None, :, None]
    a1 = under1[None, :, None]
    b0 = under0[None, None, :]
    b1 = under1[None, None, :]

    def camp_mix(p):
        return m * (p * a1 + (1.0 - p) * a0) + (1.0 - m) * (p * b1 + (1.0 - p) * b0)

    investigator_belief: float | None = None
    if criterion == "reviewer-private":
        private = qs * under1 + (1.0 - qs) * under0
        values = m * private[None, :, None] + (1.0 - m) * private[None, None, :]
    elif criterion == "reviewer-public":
        values = camp_mix(m * qa + (1.0 - m) * qb)
    else:  # investigator-public, camp axis last: majority first, then minority
        values = np.stack([camp_mix(qa), camp_mix(qb)], axis=-1)

    flat_index = int(np.argmax(values))
    best_value = float(values.reshape(-1)[flat_index])
    if criterion == "investigator-public":
        i, j, k, camp = np.unravel_index(flat_index, values.shape)
        investigator_belief = float(qs[j] if camp == 0 else qs[k])
    else:
        i, j, k = np.unravel_index(flat_index, values.shape)
    question = Question(float(ms[i]), float(qs[j]), float(qs[k]))
    return OptimalQuestion(criterion, question, investigator_belief, best_value)


# ---------------------------------------------------------------------------
# Executable theorem and property checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeterogeneityReport:
    """Outcome of comparing split communities against their homogenized twin
    for definitive experiments: disagreement among reviewers must lower the
    value they place on their own learning and raise the value they place on
    the community's learning."""

    rule: str
    trials: int
    violations: int
    min_private_margin: float
    min_public_margin: float
    min_private_margin_separated: float
    min_public_margin_separated: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def heterogeneity_theorem_check(
    rule: ScoringRule, trials: int, rng
) -> HeterogeneityReport:
    """Random two-camp communities vs their mean-belief twin.

    Camp weights are drawn from [0.1, 0.9] and beliefs from (0, 1) so the
    communities stay comfortably non-degenerate; the separated margins are
    tracked for camps at least 0.05 apart.
    """
    exp = Definitive()
    model = DivergenceValue(rule)
    violations = 0
    min_private = math.inf
    min_public = math.inf
    min_private_sep = math.inf
    min_public_sep = math.inf
    for _ in range(trials):
        weight = 0.1 + 0.8 * rng.random()
        p_a = 0.001 + 0.998 * rng.random()
        p_b = 0.001 + 0.998 * rng.random()
        community = CommunityBeliefs.two_camps(
            weight, Belief.binary(p_a), Belief.binary(p_b)
        )
        mean_p = weight * p_a + (1.0 - weight) * p_b
        homogenized = entropy(rule, Belief.binary(mean_p))
        private = private_value_reviewers(model, exp, community)
        public = public_value_reviewers(model, exp, community)
        private_margin = homogenized - private
        public_margin = public - homogenized
        if p_a != p_b and (private_margin <= 0.0 or public_margin <= 0.0):
            violations += 1
        min_private = min(min_private, private_margin)
        min_public = min(min_public, public_margin)
        if abs(p_a - p_b) > 0.05:
            min_private_sep = min(min_private_sep, private_margin)
            min_public_sep = min(min_public_sep, public_margin)
    return HeterogeneityReport(
        rule=rule.name,
        trials=trials,
        violations=violations,
        min_private_margin=min_private,
        min_public_margin=min_public,
        min_private_margin_separated=min_private_sep,
        min_public_margin_separated=min_public_sep,
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_belief_pair(rng) -> tuple[float, float]:
    return 0.001 + 0.998 * rng.random(), 0.001 + 0.998 * rng.random()


def run_property_checks(trials: int, seed: int) -> list[CheckResult]:
    """Seeded sweep of the algebraic properties every release must keep:
    strict propriety, divergence closed forms, the entropy/scoring-function
    decomposition, concavity, the decision-theoretic inequalities, the
    announcement-grid recovery of divergences, and the heterogeneity theorem
    for both built-in rules."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xC0FFEE,)))
    results: list[CheckResult] = []

    def add(name: str, passed: bool, detail: str) -> None:
        results.append(CheckResult(name, bool(passed), detail))

    for rule in (BRIER, IGNORANCE):
        worst = math.inf
        for _ in range(trials):
            p1, p2 = _random_belief_pair(rng)
            if abs(p1 - p2) <= 1e-6:
                continue
            d = divergence(rule, Belief.binary(p2), Belief.binary(p1))
            worst = min(worst, d)
        add(
            f"strict-propriety-{rule.name}",
            worst > 0.0 or trials == 0,
            f"min divergence {worst:.3e}" if trials else "no trials",
        )

    worst = 0.0
    for _ in range(trials):
        p1, p2 = _random_belief_pair(rng)
        d = divergence(BRIER, Belief.binary(p2), Belief.binary(p1))
        worst = max(worst, abs(d - (p1 - p2) ** 2))
    add("brier-closed-form", worst < 1e-12, f"max |d - (dp)^2| = {worst:.3e}")

    worst = 0.0
    for _ in range(trials):
        p1, p2 = _random_belief_pair(rng)
        d = divergence(IGNORANCE, Belief.binary(p2), Belief.binary(p1))
        kl = p2 * math.log2(p2 / p1) + (1.0 - p2) * math.log2((1.0 - p2) / (1.0 - p1))
        worst = max(worst, abs(d - kl))
    add("ignorance-kl", worst < 1e-9, f"max |d - KL| = {worst:.3e}")

    worst = 0.0
    for rule in (BRIER, IGNORANCE):
        for _ in range(trials):
            r, p = _random_belief_pair(rng)
            issued, actual = Belief.binary(r), Belief.binary(p)
            lhs = scoring_function(rule, issued, actual)
            rhs = entropy(rule, actual) + divergence(rule, actual, issued)
            worst = max(worst, abs(lhs - rhs))
    add("score-decomposition", worst < 1e-12, f"max defect {worst:.3e}")

    worst = math.inf
    for rule in (BRIER, IGNORANCE):
        for _ in range(trials):
            p1, p2 = _random_belief_pair(rng)
            lam = rng.random()
            mixed = Belief.binary(lam * p1 + (1.0 - lam) * p2)
            gap = entropy(rule, mixed) - (
                lam * entropy(rule, Belief.binary(p1))
                + (1.0 - lam) * entropy(rule, Belief.binary(p2))
            )
            worst = min(worst, gap)
    add(
        "entropy-concavity",
        worst >= -1e-12 or trials == 0,
        f"min Jensen gap {worst:.3e}" if trials else "no trials",
    )

    problem = announcement_problem(BRIER, 101)
    worst = 0.0
    grid = np.asarray(problem.actions)
    for _ in range(trials):
        q = float(grid[rng.integers(len(grid))])
        p = float(grid[rng.integers(len(grid))])
        got = instrumental_value(problem, Belief.binary(q), Belief.binary(p))
        want = divergence(BRIER, Belief.binary(q), Belief.binary(p))
        worst = max(worst, abs(got - want))
    add("announcement-recovery-brier", worst <= 1e-3, f"max |V - d| = {worst:.3e}")

    worst = math.inf
    for _ in range(trials):
        utility = rng.uniform(-1.0, 1.0, size=(3, 2))
        dp_random = DecisionProblem(
            (0, 1, 2), tuple(tuple(float(u) for u in row) for row in utility)
        )
        q, p = _random_belief_pair(rng)
        v = instrumental_value(dp_random, Belief.binary(q), Belief.binary(p))
        worst = min(worst, v)
    add(
        "instrumental-value-nonnegative",
        worst >= -1e-12 or trials == 0,
        f"min value {worst:.3e}" if trials else "no trials",
    )

    for rule in (BRIER, IGNORANCE):
        report = heterogeneity_theorem_check(rule, trials, rng)
        add(
            f"heterogeneity-{rule.name}",
            report.passed,
            f"min margins private {report.min_private_margin:.3e}, "
            f"public {report.min_public_margin:.3e}",
        )
    return results
