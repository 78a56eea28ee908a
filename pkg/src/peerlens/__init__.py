"""Decision-theoretic valuation of experiments under proposal and outcome review."""

from .beliefs import (
    BINARY,
    Belief,
    CommunityBeliefs,
    StateSpace,
    belief_stats,
    mean_belief,
)
from .decision_theory import (
    DecisionProblem,
    announcement_problem,
    generalized_scoring,
    instrumental_value,
    optimal_action,
    uncertainty,
)
from .experiments import (
    Definitive,
    FiniteOutcome,
    GaussianBinary,
    ImpossibleEvidenceError,
    community_predictive,
    likelihood,
    posterior,
    predictive,
)
from .scoring import (
    BRIER,
    IGNORANCE,
    BrierScore,
    IgnoranceScore,
    InfiniteSurpriseError,
    ScoringRule,
    divergence,
    entropy,
    rule_by_name,
    score,
    scoring_function,
)
from .scenarios import (
    CRITERIA,
    ChoiceRecord,
    OptimalQuestion,
    Question,
    SimulationConfig,
    assign_investigator_belief,
    heterogeneity_theorem_check,
    lone_wolf_private_landscape,
    lone_wolf_public_landscape,
    mars_scenario,
    optimize_question,
    question_value,
    run_simulation,
    sample_question,
)
from .valuation import (
    DivergenceValue,
    SurpriseIndicator,
    community_outcome_value,
    outcome_value,
    private_value_investigator,
    private_value_reviewers,
    public_value_investigator,
    public_value_reviewers,
)

__version__ = "0.1.0"

__all__ = [
    "BINARY",
    "BRIER",
    "CRITERIA",
    "IGNORANCE",
    "Belief",
    "BrierScore",
    "ChoiceRecord",
    "CommunityBeliefs",
    "DecisionProblem",
    "Definitive",
    "DivergenceValue",
    "FiniteOutcome",
    "GaussianBinary",
    "IgnoranceScore",
    "ImpossibleEvidenceError",
    "InfiniteSurpriseError",
    "OptimalQuestion",
    "Question",
    "ScoringRule",
    "SimulationConfig",
    "StateSpace",
    "SurpriseIndicator",
    "announcement_problem",
    "assign_investigator_belief",
    "belief_stats",
    "community_outcome_value",
    "community_predictive",
    "divergence",
    "entropy",
    "generalized_scoring",
    "heterogeneity_theorem_check",
    "instrumental_value",
    "likelihood",
    "lone_wolf_private_landscape",
    "lone_wolf_public_landscape",
    "mars_scenario",
    "mean_belief",
    "optimal_action",
    "optimize_question",
    "outcome_value",
    "posterior",
    "predictive",
    "private_value_investigator",
    "private_value_reviewers",
    "public_value_investigator",
    "public_value_reviewers",
    "question_value",
    "rule_by_name",
    "run_simulation",
    "sample_question",
    "score",
    "scoring_function",
    "uncertainty",
]
