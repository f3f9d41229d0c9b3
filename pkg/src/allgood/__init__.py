"""Identification of all epsilon-good arms in Gaussian multi-armed bandits:
characteristic-time solver, Track-and-Stop agent, lower-bound diagnostics
and a reproducible Monte Carlo harness.
"""

from .bounds import (
    arm_count_lower_bound,
    kl_bernoulli,
    margin_diagnostic,
    sample_complexity_lower_bound,
)
from .harness import BudgetRun, Campaign, budget_run, f1_score, mc_campaign, trial_seed
from .model import (
    ADDITIVE,
    MULTIPLICATIVE,
    ArmOrder,
    BanditInstance,
    exploration_rate,
    good_set,
    load_instance,
    margins,
    project_floor,
    sample_reward,
)
from .oracle import BAD_MADE_GOOD, GOOD_MADE_BAD, BestResponse, best_response, game_value, supergradient
from .solver import (
    DegenerateInstanceError,
    SolveConfig,
    SolveResult,
    characteristic_time,
    lipschitz_constant,
    mirror_ascent,
)
from .tracker import TrackerState, TrialRecord, next_arm, run, stopping_threshold, z_statistic

__all__ = [
    "ADDITIVE",
    "MULTIPLICATIVE",
    "ArmOrder",
    "BAD_MADE_GOOD",
    "BanditInstance",
    "BestResponse",
    "BudgetRun",
    "Campaign",
    "DegenerateInstanceError",
    "GOOD_MADE_BAD",
    "SolveConfig",
    "SolveResult",
    "TrackerState",
    "TrialRecord",
    "arm_count_lower_bound",
    "best_response",
    "budget_run",
    "characteristic_time",
    "exploration_rate",
    "f1_score",
    "game_value",
    "good_set",
    "kl_bernoulli",
    "lipschitz_constant",
    "load_instance",
    "margin_diagnostic",
    "margins",
    "mc_campaign",
    "mirror_ascent",
    "next_arm",
    "project_floor",
    "run",
    "sample_complexity_lower_bound",
    "sample_reward",
    "stopping_threshold",
    "supergradient",
    "trial_seed",
    "z_statistic",
]

__version__ = "0.1.0"
