"""Desk-scale laboratory for batch-size / learning-rate growth schedules in mini-batch SGD.

The pieces fit together like this:

* :mod:`sfolab.schedules` turns a declarative growth policy into a resolved
  stage plan (batch sizes, learning rates, stage lengths).
* :mod:`sfolab.theory` holds the closed-form complexity math: stationarity
  bounds, iteration counts, SFO complexity, critical batch sizes, and a
  brute-force oracle for cross-checking the analytic minima.
* :mod:`sfolab.problems` provides synthetic objectives whose smoothness and
  gradient-noise constants are known exactly, so theory-vs-practice
  comparisons need no estimation slack.
* :mod:`sfolab.engine` executes seeded SGD runs over a plan with exact SFO
  accounting.
* :mod:`sfolab.config` / :mod:`sfolab.harness` / :mod:`sfolab.cli` wrap the
  above in a config-driven experiment runner that emits CSV.
"""

from sfolab.schedules import (
    Diagnostic,
    ScheduleKind,
    ScheduleSpec,
    StagePlan,
    TrainPlan,
    batch_at_stage,
    build_plan,
    lr_at_stage,
    plan_from_stage_table,
    split_epoch_budget,
    validate,
)
from sfolab.theory import (
    ComplexityParams,
    InadmissibleBatchError,
    brute_force_sfo_argmin,
    critical_batch_size,
    epoch_sfo,
    geometric_eps_schedule,
    inverse_stage_eps_schedule,
    iterations_to_eps,
    min_grad_sq_bound,
    min_sfo_complexity,
    noise_coeff,
    progress_coeff,
    sfo_complexity,
    stage_critical_batch_sizes,
)
from sfolab.problems import (
    Problem,
    estimate_sigma2,
    finite_sum_least_squares,
    finite_sum_logistic,
    noisy_quadratic,
)
from sfolab.engine import ReplicatedRecord, RunRecord, run_replicated, run_sgd

__version__ = "0.1.0"

__all__ = [
    "ComplexityParams",
    "Diagnostic",
    "InadmissibleBatchError",
    "Problem",
    "ReplicatedRecord",
    "RunRecord",
    "ScheduleKind",
    "ScheduleSpec",
    "StagePlan",
    "TrainPlan",
    "batch_at_stage",
    "brute_force_sfo_argmin",
    "build_plan",
    "critical_batch_size",
    "epoch_sfo",
    "estimate_sigma2",
    "finite_sum_least_squares",
    "finite_sum_logistic",
    "geometric_eps_schedule",
    "inverse_stage_eps_schedule",
    "iterations_to_eps",
    "lr_at_stage",
    "min_grad_sq_bound",
    "min_sfo_complexity",
    "noise_coeff",
    "noisy_quadratic",
    "plan_from_stage_table",
    "progress_coeff",
    "run_replicated",
    "run_sgd",
    "sfo_complexity",
    "split_epoch_budget",
    "stage_critical_batch_sizes",
    "validate",
]
