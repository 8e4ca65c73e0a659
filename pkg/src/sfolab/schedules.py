"""Batch-size and learning-rate growth schedules, resolved into stage plans.

A schedule partitions training into ``M`` stages. Within stage ``m`` the
batch size ``b_m`` and learning rate ``eta_m`` are held constant, and the
stage runs for ``ceil(n / b_m) * E`` iterations (``E`` epochs over a dataset
of ``n`` samples). Supported growth families:

* constant:                 b_m = b0,                eta_m = eta0
* linear batch growth:      b_m = b0 + m * delta_b,  eta_m = eta0
* exponential batch growth: b_m = b0 * delta**m,     eta_m = eta0
* exponential batch + LR:   b_m = b0 * delta**m,     eta_m = eta0 * gamma**m
* explicit:                 (b_m, eta_m) pairs given directly

For the joint-exponential family the growth factors should satisfy
``gamma**2 <= delta``: the SFO-optimal batch size grows like ``gamma**(2m)``,
so a batch schedule growing faster than that wastes gradient evaluations
while one growing slower falls behind the optimum. :func:`validate` reports
how well a spec's factors are paired, and flags learning rates that exceed
the ``2/L`` stability limit of the underlying convergence guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence


class ScheduleKind(str, Enum):
    CONSTANT = "constant"
    LINEAR_BS = "linear_bs"
    EXP_BS = "exp_bs"
    EXP_BS_EXP_LR = "exp_bs_exp_lr"
    EXPLICIT = "explicit"


_EXP_KINDS = (ScheduleKind.EXP_BS, ScheduleKind.EXP_BS_EXP_LR)


@dataclass(frozen=True)
class ScheduleSpec:
    """Declarative description of a growth policy.

    Fields not used by ``kind`` are ignored (``delta_b`` only matters for
    linear growth, ``delta``/``gamma`` only for the exponential kinds,
    ``explicit_stages`` only for the explicit kind).
    """

    kind: ScheduleKind
    b0: int = 1
    eta0: float = 0.1
    delta_b: int = 0
    delta: Optional[float] = None
    gamma: Optional[float] = None
    num_stages: int = 1
    epochs_per_stage: int = 1
    explicit_stages: Optional[tuple[tuple[int, float], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ScheduleKind(self.kind))
        if self.kind is not ScheduleKind.EXPLICIT:
            if self.b0 < 1:
                raise ValueError(f"b0 must be >= 1, got {self.b0}")
            if self.eta0 <= 0:
                raise ValueError(f"eta0 must be > 0, got {self.eta0}")
        if self.num_stages < 1:
            raise ValueError(f"num_stages must be >= 1, got {self.num_stages}")
        if self.epochs_per_stage < 1:
            raise ValueError(
                f"epochs_per_stage must be >= 1, got {self.epochs_per_stage}"
            )
        if self.kind is ScheduleKind.LINEAR_BS and self.delta_b < 0:
            raise ValueError(f"delta_b must be >= 0, got {self.delta_b}")
        if self.kind in _EXP_KINDS:
            if self.delta is None or self.delta <= 1.0:
                raise ValueError(
                    f"exponential batch growth requires delta > 1, got {self.delta}"
                )
        if self.kind is ScheduleKind.EXP_BS_EXP_LR:
            if self.gamma is None or self.gamma <= 1.0:
                raise ValueError(
                    f"joint exponential growth requires gamma > 1, got {self.gamma}"
                )
        if self.kind is ScheduleKind.EXPLICIT:
            stages = self.explicit_stages
            if not stages:
                raise ValueError("explicit schedule requires explicit_stages")
            stages = tuple((int(b), float(eta)) for b, eta in stages)
            object.__setattr__(self, "explicit_stages", stages)
            if len(stages) != self.num_stages:
                raise ValueError(
                    f"num_stages={self.num_stages} does not match "
                    f"{len(stages)} explicit stages"
                )
            for m, (b, eta) in enumerate(stages):
                if b < 1:
                    raise ValueError(f"explicit stage {m}: batch size {b} < 1")
                if eta <= 0:
                    raise ValueError(f"explicit stage {m}: learning rate {eta} <= 0")


@dataclass(frozen=True)
class StagePlan:
    """One resolved stage: constants plus its iteration span."""

    m: int
    batch_size: int
    lr: float
    num_iterations: int
    cumulative_iterations: int  # end-exclusive count through this stage


@dataclass(frozen=True)
class TrainPlan:
    """Fully resolved stage list, ready for execution.

    ``dataset_size`` is None for noise-injected (infinite-sample) problems,
    where batch sizes are not clamped and stage lengths are set directly.
    """

    stages: tuple[StagePlan, ...]
    dataset_size: Optional[int]
    spec: Optional[ScheduleSpec]

    @property
    def total_iterations(self) -> int:
        return self.stages[-1].cumulative_iterations if self.stages else 0

    @property
    def total_sfo(self) -> int:
        """Samples consumed by executing the whole plan."""
        return sum(s.batch_size * s.num_iterations for s in self.stages)


@dataclass(frozen=True)
class Diagnostic:
    """Structured finding from :func:`validate`.

    severity: "info" | "warning" | "error". ``stage`` and ``value`` are set
    when the finding is tied to a particular stage or carries a number.
    """

    severity: str
    code: str
    message: str
    stage: Optional[int] = None
    value: Optional[float] = None


def _check_stage_index(spec: ScheduleSpec, m: int) -> None:
    if not 0 <= m < spec.num_stages:
        raise IndexError(
            f"stage index {m} out of range for {spec.num_stages} stages"
        )


def batch_at_stage(spec: ScheduleSpec, m: int) -> int:
    """Raw scheduled batch size at stage ``m``, before dataset clamping.

    Exponential values are rounded half-up to the nearest integer with a
    floor of 1, keeping the discretized schedule as close as possible to the
    growth curve b0 * delta**m.
    """
    _check_stage_index(spec, m)
    if spec.kind is ScheduleKind.EXPLICIT:
        return spec.explicit_stages[m][0]
    if spec.kind is ScheduleKind.LINEAR_BS:
        return spec.b0 + m * spec.delta_b
    if spec.kind in _EXP_KINDS:
        return max(1, int(math.floor(spec.b0 * spec.delta**m + 0.5)))
    return spec.b0


def lr_at_stage(spec: ScheduleSpec, m: int) -> float:
    """Scheduled learning rate at stage ``m`` (exact, no rounding)."""
    _check_stage_index(spec, m)
    if spec.kind is ScheduleKind.EXPLICIT:
        return spec.explicit_stages[m][1]
    if spec.kind is ScheduleKind.EXP_BS_EXP_LR:
        return spec.eta0 * spec.gamma**m
    return spec.eta0


def build_plan(
    spec: ScheduleSpec,
    dataset_size: int,
    stage_epochs: Optional[Sequence[int]] = None,
) -> TrainPlan:
    """Resolve a spec against a dataset of ``dataset_size`` samples.

    Each stage's batch size is clamped to the dataset size, and its length
    is ``ceil(n / b_m) * E`` iterations. ``stage_epochs`` overrides the
    spec's per-stage epoch count with a per-stage list (as produced by
    :func:`split_epoch_budget`); lengths must match ``num_stages``.

    Pure function: identical inputs give identical plans.
    """
    n = int(dataset_size)
    if n < 1:
        raise ValueError(f"dataset_size must be >= 1, got {dataset_size}")
    if stage_epochs is None:
        epochs = [spec.epochs_per_stage] * spec.num_stages
    else:
        epochs = [int(e) for e in stage_epochs]
        if len(epochs) != spec.num_stages:
            raise ValueError(
                f"stage_epochs has {len(epochs)} entries for "
                f"{spec.num_stages} stages"
            )
        if any(e < 1 for e in epochs):
            raise ValueError("every stage needs at least one epoch")

    stages = []
    cumulative = 0
    for m in range(spec.num_stages):
        b = min(batch_at_stage(spec, m), n)
        delta_t = math.ceil(n / b) * epochs[m]
        cumulative += delta_t
        stages.append(
            StagePlan(
                m=m,
                batch_size=b,
                lr=lr_at_stage(spec, m),
                num_iterations=delta_t,
                cumulative_iterations=cumulative,
            )
        )
    return TrainPlan(stages=tuple(stages), dataset_size=n, spec=spec)


def plan_from_stage_table(
    stage_table: Sequence[tuple[int, float, int]],
    dataset_size: Optional[int] = None,
    spec: Optional[ScheduleSpec] = None,
) -> TrainPlan:
    """Build a plan directly from (batch_size, lr, num_iterations) rows.

    Intended for noise-injected problems where stage lengths are chosen in
    iterations rather than epochs (epoch-based stage lengths shrink as the
    batch grows, which caps the total iteration count a growth schedule can
    reach). No dataset clamping is applied.
    """
    if not stage_table:
        raise ValueError("stage_table must be nonempty")
    stages = []
    cumulative = 0
    for m, (b, eta, delta_t) in enumerate(stage_table):
        b, delta_t = int(b), int(delta_t)
        if b < 1 or delta_t < 1 or eta <= 0:
            raise ValueError(f"invalid stage row {m}: ({b}, {eta}, {delta_t})")
        cumulative += delta_t
        stages.append(
            StagePlan(
                m=m,
                batch_size=b,
                lr=float(eta),
                num_iterations=delta_t,
                cumulative_iterations=cumulative,
            )
        )
    return TrainPlan(stages=tuple(stages), dataset_size=dataset_size, spec=spec)


def split_epoch_budget(total_epochs: int, num_stages: int) -> list[int]:
    """Divide a total epoch budget evenly across stages, remainder to the last."""
    total, m = int(total_epochs), int(num_stages)
    if m < 1:
        raise ValueError(f"num_stages must be >= 1, got {num_stages}")
    if total < m:
        raise ValueError(
            f"epoch budget {total} cannot give each of {m} stages an epoch"
        )
    per = [total // m] * m
    per[-1] += total % m
    return per


# gamma**2 / delta bands: batch growth matched to the optimal-batch growth rate.
_ALIGNED_LO = 0.8


def validate(
    spec: ScheduleSpec, problem_L: Optional[float] = None
) -> list[Diagnostic]:
    """Check a spec against the pairing and stability conditions.

    For joint exponential growth, reports the ratio ``gamma**2 / delta``:
    within [0.8, 1.0] the batch and optimal-batch growth rates are aligned;
    below, the batch grows faster than useful; above 1.0 the required
    ``gamma**2 < delta`` ordering is violated. Both are warnings only.

    With a smoothness constant ``problem_L``, also reports the first stage
    whose learning rate exceeds ``1/L`` (efficiency warning) and the first
    at or above ``2/L`` (hard error: the convergence guarantee is void).
    """
    out: list[Diagnostic] = []

    if spec.kind is ScheduleKind.EXP_BS_EXP_LR:
        ratio = spec.gamma**2 / spec.delta
        if ratio > 1.0:
            out.append(
                Diagnostic(
                    "warning",
                    "gamma-sq-exceeds-delta",
                    f"gamma^2/delta = {ratio:.4g} > 1: learning-rate growth "
                    f"outpaces batch growth (requires gamma^2 < delta)",
                    value=ratio,
                )
            )
        elif ratio < _ALIGNED_LO:
            out.append(
                Diagnostic(
                    "warning",
                    "batch-grows-too-fast",
                    f"gamma^2/delta = {ratio:.4g} < {_ALIGNED_LO}: batch size "
                    f"grows faster than the optimal batch size, wasting "
                    f"gradient evaluations",
                    value=ratio,
                )
            )
        else:
            out.append(
                Diagnostic(
                    "info",
                    "growth-aligned",
                    f"gamma^2/delta = {ratio:.4g}: batch and learning-rate "
                    f"growth are aligned",
                    value=ratio,
                )
            )

    if problem_L is not None:
        if problem_L <= 0:
            raise ValueError(f"problem_L must be > 0, got {problem_L}")
        lrs = [lr_at_stage(spec, m) for m in range(spec.num_stages)]
        first_soft = next((m for m, lr in enumerate(lrs) if lr > 1.0 / problem_L), None)
        first_hard = next((m for m, lr in enumerate(lrs) if lr >= 2.0 / problem_L), None)
        if first_hard is not None:
            out.append(
                Diagnostic(
                    "error",
                    "lr-above-stability-limit",
                    f"stage {first_hard}: lr {lrs[first_hard]:.4g} >= 2/L = "
                    f"{2.0 / problem_L:.4g}; convergence guarantee void",
                    stage=first_hard,
                    value=lrs[first_hard],
                )
            )
        if first_soft is not None:
            out.append(
                Diagnostic(
                    "warning",
                    "lr-above-inverse-smoothness",
                    f"stage {first_soft}: lr {lrs[first_soft]:.4g} > 1/L = "
                    f"{1.0 / problem_L:.4g}; SFO efficiency degrades beyond 1/L",
                    stage=first_soft,
                    value=lrs[first_soft],
                )
            )
    return out
