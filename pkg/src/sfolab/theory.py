"""Closed-form SFO-complexity math for smooth nonconvex mini-batch SGD.

Under L-smstructure and a sigma^2 gradient-noise bound, running T iterations
at constant learning rate eta and batch size b guarantees

    min_t E||grad f(theta_t)||^2  <=  C1/T + C2/b,

with the progress coefficient C1 = 2 (f(theta_0) - f*) / ((2 - L eta) eta)
and the noise coefficient C2 = L sigma^2 eta / (2 - L eta). Everything else
here follows from that inequality:

* iterations to reach accuracy eps:  T(b) = C1 b / (eps^2 b - C2),
  defined for b > C2 / eps^2;
* SFO complexity (gradient evaluations): N(b) = T(b) * b, convex in b;
* the batch size minimizing N:  b* = 2 C2 / eps^2, with N(b*) = 4 C1 C2 / eps^4.

:func:`brute_force_sfo_argmin` minimizes N by exhaustive grid search and is
the independent cross-check for the closed forms. :func:`min_grad_sq_bound`
evaluates the underlying trajectory bound for arbitrary per-iteration
learning-rate and batch-size sequences.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from sfolab.schedules import TrainPlan


class InadmissibleBatchError(ValueError):
    """Batch size outside the domain of the iteration/SFO formulas.

    Carries ``threshold`` = C2 / eps^2; only b strictly above it admit a
    finite iteration count.
    """

    def __init__(self, b, threshold: float):
        self.b = b
        self.threshold = threshold
        super().__init__(
            f"batch size {b} is inadmissible: reaching the target accuracy "
            f"requires b > noise_coeff/eps^2 = {threshold:.6g}"
        )


@dataclass(frozen=True)
class ComplexityParams:
    """Inputs to the closed-form complexity operations.

    f_gap:  objective gap f(theta_0) - f* at the start of the horizon
    L:      mean smoothness constant
    sigma2: gradient-noise variance bound (single-sample)
    eta:    constant learning rate over the horizon; must satisfy eta < 2/L
    eps:    target accuracy on the gradient norm
    """

    f_gap: float
    L: float
    sigma2: float
    eta: float
    eps: float

    def __post_init__(self):
        if self.f_gap < 0:
            raise ValueError(f"f_gap must be >= 0, got {self.f_gap}")
        if self.L <= 0:
            raise ValueError(f"L must be > 0, got {self.L}")
        if self.sigma2 < 0:
            raise ValueError(f"sigma2 must be >= 0, got {self.sigma2}")
        if self.eps <= 0:
            raise ValueError(f"eps must be > 0, got {self.eps}")
        if not 0 < self.eta < 2.0 / self.L:
            raise ValueError(
                f"eta must lie in (0, 2/L) = (0, {2.0 / self.L:.6g}), "
                f"got {self.eta}"
            )


def progress_coeff(params: ComplexityParams) -> float:
    """Coefficient of the 1/T term: 2 f_gap / ((2 - L eta) eta).

    Convex in eta with its minimum at eta = 1/L.
    """
    return 2.0 * params.f_gap / ((2.0 - params.L * params.eta) * params.eta)


def noise_coeff(params: ComplexityParams) -> float:
    """Coefficient of the 1/b term: L sigma^2 eta / (2 - L eta).

    Bounded by L sigma^2 eta whenever eta <= 1/L.
    """
    return params.L * params.sigma2 * params.eta / (2.0 - params.L * params.eta)


def _admissibility_threshold(params: ComplexityParams) -> float:
    return noise_coeff(params) / params.eps**2


def iterations_to_eps(params: ComplexityParams, b) -> float:
    """Iterations needed at batch size ``b`` to reach accuracy eps.

    Real-valued; callers wanting a step count should take the ceiling.
    Decreases monotonically in b toward the noiseless limit C1/eps^2.
    """
    threshold = _admissibility_threshold(params)
    if b <= threshold:
        raise InadmissibleBatchError(b, threshold)
    c1 = progress_coeff(params)
    return c1 * b / (params.eps**2 * b - noise_coeff(params))


def sfo_complexity(params: ComplexityParams, b) -> float:
    """Gradient evaluations N(b) = T(b) * b needed to reach accuracy eps."""
    threshold = _admissibility_threshold(params)
    if b <= threshold:
        raise InadmissibleBatchError(b, threshold)
    c1 = progress_coeff(params)
    return c1 * b * b / (params.eps**2 * b - noise_coeff(params))


def critical_batch_size(params: ComplexityParams) -> float:
    """Real-valued batch size minimizing SFO complexity: 2 C2 / eps^2.

    For a noiseless problem (sigma2 = 0) SFO complexity is increasing in b,
    so no batch size pays for itself; returns 0 with a warning.
    """
    if params.sigma2 == 0:
        warnings.warn(
            "noiseless problem: SFO complexity increases with batch size, "
            "there is no interior minimizer (returning 0)",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return 2.0 * noise_coeff(params) / params.eps**2


def min_sfo_complexity(params: ComplexityParams) -> float:
    """SFO complexity at the critical batch size: 4 C1 C2 / eps^4."""
    return 4.0 * progress_coeff(params) * noise_coeff(params) / params.eps**4


def brute_force_sfo_argmin(
    params: ComplexityParams, b_grid: Iterable[int]
) -> tuple[int, float]:
    """Exhaustive SFO minimization over an integer batch-size grid.

    Independent cross-check for :func:`critical_batch_size`: evaluates the
    SFO formula at every admissible grid point and returns the argmin. For
    the analytic minimizer to be bracketed, the grid should reach well past
    it (4x is plenty).
    """
    grid = np.asarray(list(b_grid), dtype=np.float64)
    threshold = _admissibility_threshold(params)
    admissible = grid[grid > threshold]
    if admissible.size == 0:
        raise ValueError(
            f"no admissible batch sizes in grid: all <= threshold "
            f"{threshold:.6g}"
        )
    c1 = progress_coeff(params)
    c2 = noise_coeff(params)
    sfo = c1 * admissible**2 / (params.eps**2 * admissible - c2)
    i = int(np.argmin(sfo))
    return int(admissible[i]), float(sfo[i])


def stage_critical_batch_sizes(
    plan: TrainPlan,
    L: float,
    sigma2: float,
    eps_per_stage: Sequence[float],
) -> list[float]:
    """Per-stage SFO-optimal batch sizes 2 C2(eta_m) / eps_m^2.

    Overlaying these against a plan's scheduled b_m shows whether the
    schedule tracks, overshoots, or lags the optimum as training progresses.
    """
    if L <= 0:
        raise ValueError(f"L must be > 0, got {L}")
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be >= 0, got {sigma2}")
    if len(eps_per_stage) != len(plan.stages):
        raise ValueError(
            f"eps_per_stage has {len(eps_per_stage)} entries for "
            f"{len(plan.stages)} stages"
        )
    out = []
    for stage, eps in zip(plan.stages, eps_per_stage):
        if eps <= 0:
            raise ValueError(f"stage {stage.m}: eps must be > 0, got {eps}")
        if not 0 < stage.lr < 2.0 / L:
            raise ValueError(
                f"stage {stage.m}: lr {stage.lr} outside (0, 2/L) = "
                f"(0, {2.0 / L:.6g})"
            )
        c2 = L * sigma2 * stage.lr / (2.0 - L * stage.lr)
        out.append(2.0 * c2 / eps**2)
    return out


def inverse_stage_eps_schedule(eps0: float, num_stages: int) -> list[float]:
    """Stage accuracies with eps_m^2 = eps0^2 / (m + 1).

    Matches the 1/sqrt(T) decay of the constant-learning-rate bound, with
    the calibration constant pinned at stage 0.
    """
    if eps0 <= 0:
        raise ValueError(f"eps0 must be > 0, got {eps0}")
    return [eps0 / math.sqrt(m + 1) for m in range(num_stages)]


def geometric_eps_schedule(eps0: float, num_stages: int, gamma: float) -> list[float]:
    """Stage accuracies with eps_m^2 = eps0^2 * gamma**(-m).

    Matches the geometric decay of the joint-exponential-growth bound.
    """
    if eps0 <= 0:
        raise ValueError(f"eps0 must be > 0, got {eps0}")
    if gamma < 1:
        raise ValueError(f"gamma must be >= 1, got {gamma}")
    return [eps0 * gamma ** (-m / 2.0) for m in range(num_stages)]


def min_grad_sq_bound(
    f_gap: float,
    L: float,
    sigma2: float,
    etas: Sequence[float],
    batches: Sequence[int],
) -> float:
    """Upper bound on min_t E||grad f(theta_t)||^2 over an SGD trajectory.

    For per-iteration learning rates eta_t in (0, 2/L) and batch sizes b_t:

        2 f_gap / ((2 - L eta_max) sum eta_t)
        + (L sigma2 / (2 - L eta_max)) * (sum eta_t^2 / b_t) / (sum eta_t)

    The first term is the optimization (progress) term, the second the
    gradient-noise term; with sigma2 = 0 only the first survives.
    """
    eta = np.asarray(etas, dtype=np.float64)
    b = np.asarray(batches, dtype=np.float64)
    if eta.size == 0 or eta.shape != b.shape:
        raise ValueError(
            f"etas and batches must be nonempty and equal length, got "
            f"{eta.size} and {b.size}"
        )
    if f_gap < 0:
        raise ValueError(f"f_gap must be >= 0, got {f_gap}")
    if L <= 0:
        raise ValueError(f"L must be > 0, got {L}")
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be >= 0, got {sigma2}")
    if np.any(b < 1):
        raise ValueError("all batch sizes must be >= 1")
    eta_max = float(eta.max())
    if float(eta.min()) <= 0 or eta_max >= 2.0 / L:
        raise ValueError(
            f"learning rates must lie in (0, 2/L) = (0, {2.0 / L:.6g}); "
            f"range seen [{eta.min():.6g}, {eta_max:.6g}]"
        )
    eta_sum = float(eta.sum())
    denom = 2.0 - L * eta_max
    progress = 2.0 * f_gap / (denom * eta_sum)
    noise = (L * sigma2 / denom) * float((eta**2 / b).sum()) / eta_sum
    return progress + noise


def epoch_sfo(n: int, b: int, epochs: int) -> int:
    """Exact SFO cost of running ``epochs`` epochs: E * ceil(n/b) * b.

    Always within [E*n, E*(n+b)): at a fixed epoch count the cost is nearly
    batch-size independent, which is why schedule comparisons at equal epoch
    budgets are the fair ones.
    """
    n, b, epochs = int(n), int(b), int(epochs)
    if not 1 <= b <= n:
        raise ValueError(f"need 1 <= b <= n, got b={b}, n={n}")
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    return epochs * math.ceil(n / b) * b
