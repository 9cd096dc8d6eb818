"""Seeded Monte Carlo estimation of the 1-convexity probability.

A trial draws n uniform points in the layer and asks whether the sample is
1-convex. Each trial owns a counter-based substream (Philox keyed on the
master seed and the trial index), so success counts are bit-identical no
matter how trials are scheduled across workers. Aggregation is a plain sum
of per-trial indicators; the 95% interval is Wilson's score interval, which
stays honest when the proportion sits at or near 1.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from multiprocessing import get_context

import numpy as np

from . import bounds, hull
from .geometry import LayerConfig, sample_layer_points

# two-sided 95% normal quantile (Phi^-1(0.975))
Z95 = 1.959963984540054

# default ceiling on trials * n * d; guards accidental huge submissions
DEFAULT_MAX_WORK = 10**10


@dataclass(frozen=True)
class Experiment:
    """One estimation task: layer, points per trial, trial count, seed."""

    cfg: LayerConfig
    n: int
    trials: int
    seed: int
    tol: float = 1e-9
    max_work: int = DEFAULT_MAX_WORK

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"points per trial must be an integer >= 1, got {self.n!r}")
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ValueError(f"trial count must be an integer >= 1, got {self.trials!r}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")


@dataclass(frozen=True)
class MCEstimate:
    """Aggregated estimate with a 95% Wilson interval."""

    successes: int
    trials: int
    p_hat: float
    ci_low: float
    ci_high: float
    wall_time: float

    @property
    def half_width(self) -> float:
        return 0.5 * (self.ci_high - self.ci_low)


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Chosen over the Wald interval because the estimated probabilities sit
    near 1, where Wald collapses to a zero-width interval.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes {successes} outside [0, {trials}]")
    p = successes / trials
    z2n = z * z / trials
    center = (p + z2n / 2.0) / (1.0 + z2n)
    margin = (z / (1.0 + z2n)) * math.sqrt(p * (1.0 - p) / trials + z2n / (4.0 * trials))
    return max(0.0, center - margin), min(1.0, center + margin)


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Substream for one trial: Philox keyed on (seed, trial index).

    Pure function of its arguments, so the schedule that executes the trial
    is irrelevant to the numbers it draws.
    """
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial_index,)))
    )


def _count_successes(args: tuple[int, float, int, float, int, int, int]) -> int:
    d, r, n, tol, seed, start, stop = args
    cfg = LayerConfig(d, r)
    successes = 0
    for t in range(start, stop):
        pts = sample_layer_points(cfg, n, trial_rng(seed, t))
        successes += hull.is_one_convex(pts, tol)
    return successes


def estimate_p_one_convex(exp: Experiment, jobs: int = 1) -> MCEstimate:
    """Estimate the probability that n uniform layer points are 1-convex.

    ``jobs`` > 1 farms contiguous trial ranges out to worker processes; the
    result is identical at any worker count because each trial's stream is
    derived from (seed, trial index) alone and counts add commutatively.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    work = exp.trials * exp.n * exp.cfg.d
    if work > exp.max_work:
        raise ValueError(
            f"resource cap exceeded: trials*n*d = {work} > max_work = {exp.max_work}"
        )

    started = time.perf_counter()
    base = (exp.cfg.d, exp.cfg.r, exp.n, exp.tol, exp.seed)
    if jobs == 1 or exp.trials == 1:
        successes = _count_successes(base + (0, exp.trials))
    else:
        n_chunks = min(exp.trials, jobs * 4)
        edges = np.linspace(0, exp.trials, n_chunks + 1, dtype=int)
        tasks = [base + (int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if a < b]
        # spawn (not fork): forking a process that already initialized BLAS
        # threads can deadlock, and determinism does not depend on it
        with ProcessPoolExecutor(max_workers=jobs, mp_context=get_context("spawn")) as pool:
            successes = sum(pool.map(_count_successes, tasks))

    ci_low, ci_high = wilson_interval(successes, exp.trials)
    return MCEstimate(
        successes=int(successes),
        trials=exp.trials,
        p_hat=successes / exp.trials,
        ci_low=ci_low,
        ci_high=ci_high,
        wall_time=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class TheoremCheck:
    """Empirical check of the f-bound guarantee at the largest admissible n.

    ``passed_alpha``: the Wilson interval does not contradict P > 1 - alpha
    (ci_low > 1 - alpha - half_width). ``passed_sharp``: ci_low clears the
    sharp union bound minus the half-width. ``slack`` = p_hat - sharp_bound
    is reported for inspection only; no tightness is asserted.
    """

    params: bounds.BoundParams
    f: float
    n: int
    estimate: MCEstimate
    sharp_bound: float
    simplified_bound: float
    passed_alpha: bool
    passed_sharp: bool
    slack: float


def largest_admissible_n(p: bounds.BoundParams) -> int:
    """Largest integer strictly below f; errors when f < 2 (no useful n)."""
    f = bounds.bound_f(p)
    if not f >= 2.0:
        raise ValueError(f"no admissible n: bound f = {f} < 2")
    n = math.ceil(f) - 1
    if n >= f:  # unreachable for finite floats; guards exact-integer edge
        n -= 1
    return n


def verify_theorem(
    p: bounds.BoundParams, trials: int, seed: int, tol: float = 1e-9, jobs: int = 1
) -> TheoremCheck:
    """Run the estimator at n = largest integer below f and compare against
    both the 1 - alpha guarantee and the sharp union bound."""
    n = largest_admissible_n(p)
    est = estimate_p_one_convex(
        Experiment(cfg=p.cfg, n=n, trials=trials, seed=seed, tol=tol), jobs=jobs
    )
    pb = bounds.prob_lower_bound(n, p.cfg)
    half = est.half_width
    return TheoremCheck(
        params=p,
        f=bounds.bound_f(p),
        n=n,
        estimate=est,
        sharp_bound=pb.sharp,
        simplified_bound=pb.simplified,
        passed_alpha=est.ci_low > (1.0 - p.alpha) - half,
        passed_sharp=est.ci_low > pb.sharp - half,
        slack=est.p_hat - pb.sharp,
    )


def ks_statistic(samples, cdf) -> float:
    """Two-sided Kolmogorov-Smirnov statistic sup_t |F_n(t) - cdf(t)|.

    ``cdf`` may be vectorized or scalar-valued; it is evaluated at the sorted
    sample.
    """
    xs = np.sort(np.asarray(samples, dtype=float))
    n = xs.size
    if n == 0:
        raise ValueError("KS statistic needs a nonempty sample")
    values = np.asarray(cdf(xs), dtype=float)
    if values.shape != xs.shape:
        values = np.array([float(cdf(v)) for v in xs])
    grid = np.arange(n, dtype=float)
    d_plus = np.max((grid + 1.0) / n - values)
    d_minus = np.max(values - grid / n)
    return float(max(d_plus, d_minus, 0.0))


def ks_critical_value(n_samples: int, significance: float) -> float:
    """Asymptotic two-sided KS critical value sqrt(ln(2/a)/2) / sqrt(n)."""
    if n_samples < 1:
        raise ValueError("sample size must be >= 1")
    if not 0.0 < significance < 1.0:
        raise ValueError("significance must lie in (0, 1)")
    return math.sqrt(0.5 * math.log(2.0 / significance)) / math.sqrt(n_samples)
