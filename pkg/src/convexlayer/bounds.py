"""Closed-form admissible-count bounds, regime classification, and asymptotics.

Two thresholds on the number n of uniform layer points that keeps the sample
1-convex with probability above 1 - alpha:

    f = sqrt(alpha * 2^d * (1 - r^d))
    g = (r / sqrt(1-r^2))^d * (sqrt(1 + 2 alpha (1-r^2)^(d/2) / r^(2d)) - 1)

together with the n(n-1) / n^2 union-bound probability guarantees and the
large-d behaviour of g and of the quotient f/g. Everything whose exponent
grows with d is evaluated in log space first and only exponentiated on
demand: the inner term of g overflows 64-bit floats near d ~ 600 for r = 0.5.

The asymptotic regime switches at the critical radius r* with
r*^4 + r*^2 - 1 = 0, i.e. r* = sqrt((sqrt(5) - 1) / 2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .geometry import LayerConfig

LN2 = math.log(2.0)

# unique root of r^4 + r^2 - 1 in (0, 1)
R_STAR = math.sqrt((math.sqrt(5.0) - 1.0) / 2.0)

# exact equality with r* is unrepresentable; classification is banded
REGIME_TOL = 1e-12

# past this, exp(ln_T) overflows and sqrt(1+T)+1 switches to its tail expansion
_LN_HUGE = 700.0


class Regime(enum.Enum):
    """Asymptotic case of g (and of f/g) by inner radius."""

    SUPERCRITICAL = "SUPERCRITICAL"  # r* < r < 1
    CRITICAL = "CRITICAL"            # r = r* (within REGIME_TOL)
    SUBCRITICAL = "SUBCRITICAL"      # 0 < r < r*


@dataclass(frozen=True)
class BoundParams:
    """(d, r, alpha) triple feeding every bound formula.

    f accepts 0 <= r < 1; g additionally needs r > 0.
    """

    d: int
    r: float
    alpha: float

    def __post_init__(self) -> None:
        # reuse the layer validation for d and r
        LayerConfig(self.d, self.r)
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must satisfy 0 < alpha < 1, got {self.alpha}")

    @property
    def cfg(self) -> LayerConfig:
        return LayerConfig(self.d, self.r)


def _require_positive_r(p: BoundParams, what: str) -> None:
    if p.r == 0.0:
        raise ValueError(f"{what} is undefined for r = 0 (requires 0 < r < 1)")


def log2_bound_f(p: BoundParams) -> float:
    """log2 of f = sqrt(alpha * 2^d * (1 - r^d))."""
    q = p.cfg.shell_fraction
    return 0.5 * (math.log2(p.alpha) + p.d + math.log2(q))


def bound_f(p: BoundParams) -> float:
    """f = sqrt(alpha * 2^d * (1 - r^d)); inf when past float range."""
    return 2.0 ** log2_bound_f(p)


def _ln_inner_term(p: BoundParams) -> float:
    """ln of T = 2 alpha (sqrt(1-r^2)/r^2)^d, the discriminant excess in g."""
    return math.log(2.0 * p.alpha) + p.d * (0.5 * math.log1p(-p.r * p.r) - 2.0 * math.log(p.r))


def log2_bound_g(p: BoundParams) -> float:
    """log2 of g, from the rationalized form g = 2 alpha / (r^d (sqrt(1+T) + 1)).

    T = 2 alpha (sqrt(1-r^2)/r^2)^d. For ln T beyond float range the
    denominator tail sqrt(1+T) + 1 = sqrt(T) (1 + 1/sqrt(T) + O(1/T)) is used,
    keeping the value exact to round-off at any d.
    """
    _require_positive_r(p, "bound g")
    ln_t = _ln_inner_term(p)
    if ln_t <= _LN_HUGE:
        ln_denom = math.log(math.sqrt(1.0 + math.exp(ln_t)) + 1.0)
    else:
        ln_denom = 0.5 * ln_t + math.log1p(math.exp(-0.5 * ln_t))
    ln_g = math.log(2.0 * p.alpha) - p.d * math.log(p.r) - ln_denom
    return ln_g / LN2


def bound_g(p: BoundParams) -> float:
    """g in the rationalized form (log-space intermediates)."""
    return 2.0 ** log2_bound_g(p)


def bound_g_raw(p: BoundParams) -> float:
    """g evaluated in its direct product shape
    (r/sqrt(1-r^2))^d * (sqrt(1 + T) - 1).

    Independent route from bound_g for cross-checking; requires T and the
    result to be representable in 64-bit floats. sqrt(1+T) - 1 is formed as
    expm1(log1p(T)/2) so small T does not cancel.
    """
    _require_positive_r(p, "bound g")
    ln_t = _ln_inner_term(p)
    if ln_t > _LN_HUGE:
        raise OverflowError("inner term of the direct form exceeds float range")
    t = math.exp(ln_t)
    prefactor_ln = p.d * (math.log(p.r) - 0.5 * math.log1p(-p.r * p.r))
    return math.exp(prefactor_ln) * math.expm1(0.5 * math.log1p(t))


@dataclass(frozen=True)
class ProbBound:
    """Union-bound guarantee on the 1-convexity probability for n points.

    ``sharp`` is 1 - n(n-1)/(2^d (1-r^d)); ``simplified`` replaces n(n-1)
    by n^2. Both are reported unclamped; a negative or zero value carries no
    information (vacuous).
    """

    sharp: float
    simplified: float

    @property
    def sharp_vacuous(self) -> bool:
        return self.sharp <= 0.0

    @property
    def simplified_vacuous(self) -> bool:
        return self.simplified <= 0.0


def prob_lower_bound(n: int, cfg: LayerConfig) -> ProbBound:
    """Both union-bound forms for an n-point sample in the layer ``cfg``."""
    if not isinstance(n, (int,)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    ln_scale = cfg.d * LN2 + math.log(cfg.shell_fraction)
    sharp_ratio = 0.0 if n == 1 else math.exp(math.log(n) + math.log(n - 1.0) - ln_scale)
    simplified_ratio = math.exp(2.0 * math.log(n) - ln_scale)
    return ProbBound(sharp=1.0 - sharp_ratio, simplified=1.0 - simplified_ratio)


def classify_regime(r: float) -> Regime:
    """Regime of the inner radius relative to r*; |r - r*| <= 1e-12 is CRITICAL."""
    if not (math.isfinite(r) and 0.0 < r < 1.0):
        raise ValueError(f"regime classification needs 0 < r < 1, got {r}")
    if abs(r - R_STAR) <= REGIME_TOL:
        return Regime.CRITICAL
    return Regime.SUPERCRITICAL if r > R_STAR else Regime.SUBCRITICAL


def log2_asymptotic_g(p: BoundParams) -> float:
    """log2 of the large-d closed form of g for the regime of r.

    SUPERCRITICAL: alpha / r^d
    CRITICAL:      (sqrt(1 + 2 alpha) - 1) / r^d
    SUBCRITICAL:   sqrt(2 alpha) / (1 - r^2)^(d/4)
    """
    _require_positive_r(p, "asymptotic g")
    regime = classify_regime(p.r)
    if regime is Regime.SUPERCRITICAL:
        ln = math.log(p.alpha) - p.d * math.log(p.r)
    elif regime is Regime.CRITICAL:
        ln = math.log(math.expm1(0.5 * math.log1p(2.0 * p.alpha))) - p.d * math.log(p.r)
    else:
        ln = 0.5 * math.log(2.0 * p.alpha) - 0.25 * p.d * math.log1p(-p.r * p.r)
    return ln / LN2


def asymptotic_g(p: BoundParams) -> float:
    return 2.0 ** log2_asymptotic_g(p)


def log2_asymptotic_ratio_f_over_g(p: BoundParams) -> float:
    """log2 of the large-d closed form of f/g for the regime of r.

    SUPERCRITICAL: (1/sqrt(alpha)) (r sqrt(2))^d
    CRITICAL:      ((sqrt(1+2 alpha)+1) / (2 sqrt(alpha))) (sqrt(5)-1)^(d/2)
    SUBCRITICAL:   (1/sqrt(2)) (2 sqrt(1-r^2))^(d/2)

    All three diverge as d grows.
    """
    _require_positive_r(p, "asymptotic f/g")
    regime = classify_regime(p.r)
    if regime is Regime.SUPERCRITICAL:
        ln = -0.5 * math.log(p.alpha) + p.d * (math.log(p.r) + 0.5 * LN2)
    elif regime is Regime.CRITICAL:
        coeff = (math.sqrt(1.0 + 2.0 * p.alpha) + 1.0) / (2.0 * math.sqrt(p.alpha))
        ln = math.log(coeff) + 0.5 * p.d * math.log(math.sqrt(5.0) - 1.0)
    else:
        ln = -0.5 * LN2 + 0.5 * p.d * (LN2 + 0.5 * math.log1p(-p.r * p.r))
    return ln / LN2


def asymptotic_ratio_f_over_g(p: BoundParams) -> float:
    return 2.0 ** log2_asymptotic_ratio_f_over_g(p)


def log2_ratio_f_over_g(p: BoundParams) -> float:
    """log2 of the exact quotient f/g (both factors in log space)."""
    return log2_bound_f(p) - log2_bound_g(p)


def ratio_f_over_g(p: BoundParams) -> float:
    return 2.0 ** log2_ratio_f_over_g(p)
