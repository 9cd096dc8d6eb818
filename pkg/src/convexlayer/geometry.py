"""Uniform sampling in the spherical layer between radii r and 1, plus ball volumes.

Points are plain 1-D float arrays; point sets are ``(n, d)`` float arrays.
All sampling is driven by an explicit ``numpy.random.Generator`` so callers own
the stream; the module keeps no state and is safe to use from many threads as
long as each thread owns its generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Dimensions above this make per-point cost unreasonable; reject early.
MAX_DIMENSION = 10**6

# A direction vector drawn below this norm is considered degenerate and is
# redrawn (probability is effectively zero for any d >= 1).
_DEGENERATE_NORM = 1e-300


@dataclass(frozen=True)
class LayerConfig:
    """Problem instance: the layer between the balls of radius ``r`` and 1.

    Requires ``d >= 1`` and ``0 <= r < 1``, so the layer always has positive
    volume.
    """

    d: int
    r: float

    def __post_init__(self) -> None:
        if not isinstance(self.d, (int, np.integer)) or isinstance(self.d, bool):
            raise ValueError(f"dimension must be an integer, got {self.d!r}")
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if self.d > MAX_DIMENSION:
            raise ValueError(f"dimension {self.d} exceeds cap {MAX_DIMENSION}")
        if not math.isfinite(self.r) or not 0.0 <= self.r < 1.0:
            raise ValueError(f"inner radius must satisfy 0 <= r < 1, got {self.r}")

    @property
    def shell_fraction(self) -> float:
        """1 - r^d: the layer's share of the unit-ball volume.

        Uses expm1 so the value stays accurate when r^d underflows or is
        close to 1; exact 1.0 for r = 0.
        """
        if self.r == 0.0:
            return 1.0
        return -math.expm1(self.d * math.log(self.r))


def ball_volume(d: int) -> float:
    """Volume of the unit d-ball: pi^(d/2) / Gamma(d/2 + 1)."""
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {d!r}")
    return math.exp(log_ball_volume(d))


def log_ball_volume(d: int) -> float:
    """Natural log of the unit d-ball volume (usable far past float underflow)."""
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {d!r}")
    return 0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1.0)


def layer_volume(cfg: LayerConfig) -> float:
    """Volume of the layer: ball_volume(d) * (1 - r^d). Strictly positive."""
    return ball_volume(cfg.d) * cfg.shell_fraction


def radial_cdf(t, cfg: LayerConfig):
    """Radial law of a uniform layer point: P(|X| <= t) = (t^d - r^d) / (1 - r^d).

    Accepts a scalar or array ``t`` with ``r <= t <= 1`` (up to 1e-12 slack for
    round-off on sampled norms; values inside the slack are clamped).
    Evaluated as t^d * (1 - (r/t)^d) / (1 - r^d) via expm1/log1p, which is
    stable even when r^d underflows.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < cfg.r - 1e-12) or np.any(t_arr > 1.0 + 1e-12):
        raise ValueError(f"radial argument outside [{cfg.r}, 1]")
    t_arr = np.clip(t_arr, cfg.r, 1.0)

    d, r = cfg.d, cfg.r
    if r == 0.0:
        out = t_arr**d
    else:
        # t >= r > 0 here; t == r contributes expm1(0) = 0 exactly
        numerator = np.exp(d * np.log(t_arr)) * -np.expm1(d * np.log(r / t_arr))
        out = numerator / cfg.shell_fraction
    out = np.clip(out, 0.0, 1.0)
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out)
    return out


def sample_layer_points(cfg: LayerConfig, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` independent uniform points in the layer; returns shape (n, d).

    Direction: normalized d-vector of standard normals. Radius: inverse CDF,
    rho = (r^d + u (1 - r^d))^(1/d) with u uniform on [0, 1), computed as
    exp(log1p(-(1-u)(1-r^d)) / d) so it survives r^d underflow at large d.
    """
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    d = cfg.d
    vecs = rng.standard_normal((n, d))
    norms = np.linalg.norm(vecs, axis=1)
    while np.any(bad := norms < _DEGENERATE_NORM):
        vecs[bad] = rng.standard_normal((int(bad.sum()), d))
        norms[bad] = np.linalg.norm(vecs[bad], axis=1)

    u = rng.random(n)
    if cfg.r == 0.0:
        radii = u ** (1.0 / d)
    else:
        radii = np.exp(np.log1p(-(1.0 - u) * cfg.shell_fraction) / d)
    # round-off guard: keep radii inside [r, 1] exactly
    radii = np.clip(radii, cfg.r, 1.0)
    return vecs * (radii / norms)[:, np.newaxis]


def sample_layer_point(cfg: LayerConfig, rng: np.random.Generator) -> np.ndarray:
    """Draw one uniform point in the layer; returns shape (d,)."""
    return sample_layer_points(cfg, 1, rng)[0]
